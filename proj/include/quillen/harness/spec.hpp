#pragma once

#include <cctype>
#include <fstream>
#include <string>
#include <vector>

#include <nlohmann/json.hpp>

#include "quillen/config.hpp"
#include "quillen/error.hpp"
#include "quillen/local/local.hpp"

namespace quillen {

/// Cycle notation with 1-based points, "(1 2 3)(4 5)" or "(1,2,3)(4,5)";
/// "()" is the identity.
inline Permutation parse_cycles(const std::string& text, std::size_t degree) {
  std::vector<std::vector<Point>> cycles;
  std::vector<char> used(degree, 0);
  std::size_t i = 0;
  auto skip = [&] {
    while (i < text.size() && (text[i] == ' ' || text[i] == ',')) ++i;
  };
  skip();
  while (i < text.size()) {
    if (text[i] != '(') throw ParseError("expected '(' in '" + text + "'");
    ++i;
    std::vector<Point> cyc;
    for (;;) {
      skip();
      if (i >= text.size()) throw ParseError("unclosed cycle in '" + text + "'");
      if (text[i] == ')') {
        ++i;
        break;
      }
      std::size_t j = i;
      while (j < text.size() && std::isdigit(static_cast<unsigned char>(text[j]))) ++j;
      if (j == i) throw ParseError("expected a point in '" + text + "'");
      const unsigned long v = std::stoul(text.substr(i, j - i));
      if (v < 1 || v > degree) throw ParseError("point " + std::to_string(v) + " outside 1.." + std::to_string(degree));
      if (used[v - 1]++) throw ParseError("point " + std::to_string(v) + " repeated in '" + text + "'");
      cyc.push_back(Point(v - 1));
      i = j;
    }
    if (cyc.size() > 1) cycles.push_back(std::move(cyc));
    skip();
  }
  try {
    return Permutation::from_cycles(degree, cycles);
  } catch (const Error& e) {
    throw ParseError(e.what());
  }
}

/// Subgroup from a spec: sylow, o_p, o_p_prime, center, derived,
/// c_o_p_prime (C_G(O_p'(G))), support:1,2,3 (pointwise stabilizer of the
/// other points), or generators in cycle notation separated by ';'.
inline Subgroup parse_subgroup(const Group& G, std::uint32_t p, const std::string& spec) {
  if (spec == "sylow") return sylow(G, p);
  if (spec == "o_p") return o_p(G, p);
  if (spec == "o_p_prime") return o_p_prime(G, p);
  if (spec == "center") return center(G);
  if (spec == "derived") return commutator_subgroup(G);
  if (spec == "c_o_p_prime") return centralizer(G, o_p_prime(G, p));
  static const std::string support = "support:";
  if (spec.rfind(support, 0) == 0) {
    std::vector<Point> pts;
    std::string rest = spec.substr(support.size());
    std::size_t i = 0;
    while (i < rest.size()) {
      std::size_t j = rest.find(',', i);
      if (j == std::string::npos) j = rest.size();
      unsigned long v = 0;
      try {
        v = std::stoul(rest.substr(i, j - i));
      } catch (const std::logic_error&) {
        throw ParseError("bad point list '" + rest + "'");
      }
      if (v < 1 || v > G.degree()) throw ParseError("point " + std::to_string(v) + " out of range");
      pts.push_back(Point(v - 1));
      i = j + 1;
    }
    return support_subgroup(G, pts);
  }
  std::vector<Permutation> gens;
  std::size_t i = 0;
  while (i <= spec.size()) {
    std::size_t j = spec.find(';', i);
    if (j == std::string::npos) j = spec.size();
    gens.push_back(parse_cycles(spec.substr(i, j - i), G.degree()));
    i = j + 1;
  }
  for (const auto& g : gens)
    if (!G.find(g)) throw ParseError("generator " + g.to_cycle_string() + " is not in the group");
  return subgroup_from_permutations(G, gens);
}

/// {"element_cap", "poset_cap", "simplex_cap", "coeff_box"}; missing keys keep
/// their defaults, unknown keys are rejected.
inline Limits limits_from_json(const nlohmann::json& j) {
  Limits lim;
  if (!j.is_object()) throw ParseError("config must be a JSON object");
  for (const auto& [k, v] : j.items()) {
    try {
      if (k == "element_cap") lim.element_cap = v.get<std::size_t>();
      else if (k == "poset_cap") lim.poset_cap = v.get<std::size_t>();
      else if (k == "simplex_cap") lim.simplex_cap = v.get<std::size_t>();
      else if (k == "coeff_box") lim.coeff_box = v.get<int>();
      else throw ParseError("unknown config key '" + k + "'");
    } catch (const nlohmann::json::exception& e) {
      throw ParseError("config key '" + k + "': " + e.what());
    }
  }
  if (lim.element_cap == 0 || lim.poset_cap == 0 || lim.simplex_cap == 0 || lim.coeff_box < 0)
    throw ParseError("caps must be positive");
  return lim;
}

inline Limits load_limits(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw ParseError("cannot open " + path);
  try {
    return limits_from_json(nlohmann::json::parse(in));
  } catch (const nlohmann::json::exception& e) {
    throw ParseError(e.what());
  }
}

}  // namespace quillen
