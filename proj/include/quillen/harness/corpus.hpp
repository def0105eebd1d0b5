#pragma once

#include <cstdint>
#include <functional>
#include <optional>
#include <regex>
#include <string>
#include <vector>

#include "quillen/config.hpp"
#include "quillen/error.hpp"
#include "quillen/perm/builtin.hpp"
#include "quillen/perm/io.hpp"

namespace quillen {

/// A known value for one prime, compared against the computed one and never
/// used as input.
struct Fact {
  std::uint32_t prime = 0;
  std::string key;  // "p_rank", "disconnected" or "strongly_embedded"
  std::int64_t value = 0;
  std::string citation;
};

struct CorpusEntry {
  Group group;
  std::string name;
  std::string provenance;
  std::vector<Fact> metadata;
};

namespace detail {

struct Built {
  Group group;
  std::string call;
};

inline std::uint32_t to_u32(const std::string& s) {
  if (s.size() > 6) throw ParseError("parameter " + s + " too large");
  return std::uint32_t(std::stoul(s));
}

/// One factor: symN, altN, cycN, dihN (order N), klein4, elabP_K, psl2_Q,
/// pgaml2_Q, frobQ_R, sl2_Q, m11, c3c3v4, eqsignN_M, trivial, each with an
/// optional wrK suffix for the wreath product with C_K.
inline Built build_factor(const std::string& tok, std::size_t cap) {
  static const std::regex wr(R"((.+)wr(\d+))");
  std::smatch m;
  if (std::regex_match(tok, m, wr)) {
    Built b = build_factor(m[1], cap);
    const auto k = to_u32(m[2]);
    return {wreath_cyclic(b.group, k, cap, b.group.name() + "wrC" + std::to_string(k)),
            "wreath_cyclic(" + b.call + ", " + std::to_string(k) + ")"};
  }
  static const std::regex one(R"((sym|alt|cyc|dih)(\d+))"), two(R"((elab|frob|eqsign)(\d+)_(\d+))"),
      field(R"((psl2|pgaml2|sl2)_(\d+))");
  if (std::regex_match(tok, m, one)) {
    const std::string f = m[1];
    const auto n = to_u32(m[2]);
    if (f == "sym") return {symmetric(n, cap), "symmetric(" + std::to_string(n) + ")"};
    if (f == "alt") return {alternating(n, cap), "alternating(" + std::to_string(n) + ")"};
    if (f == "cyc") {
      if (n == 0) throw ParseError("cyc0");
      return {cyclic(n), "cyclic(" + std::to_string(n) + ")"};
    }
    if (n % 2 || n < 6) throw ParseError("dihN needs an even order N >= 6");
    return {dihedral(n / 2), "dihedral(" + std::to_string(n / 2) + ")"};
  }
  if (std::regex_match(tok, m, two)) {
    const std::string f = m[1];
    const auto a = to_u32(m[2]), b = to_u32(m[3]);
    const std::string args = std::to_string(a) + ", " + std::to_string(b);
    if (f == "elab") return {elementary_abelian_group(a, b), "elementary_abelian_group(" + args + ")"};
    if (f == "frob") return {frobenius(a, b), "frobenius(" + args + ")"};
    return {equal_sign_product(a, b, cap), "equal_sign_product(" + args + ")"};
  }
  if (std::regex_match(tok, m, field)) {
    const std::string f = m[1];
    const auto q = to_u32(m[2]);
    if (f == "psl2") return {psl2(q, cap), "psl2(" + std::to_string(q) + ")"};
    if (f == "pgaml2") return {pgammal2(q, cap), "pgammal2(" + std::to_string(q) + ")"};
    return {sl2(q, cap), "sl2(" + std::to_string(q) + ")"};
  }
  if (tok == "klein4") return {klein_four(), "klein_four()"};
  if (tok == "m11") return {mathieu11(cap), "mathieu11()"};
  if (tok == "c3c3v4") return {c3c3_by_klein(), "c3c3_by_klein()"};
  if (tok == "trivial") return {trivial_group(), "trivial_group()"};
  throw ParseError("unknown builtin group '" + tok + "'");
}

inline Built build_named(const std::string& name, std::size_t cap) {
  if (name.empty()) throw ParseError("empty builtin name");
  std::vector<std::string> toks;
  std::size_t start = 0;
  for (std::size_t i = 0; i <= name.size(); ++i)
    if (i == name.size() || name[i] == 'x') {
      toks.push_back(name.substr(start, i - start));
      start = i + 1;
    }
  Built acc = build_factor(toks.front(), cap);
  for (std::size_t i = 1; i < toks.size(); ++i) {
    Built b = build_factor(toks[i], cap);
    acc = {direct_product(acc.group, b.group, cap), "direct_product(" + acc.call + ", " + b.call + ")"};
  }
  return acc;
}

}  // namespace detail

/// Builtin by name, e.g. "sym4", "sym3xsym3", "sym3wr2", "psl2_7".
inline Group builtin_group(const std::string& name, std::size_t cap = Limits{}.element_cap) {
  try {
    return detail::build_named(name, cap).group;
  } catch (const std::invalid_argument&) {
    throw ParseError("bad number in builtin name '" + name + "'");
  } catch (const std::out_of_range&) {
    throw ParseError("number out of range in builtin name '" + name + "'");
  }
}

/// "builtin:<name>" or a path to a group JSON file.
inline CorpusEntry load_entry(const std::string& spec, std::size_t cap = Limits{}.element_cap) {
  static const std::string prefix = "builtin:";
  if (spec.rfind(prefix, 0) == 0) {
    const std::string name = spec.substr(prefix.size());
    try {
      auto b = detail::build_named(name, cap);
      return {b.group, name, b.call, {}};
    } catch (const std::logic_error&) {
      throw ParseError("bad builtin name '" + name + "'");
    }
  }
  Group G = load_group(spec, cap);
  return {G, G.name().empty() ? spec : G.name(), spec, {}};
}

struct CorpusNotice {
  std::string name;
  std::string message;
};

namespace detail {

inline std::vector<std::pair<std::string, std::vector<Fact>>> default_names() {
  std::vector<std::pair<std::string, std::vector<Fact>>> out;
  auto add = [&](std::string n, std::vector<Fact> f = {}) { out.emplace_back(std::move(n), std::move(f)); };
  const std::string strongly = "almost simple groups with a strongly p-embedded subgroup (Gorenstein-Lyons 1983, Part I)";
  for (int n = 3; n <= 8; ++n) add("sym" + std::to_string(n));
  add("alt4");
  add("alt5", {{2, "p_rank", 2, strongly + ": L_2(4), a = 2"},
               {2, "disconnected", 1, strongly + ": L_2(4)"},
               {2, "strongly_embedded", 1, strongly + ": L_2(4)"}});
  for (int n = 6; n <= 8; ++n) add("alt" + std::to_string(n));
  for (int n = 3; n <= 50; ++n) add("dih" + std::to_string(2 * n));
  for (int q : {4, 5, 7, 8, 9, 11, 13}) {
    std::vector<Fact> f;
    // Lie rank 1 in defining characteristic: m_p = a and A_p disconnected
    const std::uint32_t p = q == 4 || q == 8 ? 2 : q == 9 ? 3 : std::uint32_t(q);
    const std::int64_t a = q == 4 ? 2 : q == 8 ? 3 : q == 9 ? 2 : 1;
    const std::string row = strongly + ": L_2(" + std::to_string(q) + ")";
    f.push_back({p, "p_rank", a, row});
    f.push_back({p, "disconnected", 1, row});
    add("psl2_" + std::to_string(q), std::move(f));
  }
  add("pgaml2_8", {{3, "p_rank", 2, strongly + ": Aut(L_2(2^3)), p = 3"},
                   {3, "disconnected", 1, strongly + ": Aut(L_2(2^3)), p = 3"},
                   {3, "strongly_embedded", 1, strongly + ": Aut(L_2(2^3)), p = 3"}});
  for (auto [q, r] : std::vector<std::pair<int, int>>{
           {5, 4}, {7, 3}, {7, 6}, {11, 5}, {11, 10}, {13, 3}, {13, 4}, {13, 6}, {13, 12}})
    add("frob" + std::to_string(q) + "_" + std::to_string(r));
  add("m11", {{3, "p_rank", 2, strongly + ": M_11, p = 3"},
              {3, "disconnected", 1, strongly + ": M_11, p = 3"},
              {3, "strongly_embedded", 1, strongly + ": M_11, p = 3"}});
  for (const char* n : {"klein4", "cyc6", "elab2_3", "elab3_2", "sl2_3", "sl2_5", "c3c3v4"}) add(n);
  for (const char* n : {"sym3xsym3", "sym3xcyc3", "sym3xdih10", "alt4xsym3", "alt4xalt4", "sym4xsym3", "sym4xsym4",
                        "dih10xdih10", "frob7_3xcyc3", "sl2_3xcyc2", "alt5xsym3", "alt5xcyc3", "alt5xdih10",
                        "psl2_7xsym3", "sym3xsym3xsym3", "alt5xalt5", "sym8xsym3"})
    add(n);
  for (const char* n : {"cyc3wr2", "sym3wr2", "alt4wr2", "dih10wr2", "sym4wr2", "sym3wr3", "alt5wr2"}) add(n);
  return out;
}

}  // namespace detail

/// The built-in corpus in a fixed order. Entries over the element cap are
/// skipped and reported through notices.
inline std::vector<CorpusEntry> corpus_default(const Limits& lim = {}, std::vector<CorpusNotice>* notices = nullptr) {
  std::vector<CorpusEntry> out;
  for (auto& [name, facts] : detail::default_names()) {
    try {
      auto b = detail::build_named(name, lim.element_cap);
      out.push_back({b.group, name, b.call, std::move(facts)});
    } catch (const CapExceeded& e) {
      if (notices) notices->push_back({name, e.what()});
    }
  }
  return out;
}

}  // namespace quillen
