#pragma once

#include <fstream>
#include <string>
#include <vector>

#include <nlohmann/json.hpp>

#include "quillen/perm/group.hpp"

namespace quillen {

/// {"name": str, "degree": n, "generators": [[1-based images], ...]}
inline nlohmann::ordered_json group_to_json(const Group& G) {
  nlohmann::ordered_json j;
  j["name"] = G.name();
  j["degree"] = G.degree();
  auto gens = nlohmann::ordered_json::array();
  for (const auto& g : G.generators()) {
    std::vector<Point> img;
    for (Point x : g.images()) img.push_back(x + 1);
    gens.push_back(img);
  }
  j["generators"] = gens;
  return j;
}

inline Group group_from_json(const nlohmann::json& j, std::size_t cap = Limits{}.element_cap) {
  try {
    const std::size_t degree = j.at("degree").get<std::size_t>();
    std::vector<Permutation> gens;
    for (const auto& row : j.at("generators")) {
      std::vector<Point> img;
      for (const auto& v : row) {
        auto x = v.get<long long>();
        if (x < 1 || std::size_t(x) > degree) throw ParseError("image out of range 1.." + std::to_string(degree));
        img.push_back(Point(x - 1));
      }
      if (img.size() != degree) throw ParseError("generator length differs from degree");
      try {
        gens.emplace_back(std::move(img));
      } catch (const Error& e) {
        throw ParseError(e.what());
      }
    }
    return generate(degree, std::move(gens), cap, j.value("name", std::string{}));
  } catch (const nlohmann::json::exception& e) {
    throw ParseError(e.what());
  }
}

inline Group load_group(const std::string& path, std::size_t cap = Limits{}.element_cap) {
  std::ifstream in(path);
  if (!in) throw ParseError("cannot open " + path);
  nlohmann::json j;
  try {
    in >> j;
  } catch (const nlohmann::json::exception& e) {
    throw ParseError(e.what());
  }
  return group_from_json(j, cap);
}

}  // namespace quillen
