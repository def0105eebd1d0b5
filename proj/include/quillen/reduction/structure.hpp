#pragma once

#include <optional>
#include <string>
#include <vector>

#include <nlohmann/json.hpp>

#include "quillen/local/local.hpp"
#include "quillen/poset/group_poset.hpp"

namespace quillen {

struct StronglyEmbeddedReport {
  std::string group;
  std::uint32_t prime = 0;
  std::size_t components = 0;
  bool disconnected = false;
  std::optional<Subgroup> subgroup;  // M, only when disconnected
  bool verified = false;             // M satisfies the definition
  std::string detail;
};

/// M proper, containing a Sylow p-subgroup S, with M cap M^g a p'-group for
/// every g outside M.
inline bool is_strongly_p_embedded(const Subgroup& M, const Subgroup& S, std::uint32_t p, std::string* why = nullptr) {
  const Group& G = M.parent();
  auto fail = [&](const char* w) {
    if (why) *why = w;
    return false;
  };
  if (M.order() == G.order()) return fail("M = G");
  if (!is_subgroup_of(S, M)) return fail("M does not contain the Sylow subgroup");
  // M cap M^g depends only on the right coset Mg
  std::vector<char> seen(G.order(), 0);
  for (Elem m : M.elements()) seen[m] = 1;
  for (Elem g = 0; g < G.order(); ++g) {
    if (seen[g]) continue;
    for (Elem m : M.elements()) seen[G.mul(m, g)] = 1;
    if (intersection(M, conjugate(M, g)).order() % p == 0) return fail("M cap M^g has order divisible by p");
  }
  return true;
}

/// Components of A_p(G); when there are several, M is the stabilizer of the
/// component holding the subgroups of a Sylow p-subgroup.
inline StronglyEmbeddedReport strongly_p_embedded(const GroupPoset& X) {
  const Group& G = X.group();
  const std::uint32_t p = X.prime();
  if (G.order() % p != 0) throw PreconditionViolated("p does not divide |G|");
  StronglyEmbeddedReport r;
  r.group = G.name();
  r.prime = p;
  auto comps = connected_components(X.poset());
  r.components = comps.size();
  r.disconnected = comps.size() > 1;
  if (!r.disconnected) {
    r.detail = "connected";
    return r;
  }
  Subgroup S = sylow(G, p);
  std::vector<int> comp_of(X.size(), -1);
  for (std::size_t c = 0; c < comps.size(); ++c)
    for (auto i : comps[c]) comp_of[i] = int(c);
  std::optional<std::size_t> base;
  for (std::size_t i = 0; i < X.size() && !base; ++i)
    if (is_subgroup_of(X.node(i), S)) base = i;
  if (!base) throw InternalError("Sylow subgroup contains no node of A_p(G)");
  const int c0 = comp_of[*base];
  // g permutes components, so it fixes c0 exactly when it keeps the base node in c0
  std::vector<Elem> stab;
  for (Elem g = 0; g < G.order(); ++g)
    if (comp_of[X.require_index(conjugate(X.node(*base), g))] == c0) stab.push_back(g);
  Subgroup M = subgroup_generated(G, stab);
  if (M.order() != stab.size()) throw InternalError("component stabilizer is not a subgroup");
  r.subgroup = M;
  r.verified = is_strongly_p_embedded(M, S, p, &r.detail);
  if (r.verified) r.detail = "|M| = " + std::to_string(M.order());
  return r;
}

inline StronglyEmbeddedReport strongly_p_embedded(const Group& G, std::uint32_t p, const Limits& lim = {}) {
  return strongly_p_embedded(quillen_poset(G, p, lim.poset_cap));
}

inline nlohmann::ordered_json embedded_to_json(const StronglyEmbeddedReport& r) {
  nlohmann::ordered_json j{{"group", r.group},
                           {"prime", r.prime},
                           {"components", r.components},
                           {"disconnected", r.disconnected},
                           {"verified", r.verified}};
  if (r.subgroup) j["m_order"] = r.subgroup->order();
  if (!r.detail.empty()) j["detail"] = r.detail;
  return j;
}

// ---------------------------------------------------------------------------

/// Entry predicates of the reductions, as tags:
///   center-nontrivial, omega1-proper, O_p'-nontrivial,
///   component-present(p-rank r) for each p-rank r of a component,
///   normal-component-inner when some normal component L with Z(L) a
///   p'-group has Omega_1(G) <= L C_G(L).
inline std::vector<std::string> h2_dispatch(const Group& G, std::uint32_t p, const Limits& lim = {}) {
  std::vector<std::string> tags;
  if (!center(G).is_trivial()) tags.push_back("center-nontrivial");
  const Subgroup W = omega1(G, p);
  if (W.order() != G.order()) tags.push_back("omega1-proper");
  if (!o_p_prime(G, p).is_trivial()) tags.push_back("O_p'-nontrivial");
  auto comps = components(G).components;
  std::vector<std::uint32_t> ranks;
  bool inner = false;
  for (const auto& L : comps) {
    ranks.push_back(p_rank(L, p, lim.poset_cap));
    if (!is_normal_in(L, whole(G)) || center(L).order() % p == 0) continue;
    if (is_subgroup_of(W, join(L, centralizer(G, L)))) inner = true;
  }
  std::sort(ranks.begin(), ranks.end());
  ranks.erase(std::unique(ranks.begin(), ranks.end()), ranks.end());
  for (auto rk : ranks) tags.push_back("component-present(p-rank " + std::to_string(rk) + ")");
  if (inner) tags.push_back("normal-component-inner");
  return tags;
}

}  // namespace quillen
