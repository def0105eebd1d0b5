#pragma once

#include <random>
#include <string>
#include <vector>

#include "quillen/homology/chain.hpp"
#include "quillen/homology/shuffle.hpp"
#include "quillen/reduction/report.hpp"

namespace quillen {

namespace detail {

inline ReductionReport new_report(const GroupPoset& X) {
  ReductionReport r;
  r.group = X.group().name();
  r.prime = X.prime();
  return r;
}

inline void close_report(ReductionReport& r) { r.verdict = r.all_ok() ? Verdict::Verified : Verdict::Inconclusive; }

inline std::vector<IntChain> homology_cycles(const Poset& P, const Limits& lim) {
  ChainComplex C = chain_complex(P, Ring::Z, lim.simplex_cap);
  std::vector<IntChain> out;
  for (int d = 0; d <= C.top_degree(); ++d) {
    BoundarySolver<BigInt> below(C, d - 1), above(C, d);
    for (auto& z : below.cycle_basis())
      if (!above.solve(z)) out.push_back(std::move(z));
  }
  return out;
}

}  // namespace detail

/// N(H) and A_p(H): the retraction identities and equal homology.
inline ReductionReport inflation_report(const GroupPoset& X, const Subgroup& H, const Limits& lim = {}) {
  ReductionReport r = detail::new_report(X);
  auto m = inflation_maps(X, H);  // throws if r i != id or i r is not below id
  r.add("inflation-maps", "pointwise-order", true,
        std::to_string(m.sub.size()) + " nodes in A_p(H), " + std::to_string(m.nbhd.size()) + " in N(H)");
  auto& s = r.add("homology-equality", "exact-homology", true);
  s.before = homology(m.nbhd.poset(), Ring::Z, lim.simplex_cap);
  s.after = homology(m.sub.poset(), Ring::Z, lim.simplex_cap);
  s.ok = same_homology(*s.before, *s.after);
  detail::close_report(r);
  return r;
}

/// N(H)_{>E} and A_p(C_H(E)) for E with E cap H = 1.
inline ReductionReport link_report(const GroupPoset& X, const Subgroup& H, const Subgroup& E, const Limits& lim = {}) {
  ReductionReport r = detail::new_report(X);
  auto m = link_maps(X, H, E);
  r.add("link-maps", "pointwise-order", true,
        std::to_string(m.upper.size()) + " nodes above E, " + std::to_string(m.centralizer_poset.size()) +
            " in A_p(C_H(E))");
  auto& s = r.add("homology-equality", "exact-homology", true);
  s.before = homology(m.upper.poset(), Ring::Z, lim.simplex_cap);
  s.after = homology(m.centralizer_poset.poset(), Ring::Z, lim.simplex_cap);
  s.ok = same_homology(*s.before, *s.after);
  detail::close_report(r);
  return r;
}

/// Brown's poset of all nontrivial p-subgroups against A_p(G).
inline ReductionReport brown_quillen_report(const Group& G, std::uint32_t p, const Limits& lim = {}) {
  GroupPoset X = quillen_poset(G, p, lim.poset_cap);
  GroupPoset S = brown_poset(G, p, lim.poset_cap);
  ReductionReport r = detail::new_report(X);
  auto& s = r.add("homology-equality", "exact-homology", true,
                  std::to_string(S.size()) + " p-subgroups, " + std::to_string(X.size()) + " elementary abelian");
  s.before = homology(S.poset(), Ring::Z, lim.simplex_cap);
  s.after = homology(X.poset(), Ring::Z, lim.simplex_cap);
  s.ok = same_homology(*s.before, *s.after);
  detail::close_report(r);
  return r;
}

/// G = H x C_G(H): reduced Betti numbers of A_p(G) over Q against those of
/// the join A_p(H) * A_p(C_G(H)).
inline ReductionReport join_report(const Group& G, std::uint32_t p, const Subgroup& H, const Limits& lim = {}) {
  const Subgroup K = centralizer(G, H);
  if (!intersection(H, K).is_trivial() || H.order() * K.order() != G.order())
    throw PreconditionViolated("G is not H x C_G(H)");
  GroupPoset X = quillen_poset(G, p, lim.poset_cap);
  ReductionReport r = detail::new_report(X);
  auto hh = homology(restrict_to(X, H).poset(), Ring::Q, lim.simplex_cap);
  auto hk = homology(restrict_to(X, K).poset(), Ring::Q, lim.simplex_cap);
  auto hg = homology(X.poset(), Ring::Q, lim.simplex_cap);
  bool ok = true;
  std::string why;
  const int top = int(hh.degrees.size() + hk.degrees.size());
  for (int n = -1; n <= top; ++n) {
    std::uint64_t expect = 0;
    for (int i = -1; i <= n; ++i) expect += hh.betti(i) * hk.betti(n - 1 - i);
    if (hg.betti(n) != expect) {
      ok = false;
      why = "degree " + std::to_string(n) + ": " + std::to_string(hg.betti(n)) + " vs " + std::to_string(expect);
      break;
    }
  }
  auto& s = r.add("kunneth-betti", "exact-homology", ok, why);
  s.before = hg;
  detail::close_report(r);
  return r;
}

/// Products of homology cycles of A_p(H) and A_p(K) are cycles of A_p(G),
/// and on random simplices the a-initial part of a x b is a * b.
inline ReductionReport shuffle_report(const GroupPoset& X, const Subgroup& H, const Subgroup& K, int samples = 20,
                                      std::uint64_t seed = 1, const Limits& lim = {}) {
  ReductionReport r = detail::new_report(X);
  ShuffleContext ctx(X, H, K);
  r.add("hypothesis-CP", "centralizer-check", true);
  const GroupPoset XH = restrict_to(X, H), XK = restrict_to(X, K);
  auto as = detail::homology_cycles(XH.poset(), lim);
  auto bs = detail::homology_cycles(XK.poset(), lim);
  std::size_t pairs = 0;
  bool cyc = true;
  for (std::size_t i = 0; i < std::min<std::size_t>(as.size(), 3); ++i)
    for (std::size_t j = 0; j < std::min<std::size_t>(bs.size(), 3); ++j) {
      IntChain c = ctx.product(as[i], bs[j]);
      cyc = cyc && is_cycle(c) && supported_on(X.poset(), c);
      ++pairs;
    }
  r.add("product-of-cycles", "boundary-zero", cyc, std::to_string(pairs) + " pairs");

  std::mt19937_64 rng(seed);
  ChainComplex CH = chain_complex(XH.poset(), Ring::Z, lim.simplex_cap);
  ChainComplex CK = chain_complex(XK.poset(), Ring::Z, lim.simplex_cap);
  bool star_ok = true;
  int tried = 0;
  for (int t = 0; t < samples && CH.top_degree() >= 0 && CK.top_degree() >= 0; ++t) {
    const int m = int(rng() % std::uint64_t(CH.top_degree() + 1));
    const int n = int(rng() % std::uint64_t(CK.top_degree() + 1));
    const Simplex a = CH.simplex(m, rng() % CH.count(m));
    const Simplex b = CK.simplex(n, rng() % CK.count(n));
    const IntChain prod = ctx.product(a, b);
    const Simplex s = ctx.star(a, b);
    star_ok = star_ok && a_initial_split(prod, a).first == IntChain::basis(s) && prod.coefficient(s) == 1;
    ++tried;
  }
  r.add("initial-part", "chain-identity", star_ok, std::to_string(tried) + " samples");
  detail::close_report(r);
  return r;
}

/// d d = 0 on random chains in every degree.
inline ReductionReport boundary_squared_report(const GroupPoset& X, int samples = 500, std::uint64_t seed = 1,
                                               const Limits& lim = {}) {
  ReductionReport r = detail::new_report(X);
  ChainComplex C = chain_complex(X.poset(), Ring::Z, lim.simplex_cap);
  std::mt19937_64 rng(seed);
  bool ok = true;
  int tried = 0;
  for (int t = 0; t < samples && C.top_degree() >= 0; ++t) {
    const int d = int(rng() % std::uint64_t(C.top_degree() + 1));
    const IntChain c = random_chain<BigInt>(C, d, rng);
    ok = ok && boundary(boundary(c)).is_zero() && supported_on(X.poset(), boundary(c));
    ++tried;
  }
  r.add("boundary-squared", "chain-identity", ok, std::to_string(tried) + " random chains");
  detail::close_report(r);
  return r;
}

}  // namespace quillen
