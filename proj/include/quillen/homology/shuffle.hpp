#pragma once

#include <map>
#include <utility>
#include <vector>

#include "quillen/homology/chain.hpp"
#include "quillen/local/local.hpp"
#include "quillen/poset/group_poset.hpp"

namespace quillen {

/// H <= G and K <= C_G(H) with H cap K a p'-group.
inline void require_hypothesis_cp(const Subgroup& H, const Subgroup& K, std::uint32_t p) {
  require_same_parent(H, K);
  if (!is_subgroup_of(K, centralizer(H.parent(), H))) throw HypothesisCPViolated("K does not centralize H");
  if (intersection(H, K).order() % p == 0) throw HypothesisCPViolated("H cap K is not a p'-group");
}

/// Shuffle products of chains of A_p(H) and A_p(K) inside the ambient of X,
/// which must contain every product AB (it does when X comes from A_p(G)).
class ShuffleContext {
public:
  ShuffleContext(const GroupPoset& X, Subgroup H, Subgroup K) : X_(X), H_(std::move(H)), K_(std::move(K)) {
    require_hypothesis_cp(H_, K_, X_.prime());
  }

  const Subgroup& H() const { return H_; }
  const Subgroup& K() const { return K_; }

  /// Ambient key of AB for ambient keys of A <= H and B <= K.
  std::uint32_t product_key(std::uint32_t a, std::uint32_t b) {
    auto it = cache_.find({a, b});
    if (it != cache_.end()) return it->second;
    Subgroup AB = join(X_.subgroup_of_key(a), X_.subgroup_of_key(b));
    auto k = X_.ambient_key(AB);
    if (!k) throw PreconditionViolated("product AB is not a node of the ambient poset");
    cache_.emplace(std::pair{a, b}, *k);
    return *k;
  }

  /// a * b = (A_0 < ... < A_m < B_0 A_m < ... < B_n A_m).
  Simplex star(const Simplex& a, const Simplex& b) {
    Simplex out(a);
    for (auto k : b) out.push_back(a.empty() ? k : product_key(a.back(), k));
    return out;
  }

  /// Sum over shuffles of signed chains whose i-th element is the product of
  /// the first i+1 items; the sign counts b-items placed before a-items.
  IntChain product(const Simplex& a, const Simplex& b) {
    check(a, H_, "first factor");
    check(b, K_, "second factor");
    const std::size_t m1 = a.size(), n1 = b.size();
    IntChain out(int(m1 + n1) - 1);
    std::vector<char> pick_a(m1 + n1, 0);
    std::fill(pick_a.begin(), pick_a.begin() + long(m1), 1);
    // iterate over position sets for a-items in lexicographic order via prev_permutation
    do {
      Simplex c;
      c.reserve(m1 + n1);
      std::size_t ia = 0, ib = 0, inversions = 0;
      for (std::size_t pos = 0; pos < m1 + n1; ++pos) {
        if (pick_a[pos]) {
          inversions += ib;
          ++ia;
        } else {
          ++ib;
        }
        if (ib == 0) c.push_back(a[ia - 1]);
        else if (ia == 0) c.push_back(b[ib - 1]);
        else c.push_back(product_key(a[ia - 1], b[ib - 1]));
      }
      out.add(c, inversions % 2 ? BigInt(-1) : BigInt(1));
    } while (std::prev_permutation(pick_a.begin(), pick_a.end()));
    return out;
  }

  IntChain product(const IntChain& alpha, const IntChain& beta) {
    IntChain out(alpha.degree() + beta.degree() + 1);
    for (const auto& [a, x] : alpha.terms())
      for (const auto& [b, y] : beta.terms()) out += product(a, b).scaled(x * y);
    return out;
  }

  /// Bilinear extension of a * b.
  IntChain star(const Simplex& a, const IntChain& beta) {
    IntChain out(int(a.size()) + beta.degree());
    for (const auto& [b, y] : beta.terms()) out.add(star(a, b), y);
    return out;
  }

private:
  void check(const Simplex& s, const Subgroup& S, const char* what) const {
    for (auto k : s)
      if (!is_subgroup_of(X_.subgroup_of_key(k), S))
        throw PreconditionViolated(std::string(what) + " is not a chain of subgroups of its factor");
  }

  GroupPoset X_;
  Subgroup H_, K_;
  std::map<std::pair<std::uint32_t, std::uint32_t>, std::uint32_t> cache_;
};

inline IntChain shuffle_product(const GroupPoset& X, const Subgroup& H, const Subgroup& K, const IntChain& alpha,
                                const IntChain& beta) {
  ShuffleContext ctx(X, H, K);
  return ctx.product(alpha, beta);
}

/// Image of a chain under conjugation by g (an automorphism of A_p(G)).
inline IntChain conjugate_chain(const GroupPoset& X, const IntChain& c, Elem g) {
  IntChain out(c.degree());
  for (const auto& [s, v] : c.terms()) {
    Simplex t;
    for (auto k : s) {
      auto j = X.ambient_key(conjugate(X.subgroup_of_key(k), g));
      if (!j) throw InternalError("conjugate of a node is not a node");
      t.push_back(*j);
    }
    // conjugation preserves order, but keys need not stay increasing
    std::sort(t.begin(), t.end());
    out.add(t, v);
  }
  return out;
}

}  // namespace quillen
