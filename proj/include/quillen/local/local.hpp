#pragma once

#include <algorithm>
#include <cstdint>
#include <map>
#include <set>
#include <unordered_set>
#include <vector>

#include "quillen/config.hpp"
#include "quillen/error.hpp"
#include "quillen/perm/group.hpp"

namespace quillen {

inline std::vector<std::uint32_t> prime_divisors(std::uint64_t n) {
  std::vector<std::uint32_t> out;
  for (std::uint64_t d = 2; d * d <= n; ++d)
    if (n % d == 0) {
      out.push_back(std::uint32_t(d));
      while (n % d == 0) n /= d;
    }
  if (n > 1) out.push_back(std::uint32_t(n));
  return out;
}

inline std::uint64_t p_part(std::uint64_t n, std::uint32_t p) {
  std::uint64_t r = 1;
  while (n % p == 0) {
    n /= p;
    r *= p;
  }
  return r;
}

inline bool is_power_of(std::uint64_t n, std::uint32_t p) { return p_part(n, p) == n; }

inline bool is_p_element(const Group& G, Elem x, std::uint32_t p) { return is_power_of(G.elem_order(x), p); }
inline bool is_p_group(const Subgroup& H, std::uint32_t p) { return is_power_of(H.order(), p); }
inline bool is_p_prime_group(const Subgroup& H, std::uint32_t p) { return H.order() % p != 0; }

/// A Sylow p-subgroup of H, grown one factor p at a time inside normalizers.
inline Subgroup sylow(const Subgroup& H, std::uint32_t p) {
  const Group& G = H.parent();
  const std::uint64_t target = p_part(H.order(), p);
  Subgroup P = trivial_subgroup(G);
  while (P.order() < target) {
    Subgroup N = normalizer(H, P);
    bool grown = false;
    for (Elem x : N.elements()) {
      if (P.contains(x) || !is_p_element(G, x, p)) continue;
      if (!P.contains(G.pow(x, p))) continue;
      std::vector<Elem> seed(P.generators().begin(), P.generators().end());
      seed.push_back(x);
      P = subgroup_generated(G, seed);
      grown = true;
      break;
    }
    if (!grown) throw InternalError("Sylow extension stalled");
  }
  return P;
}

inline Subgroup sylow(const Group& G, std::uint32_t p) { return sylow(whole(G), p); }

/// O_p(H): intersection of the H-conjugates of a Sylow p-subgroup.
inline Subgroup o_p(const Subgroup& H, std::uint32_t p) {
  const Group& G = H.parent();
  Subgroup P = sylow(H, p);
  std::vector<Elem> cur(P.elements().begin(), P.elements().end());
  for (Elem g : H.elements()) {
    if (cur.size() == 1) break;
    Elem gi = G.inv(g);
    std::vector<Elem> next;
    // x in P^g iff g x g^-1 in P
    for (Elem x : cur)
      if (P.contains(G.conj(x, gi))) next.push_back(x);
    cur = std::move(next);
  }
  return subgroup_generated(G, cur);
}

inline Subgroup o_p(const Group& G, std::uint32_t p) { return o_p(whole(G), p); }

/// O_p'(H): join of the normal closures of p'-elements that are p'-groups.
inline Subgroup o_p_prime(const Subgroup& H, std::uint32_t p) {
  const Group& G = H.parent();
  Subgroup acc = trivial_subgroup(G);
  for (const auto& cls : conjugacy_classes(H)) {
    Elem x = cls.front();
    if (G.elem_order(x) % p == 0 || acc.contains(x)) continue;
    Subgroup N = normal_closure(H, std::vector<Elem>{x});
    if (is_p_prime_group(N, p)) acc = join(acc, N);
  }
  if (!is_p_prime_group(acc, p)) throw InternalError("O_p' is not a p'-group");
  return acc;
}

inline Subgroup o_p_prime(const Group& G, std::uint32_t p) { return o_p_prime(whole(G), p); }

/// Omega_1(H) = <x in H : x^p = 1>.
inline Subgroup omega1(const Subgroup& H, std::uint32_t p) {
  const Group& G = H.parent();
  std::vector<Elem> seed;
  for (Elem x : H.elements())
    if (G.elem_order(x) == p) seed.push_back(x);
  return subgroup_generated(G, seed);
}

inline Subgroup omega1(const Group& G, std::uint32_t p) { return omega1(whole(G), p); }

struct ElementaryAbelian {
  Subgroup subgroup;
  std::uint32_t prime = 0;
  std::uint32_t rank = 0;
};

inline bool is_elementary_abelian(const Subgroup& E, std::uint32_t p) {
  if (E.is_trivial() || !is_p_group(E, p) || !is_abelian(E)) return false;
  for (Elem x : E.elements())
    if (x != Group::identity() && E.parent().elem_order(x) != p) return false;
  return true;
}

inline std::uint32_t log_p(std::uint64_t n, std::uint32_t p) {
  std::uint32_t k = 0;
  while (n > 1) {
    n /= p;
    ++k;
  }
  return k;
}

/// All nontrivial elementary abelian p-subgroups of H, rank by rank; within a
/// rank they are sorted by element set.
inline std::vector<ElementaryAbelian> elementary_abelians(const Subgroup& H, std::uint32_t p,
                                                          std::size_t cap = Limits{}.poset_cap) {
  const Group& G = H.parent();
  std::vector<Elem> order_p;
  for (Elem x : H.elements())
    if (G.elem_order(x) == p) order_p.push_back(x);

  std::vector<ElementaryAbelian> out;
  std::vector<std::vector<Elem>> layer;  // element sets of the current rank
  {
    std::set<std::vector<Elem>> seen;
    for (Elem x : order_p) {
      std::vector<Elem> s{Group::identity()};
      for (std::uint32_t i = 1; i < p; ++i) s.push_back(G.mul(s.back(), x));
      std::sort(s.begin(), s.end());
      seen.insert(std::move(s));
    }
    layer.assign(seen.begin(), seen.end());
  }
  std::uint32_t rank = 1;
  while (!layer.empty()) {
    if (out.size() + layer.size() > cap) throw CapExceeded("elementary abelian count", cap);
    std::set<std::vector<Elem>> next;
    for (const auto& s : layer) {
      Subgroup E = subgroup_generated(G, s);
      out.push_back({E, p, rank});
      std::vector<char> covered(G.order(), 0);
      for (Elem e : s) covered[e] = 1;
      for (Elem x : order_p) {
        if (covered[x]) continue;
        bool central = true;
        for (Elem g : E.generators())
          if (!G.commute(g, x)) {
            central = false;
            break;
          }
        if (!central) continue;
        // <E, x> = union of E x^i
        std::vector<Elem> t(s);
        Elem xi = Group::identity();
        for (std::uint32_t i = 1; i < p; ++i) {
          xi = G.mul(xi, x);
          for (Elem e : s) t.push_back(G.mul(e, xi));
        }
        std::sort(t.begin(), t.end());
        for (Elem y : t) covered[y] = 1;
        next.insert(std::move(t));
      }
    }
    layer.assign(next.begin(), next.end());
    ++rank;
  }
  return out;
}

inline std::vector<ElementaryAbelian> elementary_abelians(const Group& G, std::uint32_t p,
                                                          std::size_t cap = Limits{}.poset_cap) {
  return elementary_abelians(whole(G), p, cap);
}

/// m_p(H): largest rank of an elementary abelian p-subgroup.
inline std::uint32_t p_rank(const Subgroup& H, std::uint32_t p, std::size_t cap = Limits{}.poset_cap) {
  std::uint32_t r = 0;
  for (const auto& e : elementary_abelians(H, p, cap)) r = std::max(r, e.rank);
  return r;
}

inline std::uint32_t p_rank(const Group& G, std::uint32_t p, std::size_t cap = Limits{}.poset_cap) {
  return p_rank(whole(G), p, cap);
}

// ---------------------------------------------------------------------------

inline bool is_perfect(const Subgroup& H) { return commutator_subgroup(H).order() == H.order(); }

/// Non-abelian simple: nontrivial, non-abelian, and each nontrivial class
/// generates H as a normal subgroup.
inline bool is_simple(const Subgroup& H) {
  if (H.order() <= 1 || is_abelian(H)) return false;
  for (const auto& cls : conjugacy_classes(H)) {
    if (cls.front() == Group::identity()) continue;
    if (normal_closure(H, std::vector<Elem>{cls.front()}).order() != H.order()) return false;
  }
  return true;
}

/// H / Z is non-abelian simple, for Z central in H. Uses that a normal
/// subgroup of H/Z is NZ/Z for the normal closure N of an element outside Z.
inline bool is_simple_modulo(const Subgroup& H, const Subgroup& Z) {
  if (Z.order() >= H.order()) return false;
  // H/Z abelian iff [H,H] <= Z
  if (is_subgroup_of(commutator_subgroup(H), Z)) return false;
  for (const auto& cls : conjugacy_classes(H)) {
    Elem y = cls.front();
    if (Z.contains(y)) continue;
    Subgroup N = normal_closure(H, std::vector<Elem>{y});
    if (join(N, Z).order() != H.order()) return false;
  }
  return true;
}

inline bool is_quasisimple(const Subgroup& H) {
  if (H.is_trivial() || !is_perfect(H)) return false;
  return is_simple_modulo(H, center(H));
}

inline bool is_simple(const Group& G) { return is_simple(whole(G)); }
inline bool is_perfect(const Group& G) { return is_perfect(whole(G)); }
inline bool is_quasisimple(const Group& G) { return is_quasisimple(whole(G)); }

/// Subnormal series from H down towards L by repeated normal closure.
/// L is subnormal in H iff the series ends at L.
inline std::vector<Subgroup> subnormal_series(const Subgroup& L, const Subgroup& H) {
  std::vector<Subgroup> chain{H};
  while (true) {
    Subgroup next = normal_closure(chain.back(), L);
    if (next == chain.back()) break;
    chain.push_back(next);
  }
  return chain;
}

inline bool is_subnormal(const Subgroup& L, const Subgroup& H) {
  if (!is_subgroup_of(L, H)) return false;
  return subnormal_series(L, H).back() == L;
}

struct ComponentData {
  std::vector<Subgroup> components;
  Subgroup layer;
  Subgroup fitting;
  Subgroup generalized_fitting;
};

/// Fitting subgroup: join of O_q over the primes dividing |H|.
inline Subgroup fitting(const Subgroup& H) {
  Subgroup F = trivial_subgroup(H.parent());
  for (std::uint32_t q : prime_divisors(H.order())) F = join(F, o_p(H, q));
  return F;
}

/// Components of H. For x in a component L outside Z(L), iterating
/// N <- <x^N> from H stops exactly at L; we run it from one representative
/// per conjugacy class and take conjugates of the quasisimple fixed points.
inline ComponentData components(const Subgroup& H) {
  const Group& G = H.parent();
  std::map<std::vector<Elem>, bool> memo;  // fixed point -> quasisimple?
  std::set<std::vector<Elem>> found;
  std::vector<Subgroup> comps;
  for (const auto& cls : conjugacy_classes(H)) {
    Elem x = cls.front();
    if (x == Group::identity()) continue;
    Subgroup N = H;
    while (true) {
      Subgroup next = normal_closure(N, std::vector<Elem>{x});
      if (next == N) break;
      N = next;
    }
    auto [it, fresh] = memo.try_emplace(N.key(), false);
    if (!fresh) continue;
    it->second = is_quasisimple(N);
    if (!it->second) continue;
    for (Elem g : H.elements()) {
      Subgroup C = conjugate(N, g);
      if (found.insert(C.key()).second) comps.push_back(C);
    }
  }
  std::sort(comps.begin(), comps.end(), [](const Subgroup& a, const Subgroup& b) { return a.key() < b.key(); });
  ComponentData out;
  out.layer = trivial_subgroup(G);
  for (const auto& c : comps) out.layer = join(out.layer, c);
  out.components = std::move(comps);
  out.fitting = fitting(H);
  out.generalized_fitting = join(out.fitting, out.layer);
  return out;
}

inline ComponentData components(const Group& G) { return components(whole(G)); }

/// C_A(L) = 1, for A normalizing L.
inline bool acts_faithfully(const Subgroup& A, const Subgroup& L) {
  require_same_parent(A, L);
  const Group& G = A.parent();
  for (Elem a : A.generators())
    for (Elem l : L.generators())
      if (!L.contains(G.conj(l, a))) throw NotNormalizing();
  return centralizer(A, L).is_trivial();
}

/// E meets L C_G(L) trivially, i.e. E induces outer automorphisms on L.
inline bool induces_outer(const Subgroup& E, const Subgroup& L, const Group& G) {
  if (!E.parent().same_as(G) || !L.parent().same_as(G)) throw ElementNotInParent();
  for (Elem e : E.generators())
    for (Elem l : L.generators())
      if (!L.contains(G.conj(l, e))) throw NotNormalizing();
  Subgroup LC = join(L, centralizer(G, L));
  return intersection(E, LC).is_trivial();
}

struct LocalStructure {
  Group group;
  std::uint32_t prime = 0;
  Subgroup sylow;
  Subgroup o_p;
  Subgroup o_p_prime;
  Subgroup omega1;
  std::uint32_t p_rank = 0;
};

inline LocalStructure local_structure(const Group& G, std::uint32_t p, const Limits& lim = {}) {
  LocalStructure s;
  s.group = G;
  s.prime = p;
  s.sylow = sylow(G, p);
  s.o_p = o_p(G, p);
  s.o_p_prime = o_p_prime(G, p);
  s.omega1 = omega1(G, p);
  s.p_rank = p_rank(G, p, lim.poset_cap);
  return s;
}

}  // namespace quillen
