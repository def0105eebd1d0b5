#pragma once

#include <algorithm>
#include <map>
#include <memory>
#include <optional>
#include <set>
#include <string>
#include <vector>

#include "quillen/local/local.hpp"
#include "quillen/poset/certificate.hpp"
#include "quillen/poset/poset.hpp"

namespace quillen {

/// A poset of p-subgroups of one group, ordered by inclusion.
///
/// Every GroupPoset derived from the same ambient (restrictions to a
/// subgroup, N(H), up/down sets) shares the ambient's node list, and its
/// poset keys are ambient node indices.
class GroupPoset {
public:
  struct Ambient {
    Group group;
    std::uint32_t prime = 0;
    std::vector<Subgroup> nodes;
    std::map<std::vector<Elem>, std::uint32_t> key_of;
    Poset poset;
  };

  GroupPoset() = default;
  GroupPoset(std::shared_ptr<const Ambient> amb, Poset poset) : amb_(std::move(amb)), poset_(std::move(poset)) {}

  /// Poset on the given subgroups, which must be sorted so that inclusion
  /// implies a smaller index (e.g. by order).
  static GroupPoset build(const Group& G, std::uint32_t p, std::vector<Subgroup> nodes) {
    auto amb = std::make_shared<Ambient>();
    amb->group = G;
    amb->prime = p;
    const std::size_t n = nodes.size();
    std::vector<Bits> up(n, Bits(n));
    std::vector<std::string> labels(n);
    for (std::size_t i = 0; i < n; ++i) {
      up[i].set(i);
      for (std::size_t j = i + 1; j < n; ++j)
        if (nodes[j].order() > nodes[i].order() && nodes[j].order() % nodes[i].order() == 0 &&
            is_subgroup_of(nodes[i], nodes[j]))
          up[i].set(j);
      labels[i] = subgroup_label(nodes[i]);
      amb->key_of.emplace(nodes[i].key(), std::uint32_t(i));
    }
    amb->poset = Poset::from_up_rows(std::move(up), std::move(labels));
    amb->nodes = std::move(nodes);
    Poset P = amb->poset;
    return GroupPoset(std::move(amb), std::move(P));
  }

  /// "<g1,g2,...>" in 1-based cycle notation.
  static std::string subgroup_label(const Subgroup& H) {
    std::string s = "<";
    bool first = true;
    for (Elem g : H.generators()) {
      s += (first ? "" : ",") + H.parent().element(g).to_cycle_string();
      first = false;
    }
    return s + ">";
  }

  const Group& group() const { return amb_->group; }
  std::uint32_t prime() const { return amb_->prime; }
  const Poset& poset() const { return poset_; }
  std::size_t size() const { return poset_.size(); }
  const Subgroup& node(std::size_t i) const { return amb_->nodes[poset_.key(i)]; }
  const std::shared_ptr<const Ambient>& ambient() const { return amb_; }
  GroupPoset ambient_poset() const { return GroupPoset(amb_, amb_->poset); }

  /// Ambient key of a subgroup, if it is an ambient node.
  std::optional<std::uint32_t> ambient_key(const Subgroup& H) const {
    auto it = amb_->key_of.find(H.key());
    if (it == amb_->key_of.end()) return std::nullopt;
    return it->second;
  }
  const Subgroup& subgroup_of_key(std::uint32_t k) const { return amb_->nodes.at(k); }

  std::optional<std::size_t> index_of(const Subgroup& H) const {
    auto k = ambient_key(H);
    if (!k) return std::nullopt;
    return poset_.index_of_key(*k);
  }
  std::size_t require_index(const Subgroup& H) const {
    auto i = index_of(H);
    if (!i) throw NodeNotFound();
    return *i;
  }

  GroupPoset induced(const std::vector<std::size_t>& idx) const { return GroupPoset(amb_, poset_.induced(idx)); }

  template <class Pred>
  GroupPoset filter(Pred keep) const {
    std::vector<std::size_t> idx;
    for (std::size_t i = 0; i < size(); ++i)
      if (keep(node(i))) idx.push_back(i);
    return induced(idx);
  }

  bool same_ambient(const GroupPoset& o) const { return amb_ == o.amb_; }

private:
  std::shared_ptr<const Ambient> amb_;
  Poset poset_;
};

/// A_p(G): nontrivial elementary abelian p-subgroups.
inline GroupPoset quillen_poset(const Group& G, std::uint32_t p, std::size_t cap = Limits{}.poset_cap) {
  std::vector<Subgroup> nodes;
  for (auto& e : elementary_abelians(G, p, cap)) nodes.push_back(std::move(e.subgroup));
  return GroupPoset::build(G, p, std::move(nodes));
}

/// A_p(H) for H <= G as the induced subposet of the ambient A_p(G).
inline GroupPoset restrict_to(const GroupPoset& X, const Subgroup& H) {
  return X.filter([&](const Subgroup& E) { return is_subgroup_of(E, H); });
}

/// All nontrivial p-subgroups, grown from cyclic subgroups of order p by
/// adjoining normalizing p-elements one factor p at a time.
inline std::vector<Subgroup> p_subgroups(const Group& G, std::uint32_t p, std::size_t cap = Limits{}.poset_cap) {
  std::vector<Elem> pel;
  for (Elem x = 1; x < G.order(); ++x)
    if (is_p_element(G, x, p)) pel.push_back(x);
  std::vector<Subgroup> out;
  std::set<std::vector<Elem>> layer_keys;
  for (Elem x : pel)
    if (G.elem_order(x) == p) {
      std::vector<Elem> s{Group::identity()};
      for (std::uint32_t i = 1; i < p; ++i) s.push_back(G.mul(s.back(), x));
      std::sort(s.begin(), s.end());
      layer_keys.insert(std::move(s));
    }
  while (!layer_keys.empty()) {
    if (out.size() + layer_keys.size() > cap) throw CapExceeded("p-subgroup count", cap);
    std::set<std::vector<Elem>> next;
    for (const auto& s : layer_keys) {
      Subgroup P = subgroup_generated(G, s);
      out.push_back(P);
      std::vector<char> covered(G.order(), 0);
      for (Elem e : s) covered[e] = 1;
      for (Elem x : pel) {
        if (covered[x] || !P.contains(G.pow(x, p))) continue;
        bool normalizes = true;
        for (Elem g : P.generators())
          if (!P.contains(G.conj(g, x))) {
            normalizes = false;
            break;
          }
        if (!normalizes) continue;
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
    layer_keys = std::move(next);
  }
  return out;
}

/// S_p(G): all nontrivial p-subgroups.
inline GroupPoset brown_poset(const Group& G, std::uint32_t p, std::size_t cap = Limits{}.poset_cap) {
  return GroupPoset::build(G, p, p_subgroups(G, p, cap));
}

/// N(H) = {E : E meets H nontrivially}.
inline GroupPoset neighborhood(const GroupPoset& X, const Subgroup& H) {
  return X.filter([&](const Subgroup& E) {
    for (Elem e : E.elements())
      if (e != Group::identity() && H.contains(e)) return true;
    return false;
  });
}

inline GroupPoset upper_part(const GroupPoset& X, std::size_t x) {
  std::vector<std::size_t> idx;
  Bits m = strict_up_mask(X.poset(), x);
  for (std::size_t i = m.find_first(); i != Bits::npos; i = m.find_next(i)) idx.push_back(i);
  return X.induced(idx);
}

inline GroupPoset lower_part(const GroupPoset& X, std::size_t x) {
  std::vector<std::size_t> idx;
  Bits m = strict_down_mask(X.poset(), x);
  for (std::size_t i = m.find_first(); i != Bits::npos; i = m.find_next(i)) idx.push_back(i);
  return X.induced(idx);
}

/// Map between two posets of one ambient, x -> f(node x), where f returns a
/// subgroup that must be a node of the target.
template <class F>
PosetMap subgroup_map(const GroupPoset& src, const GroupPoset& dst, F f) {
  std::vector<std::size_t> a(src.size());
  for (std::size_t i = 0; i < src.size(); ++i) a[i] = dst.require_index(f(src.node(i)));
  return PosetMap(src.poset(), dst.poset(), std::move(a));
}

struct InflationMaps {
  GroupPoset sub;    // A_p(H)
  GroupPoset nbhd;   // N(H)
  PosetMap inclusion;
  PosetMap retraction;
};

/// i: A_p(H) -> N(H) and r(E) = E cap H; asserts r i = id and i r <= id.
inline InflationMaps inflation_maps(const GroupPoset& X, const Subgroup& H) {
  GroupPoset sub = restrict_to(X, H);
  GroupPoset nb = neighborhood(X, H);
  PosetMap inc = subgroup_map(sub, nb, [](const Subgroup& E) { return E; });
  PosetMap ret = subgroup_map(nb, sub, [&](const Subgroup& E) { return intersection(E, H); });
  if (!compose(inc, ret).is_identity()) throw InternalError("inflation: r i != id");
  if (!pointwise_leq(compose(ret, inc), PosetMap::identity(nb.poset())))
    throw InternalError("inflation: i r is not below id");
  return {std::move(sub), std::move(nb), std::move(inc), std::move(ret)};
}

struct LinkMaps {
  GroupPoset centralizer_poset;  // A_p(C_H(E))
  GroupPoset upper;              // N(H)_{>E}
  PosetMap f;                    // A -> AE
  PosetMap g;                    // A -> A cap H
};

/// Maps between A_p(C_H(E)) and N(H)_{>E} for E with E cap H = 1.
inline LinkMaps link_maps(const GroupPoset& X, const Subgroup& H, const Subgroup& E) {
  if (!intersection(E, H).is_trivial()) throw PreconditionViolated("E meets H nontrivially");
  Subgroup C = centralizer(H, E);
  GroupPoset cp = restrict_to(X, C);
  GroupPoset nb = neighborhood(X, H);
  GroupPoset up = nb.filter([&](const Subgroup& A) { return A.order() > E.order() && is_subgroup_of(E, A); });
  PosetMap f = subgroup_map(cp, up, [&](const Subgroup& A) { return join(A, E); });
  PosetMap g = subgroup_map(up, cp, [&](const Subgroup& A) { return intersection(A, H); });
  if (!compose(f, g).is_identity()) throw InternalError("link maps: g f != id");
  if (!pointwise_leq(compose(g, f), PosetMap::identity(up.poset())))
    throw InternalError("link maps: f g is not below id");
  return {std::move(cp), std::move(up), std::move(f), std::move(g)};
}

struct FiltrationStep {
  std::uint32_t key = 0;  // ambient key of E_i
  std::uint32_t rank = 0;
  GroupPoset lower;  // (X_{i-1})_{<E_i}: nontrivial proper subgroups of E_i
  GroupPoset upper;  // (X_{i-1})_{>E_i} = N(H)_{>E_i}
  Poset link;        // lower * upper
};

struct Filtration {
  GroupPoset start;                // N(H)
  std::vector<std::uint32_t> order;  // complement keys E_1..E_r
  std::vector<FiltrationStep> steps;
};

/// Adds the complement of N(H) to N(H) in ambient index order, which sorts by
/// (order, element set) and so respects inclusion.
inline Filtration attachment_filtration(const GroupPoset& X, const Subgroup& H) {
  Filtration F;
  F.start = neighborhood(X, H);
  std::vector<char> present(X.size(), 0);
  for (std::size_t i = 0; i < F.start.size(); ++i) present[X.poset().require_key(F.start.poset().key(i))] = 1;
  for (std::size_t i = 0; i < X.size(); ++i) {
    if (present[i]) continue;
    FiltrationStep s;
    s.key = X.poset().key(i);
    s.rank = log_p(X.node(i).order(), X.prime());
    std::vector<std::size_t> lo, hi;
    for (std::size_t j = 0; j < X.size(); ++j) {
      if (!present[j] || j == i) continue;
      if (X.poset().leq(j, i)) lo.push_back(j);
      if (X.poset().leq(i, j)) hi.push_back(j);
    }
    s.lower = X.induced(lo);
    s.upper = X.induced(hi);
    s.link = join(s.lower.poset(), s.upper.poset());
    F.order.push_back(s.key);
    F.steps.push_back(std::move(s));
    present[i] = 1;
  }
  return F;
}

// ---------------------------------------------------------------------------

/// Z0 = Omega_1(O_p(Z(G))): central elementary abelian p-subgroup.
inline Subgroup central_p_socle(const Group& G, std::uint32_t p) {
  Subgroup Z = center(G);
  return omega1(o_p(Z, p), p);
}

/// For A_p(G) (or any ambient-closed subposet): minimum / maximum, the
/// central cone A <= A Z0 >= Z0 when G has central elements of order p,
/// then dismantling.
inline std::optional<ContractibilityCertificate> contractibility_certificate(const GroupPoset& X) {
  const Poset& P = X.poset();
  if (P.empty()) return std::nullopt;
  if (auto m = P.minimum()) return ContractibilityCertificate{CertificateKind::HasMinimum, *m, {}, {}};
  if (auto m = P.maximum()) return ContractibilityCertificate{CertificateKind::HasMaximum, *m, {}, {}};
  Subgroup Z0 = central_p_socle(X.group(), X.prime());
  if (!Z0.is_trivial()) {
    auto z = X.index_of(Z0);
    if (z) {
      ContractibilityCertificate c{CertificateKind::ConicalZigzag, *z, std::vector<std::size_t>(P.size()), {}};
      bool ok = true;
      for (std::size_t i = 0; i < P.size() && ok; ++i) {
        auto j = X.index_of(join(X.node(i), Z0));
        if (!j) ok = false;
        else c.map[i] = *j;
      }
      if (ok && replay(c, P)) return c;
    }
  }
  return contractibility_certificate(P);
}

}  // namespace quillen
