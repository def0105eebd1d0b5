#pragma once

#include <algorithm>
#include <cstdint>
#include <memory>
#include <numeric>
#include <optional>
#include <span>
#include <string>
#include <unordered_map>
#include <utility>
#include <vector>

#include "quillen/config.hpp"
#include "quillen/error.hpp"
#include "quillen/perm/permutation.hpp"

namespace quillen {

/// Index of an element inside its parent group's enumeration. 0 is the identity.
using Elem = std::uint32_t;

namespace detail {

struct GroupData {
  std::string name;
  std::size_t degree = 0;
  std::vector<Permutation> generators;
  std::vector<Elem> generator_ids;
  std::vector<Permutation> elements;
  std::vector<Elem> inverse;
  std::vector<std::uint32_t> elem_order;

  // Degree <= 16 packs a permutation into 4-bit nibbles; lookups then avoid
  // allocating a Permutation per product.
  bool packed = false;
  std::vector<std::uint64_t> packed_form;
  std::unordered_map<std::uint64_t, Elem> packed_index;
  std::unordered_map<Permutation, Elem, PermutationHash> index;

  std::vector<Elem> table;  // order*order, only for small groups

  static std::uint64_t pack(std::span<const Point> img) {
    std::uint64_t k = 0;
    for (std::size_t i = 0; i < img.size(); ++i) k |= std::uint64_t(img[i]) << (4 * i);
    return k;
  }

  std::uint64_t packed_product(std::uint64_t a, std::uint64_t b) const {
    std::uint64_t r = 0;
    for (std::size_t i = 0; i < degree; ++i) {
      std::uint64_t ai = (a >> (4 * i)) & 0xF;
      r |= ((b >> (4 * ai)) & 0xF) << (4 * i);
    }
    return r;
  }

  std::optional<Elem> find(const Permutation& p) const {
    if (p.degree() != degree) return std::nullopt;
    if (packed) {
      auto it = packed_index.find(pack(p.images()));
      if (it == packed_index.end()) return std::nullopt;
      return it->second;
    }
    auto it = index.find(p);
    if (it == index.end()) return std::nullopt;
    return it->second;
  }

  Elem slow_mul(Elem a, Elem b) const {
    if (packed) return packed_index.at(packed_product(packed_form[a], packed_form[b]));
    return index.at(compose(elements[a], elements[b]));
  }

  Elem mul(Elem a, Elem b) const {
    if (!table.empty()) return table[std::size_t(a) * elements.size() + b];
    return slow_mul(a, b);
  }
};

inline constexpr std::size_t kTableLimit = 1024;

}  // namespace detail

/// A finite permutation group with its full element set enumerated.
/// Immutable and cheap to copy (shared data).
class Group {
public:
  Group() = default;

  const std::string& name() const { return d_->name; }
  std::size_t degree() const { return d_->degree; }
  std::size_t order() const { return d_->elements.size(); }
  const std::vector<Permutation>& generators() const { return d_->generators; }
  const std::vector<Elem>& generator_ids() const { return d_->generator_ids; }
  const Permutation& element(Elem e) const { return d_->elements.at(e); }

  std::optional<Elem> find(const Permutation& p) const { return d_->find(p); }
  Elem id_of(const Permutation& p) const {
    auto e = find(p);
    if (!e) throw ElementNotInParent();
    return *e;
  }

  static constexpr Elem identity() { return 0; }
  Elem mul(Elem a, Elem b) const { return d_->mul(a, b); }
  Elem inv(Elem a) const { return d_->inverse[a]; }
  std::uint32_t elem_order(Elem a) const { return d_->elem_order[a]; }
  Elem pow(Elem a, std::uint64_t k) const {
    Elem r = identity();
    for (std::uint64_t i = 0; i < k % elem_order(a); ++i) r = mul(r, a);
    return r;
  }
  /// x^g = g^-1 x g.
  Elem conj(Elem x, Elem g) const { return mul(mul(inv(g), x), g); }
  /// [a,b] = a^-1 b^-1 a b.
  Elem commutator(Elem a, Elem b) const { return mul(mul(inv(a), inv(b)), mul(a, b)); }
  bool commute(Elem a, Elem b) const { return mul(a, b) == mul(b, a); }

  Group renamed(std::string name) const {
    auto d = std::make_shared<detail::GroupData>(*d_);
    d->name = std::move(name);
    Group g;
    g.d_ = std::move(d);
    return g;
  }

  bool same_as(const Group& o) const noexcept { return d_ == o.d_; }
  bool valid() const noexcept { return d_ != nullptr; }

  friend Group generate(std::size_t, std::vector<Permutation>, std::size_t, std::string);

private:
  std::shared_ptr<const detail::GroupData> d_;
};

/// Enumerates the closure of `gens` by breadth-first right multiplication.
/// Throws CapExceeded when the group is larger than `cap`.
inline Group generate(std::size_t degree, std::vector<Permutation> gens,
                      std::size_t cap = Limits{}.element_cap, std::string name = "") {
  if (cap < 1) throw Error("cap must be positive");
  for (const auto& g : gens)
    if (g.degree() != degree) throw DegreeMismatch(degree, g.degree());

  auto d = std::make_shared<detail::GroupData>();
  d->name = std::move(name);
  d->degree = degree;
  d->packed = degree <= 16;

  auto insert = [&](Permutation p) -> std::pair<Elem, bool> {
    if (auto e = d->find(p)) return {*e, false};
    if (d->elements.size() >= cap) throw CapExceeded("group order", cap);
    Elem id = Elem(d->elements.size());
    if (d->packed) {
      auto k = detail::GroupData::pack(p.images());
      d->packed_form.push_back(k);
      d->packed_index.emplace(k, id);
    } else {
      d->index.emplace(p, id);
    }
    d->elements.push_back(std::move(p));
    return {id, true};
  };

  insert(Permutation::identity(degree));
  // Drop identity and duplicate generators, keep order otherwise.
  std::vector<Permutation> kept;
  for (auto& g : gens) {
    if (g.is_identity() || std::find(kept.begin(), kept.end(), g) != kept.end()) continue;
    kept.push_back(g);
  }
  d->generators = kept;
  for (std::size_t i = 0; i < d->elements.size(); ++i) {
    for (const auto& g : kept) {
      Permutation prod = compose(d->elements[i], g);
      insert(std::move(prod));
    }
  }
  for (const auto& g : kept) d->generator_ids.push_back(*d->find(g));

  const std::size_t n = d->elements.size();
  if (n <= detail::kTableLimit) {
    d->table.resize(n * n);
    for (Elem a = 0; a < n; ++a)
      for (Elem b = 0; b < n; ++b) d->table[std::size_t(a) * n + b] = d->slow_mul(a, b);
  }
  d->inverse.resize(n);
  d->elem_order.resize(n);
  for (Elem a = 0; a < n; ++a) {
    d->inverse[a] = *d->find(d->elements[a].inverse());
    d->elem_order[a] = std::uint32_t(d->elements[a].order());
  }

  Group out;
  out.d_ = std::move(d);
  return out;
}

// ---------------------------------------------------------------------------

/// A subgroup of a parent Group, stored as the sorted list of element ids.
/// Equality is element-set equality within the same parent.
class Subgroup {
public:
  Subgroup() = default;

  const Group& parent() const { return parent_; }
  std::size_t order() const { return d_->elems.size(); }
  std::span<const Elem> elements() const { return d_->elems; }
  const std::vector<Elem>& key() const { return d_->elems; }
  std::span<const Elem> generators() const { return d_->gens; }
  bool contains(Elem e) const { return e < d_->member.size() && d_->member[e]; }
  bool is_trivial() const { return order() == 1; }

  friend bool operator==(const Subgroup& a, const Subgroup& b) {
    return a.parent_.same_as(b.parent_) && a.d_->elems == b.d_->elems;
  }

  /// Trusted constructor: `elems` must be a sorted, closed subset; `gens` generate it.
  static Subgroup from_closed(Group parent, std::vector<Elem> elems, std::vector<Elem> gens) {
    auto d = std::make_shared<Data>();
    d->member.assign(parent.order(), false);
    for (Elem e : elems) d->member[e] = true;
    d->elems = std::move(elems);
    d->gens = std::move(gens);
    Subgroup s;
    s.parent_ = std::move(parent);
    s.d_ = std::move(d);
    return s;
  }

private:
  struct Data {
    std::vector<Elem> elems;
    std::vector<Elem> gens;
    std::vector<bool> member;
  };
  Group parent_;
  std::shared_ptr<const Data> d_;
};

namespace detail {

/// Dimino-style closure: extends the closed set `member/elems` by each seed
/// not yet inside, adding whole right cosets at a time.
inline void extend_closure(const Group& G, std::vector<char>& member, std::vector<Elem>& elems,
                           std::vector<Elem>& gens, Elem s) {
  if (member[s]) return;
  gens.push_back(s);
  const std::vector<Elem> base = elems;  // the old subgroup H
  auto add_coset = [&](Elem t) {
    for (Elem h : base) {
      Elem x = G.mul(h, t);
      if (!member[x]) {
        member[x] = 1;
        elems.push_back(x);
      }
    }
  };
  std::vector<Elem> reps{Group::identity()};
  add_coset(s);
  reps.push_back(s);
  for (std::size_t i = 1; i < reps.size(); ++i) {
    for (Elem g : gens) {
      Elem t = G.mul(reps[i], g);
      if (!member[t]) {
        add_coset(t);
        reps.push_back(t);
      }
    }
  }
}

}  // namespace detail

inline Subgroup whole(const Group& G) {
  std::vector<Elem> all(G.order());
  std::iota(all.begin(), all.end(), Elem{0});
  return Subgroup::from_closed(G, std::move(all), G.generator_ids());
}

inline Subgroup trivial_subgroup(const Group& G) {
  return Subgroup::from_closed(G, {Group::identity()}, {});
}

/// Smallest subgroup of G containing `seed`.
inline Subgroup subgroup_generated(const Group& G, std::span<const Elem> seed) {
  std::vector<char> member(G.order(), 0);
  std::vector<Elem> elems{Group::identity()};
  std::vector<Elem> gens;
  member[0] = 1;
  for (Elem s : seed) {
    if (s >= G.order()) throw ElementNotInParent();
    detail::extend_closure(G, member, elems, gens, s);
  }
  std::sort(elems.begin(), elems.end());
  return Subgroup::from_closed(G, std::move(elems), std::move(gens));
}

inline Subgroup subgroup_generated(const Group& G, std::initializer_list<Elem> seed) {
  return subgroup_generated(G, std::span<const Elem>(seed.begin(), seed.size()));
}

/// Subgroup generated by permutations (must lie in G).
inline Subgroup subgroup_from_permutations(const Group& G, const std::vector<Permutation>& perms) {
  std::vector<Elem> ids;
  for (const auto& p : perms) ids.push_back(G.id_of(p));
  return subgroup_generated(G, ids);
}

inline void require_same_parent(const Subgroup& a, const Subgroup& b) {
  if (!a.parent().same_as(b.parent())) throw ElementNotInParent();
}

inline bool is_subgroup_of(const Subgroup& a, const Subgroup& b) {
  require_same_parent(a, b);
  if (b.order() % a.order() != 0) return false;
  for (Elem e : a.generators())
    if (!b.contains(e)) return false;
  return true;
}

/// <A, B>.
inline Subgroup join(const Subgroup& a, const Subgroup& b) {
  require_same_parent(a, b);
  std::vector<Elem> seed(a.generators().begin(), a.generators().end());
  seed.insert(seed.end(), b.generators().begin(), b.generators().end());
  return subgroup_generated(a.parent(), seed);
}

inline Subgroup intersection(const Subgroup& a, const Subgroup& b) {
  require_same_parent(a, b);
  const Subgroup& small = a.order() <= b.order() ? a : b;
  const Subgroup& big = a.order() <= b.order() ? b : a;
  std::vector<Elem> common;
  for (Elem e : small.elements())
    if (big.contains(e)) common.push_back(e);
  return subgroup_generated(a.parent(), common);
}

/// C_H(S): elements of H commuting with every element of S.
inline Subgroup centralizer(const Subgroup& H, const Subgroup& S) {
  require_same_parent(H, S);
  const Group& G = H.parent();
  std::vector<Elem> out;
  for (Elem h : H.elements()) {
    bool ok = true;
    for (Elem s : S.generators())
      if (!G.commute(h, s)) {
        ok = false;
        break;
      }
    if (ok) out.push_back(h);
  }
  return subgroup_generated(G, out);
}

inline Subgroup centralizer(const Group& G, const Subgroup& S) { return centralizer(whole(G), S); }

/// N_H(K).
inline Subgroup normalizer(const Subgroup& H, const Subgroup& K) {
  require_same_parent(H, K);
  const Group& G = H.parent();
  std::vector<Elem> out;
  for (Elem h : H.elements()) {
    bool ok = true;
    for (Elem k : K.generators())
      if (!K.contains(G.conj(k, h))) {
        ok = false;
        break;
      }
    if (ok) out.push_back(h);
  }
  return subgroup_generated(G, out);
}

inline Subgroup normalizer(const Group& G, const Subgroup& K) { return normalizer(whole(G), K); }

inline Subgroup center(const Subgroup& H) { return centralizer(H, H); }
inline Subgroup center(const Group& G) { return center(whole(G)); }

/// H^g = g^-1 H g.
inline Subgroup conjugate(const Subgroup& H, Elem g) {
  const Group& G = H.parent();
  if (g >= G.order()) throw ElementNotInParent();
  std::vector<Elem> elems;
  elems.reserve(H.order());
  for (Elem h : H.elements()) elems.push_back(G.conj(h, g));
  std::sort(elems.begin(), elems.end());
  std::vector<Elem> gens;
  for (Elem h : H.generators()) gens.push_back(G.conj(h, g));
  return Subgroup::from_closed(G, std::move(elems), std::move(gens));
}

/// True iff N <= H and N is normalized by every element of H.
inline bool is_normal_in(const Subgroup& N, const Subgroup& H) {
  if (!is_subgroup_of(N, H)) return false;
  const Group& G = H.parent();
  for (Elem h : H.generators())
    for (Elem n : N.generators())
      if (!N.contains(G.conj(n, h))) return false;
  return true;
}

/// <seeds^H>, the normal closure in H.
inline Subgroup normal_closure(const Subgroup& H, std::span<const Elem> seeds) {
  const Group& G = H.parent();
  std::vector<char> member(G.order(), 0);
  std::vector<Elem> elems{Group::identity()};
  std::vector<Elem> gens;
  member[0] = 1;
  std::vector<Elem> pending(seeds.begin(), seeds.end());
  // Close under conjugation by generators of H; each new generator's
  // conjugates are queued until the subgroup is stable.
  while (!pending.empty()) {
    Elem s = pending.back();
    pending.pop_back();
    if (member[s]) continue;
    detail::extend_closure(G, member, elems, gens, s);
    for (Elem h : H.generators()) pending.push_back(G.conj(s, h));
    // conjugates of older generators by H are already queued or inside
  }
  // Verify normality and repair if any conjugate escaped (conjugates of
  // products are products of conjugates, so generator conjugates suffice).
  bool changed = true;
  while (changed) {
    changed = false;
    const auto gens_now = gens;
    for (Elem s : gens_now)
      for (Elem h : H.generators()) {
        Elem t = G.conj(s, h);
        if (!member[t]) {
          detail::extend_closure(G, member, elems, gens, t);
          changed = true;
        }
      }
  }
  std::sort(elems.begin(), elems.end());
  return Subgroup::from_closed(G, std::move(elems), std::move(gens));
}

inline Subgroup normal_closure(const Subgroup& H, const Subgroup& S) {
  return normal_closure(H, S.generators());
}

/// [H, H].
inline Subgroup commutator_subgroup(const Subgroup& H) {
  const Group& G = H.parent();
  std::vector<Elem> comms;
  auto gens = H.generators();
  for (std::size_t i = 0; i < gens.size(); ++i)
    for (std::size_t j = i + 1; j < gens.size(); ++j) comms.push_back(G.commutator(gens[i], gens[j]));
  return normal_closure(H, comms);
}

inline Subgroup commutator_subgroup(const Group& G) { return commutator_subgroup(whole(G)); }

/// [A, B] = <[a,b] : a in A, b in B>.
inline Subgroup commutator(const Subgroup& A, const Subgroup& B) {
  require_same_parent(A, B);
  const Group& G = A.parent();
  std::vector<Elem> comms;
  for (Elem a : A.elements())
    for (Elem b : B.elements()) comms.push_back(G.commutator(a, b));
  return subgroup_generated(G, comms);
}

inline bool is_abelian(const Subgroup& H) {
  const Group& G = H.parent();
  auto gens = H.generators();
  for (std::size_t i = 0; i < gens.size(); ++i)
    for (std::size_t j = i + 1; j < gens.size(); ++j)
      if (!G.commute(gens[i], gens[j])) return false;
  return true;
}

/// Conjugacy classes of H acting on itself, each sorted, ordered by least element.
inline std::vector<std::vector<Elem>> conjugacy_classes(const Subgroup& H) {
  const Group& G = H.parent();
  std::vector<char> seen(G.order(), 0);
  std::vector<std::vector<Elem>> classes;
  for (Elem x : H.elements()) {
    if (seen[x]) continue;
    std::vector<Elem> cls{x};
    seen[x] = 1;
    for (std::size_t i = 0; i < cls.size(); ++i)
      for (Elem h : H.generators()) {
        Elem y = G.conj(cls[i], h);
        if (!seen[y]) {
          seen[y] = 1;
          cls.push_back(y);
        }
      }
    std::sort(cls.begin(), cls.end());
    classes.push_back(std::move(cls));
  }
  return classes;
}

/// Elements of G moving only points inside `points` (0-based).
inline Subgroup support_subgroup(const Group& G, const std::vector<Point>& points) {
  std::vector<bool> allowed(G.degree(), false);
  for (Point p : points) allowed.at(p) = true;
  std::vector<Elem> out;
  for (Elem e = 0; e < G.order(); ++e) {
    const auto& perm = G.element(e);
    bool ok = true;
    for (Point i = 0; i < G.degree(); ++i)
      if (!allowed[i] && perm[i] != i) {
        ok = false;
        break;
      }
    if (ok) out.push_back(e);
  }
  return subgroup_generated(G, out);
}

/// Re-enumerates a subgroup as a standalone Group on the same points.
inline Group to_group(const Subgroup& H, std::string name = "", std::size_t cap = Limits{}.element_cap) {
  std::vector<Permutation> gens;
  for (Elem e : H.generators()) gens.push_back(H.parent().element(e));
  return generate(H.parent().degree(), std::move(gens), cap, std::move(name));
}

// ---------------------------------------------------------------------------

/// G/N realised as the action of G on the right cosets of N.
struct Quotient {
  Group group;
  std::vector<std::uint32_t> coset_of;  // G element -> coset index
  std::vector<Elem> section;            // coset index -> representative in G
  std::vector<Elem> image;              // G element -> element of `group`

  /// Image of a subgroup of G under the projection.
  Subgroup image_of(const Subgroup& H) const {
    std::vector<Elem> ids;
    for (Elem e : H.generators()) ids.push_back(image[e]);
    return subgroup_generated(group, ids);
  }
};

inline Quotient quotient(const Group& G, const Subgroup& N, std::size_t cap = Limits{}.element_cap) {
  if (!N.parent().same_as(G)) throw ElementNotInParent();
  if (!is_normal_in(N, whole(G))) throw NotNormal();
  Quotient q;
  const std::uint32_t none = std::uint32_t(-1);
  q.coset_of.assign(G.order(), none);
  for (Elem g = 0; g < G.order(); ++g) {
    if (q.coset_of[g] != none) continue;
    std::uint32_t idx = std::uint32_t(q.section.size());
    q.section.push_back(g);
    for (Elem n : N.elements()) q.coset_of[G.mul(n, g)] = idx;
  }
  const std::size_t index = q.section.size();
  auto action = [&](Elem x) {
    std::vector<Point> img(index);
    for (std::size_t c = 0; c < index; ++c) img[c] = q.coset_of[G.mul(q.section[c], x)];
    return Permutation(std::move(img));
  };
  std::vector<Permutation> gens;
  for (Elem g : G.generator_ids()) gens.push_back(action(g));
  q.group = generate(index, std::move(gens), cap, G.name().empty() ? "" : G.name() + "/N");
  q.image.resize(G.order());
  // Elements of one coset share an image; the image only depends on the coset.
  std::vector<Elem> img_of_coset(index);
  for (std::size_t c = 0; c < index; ++c) img_of_coset[c] = q.group.id_of(action(q.section[c]));
  for (Elem g = 0; g < G.order(); ++g) q.image[g] = img_of_coset[q.coset_of[g]];
  return q;
}

inline Permutation shift_into(const Permutation& p, std::size_t offset, std::size_t degree) {
  std::vector<Point> img(degree);
  std::iota(img.begin(), img.end(), Point{0});
  for (std::size_t i = 0; i < p.degree(); ++i) img[offset + i] = Point(offset + p[Point(i)]);
  return Permutation(std::move(img));
}

/// G1 x G2 acting on the disjoint union of their point sets (G1 first).
inline Group direct_product(const Group& a, const Group& b, std::size_t cap = Limits{}.element_cap,
                            std::string name = "") {
  const std::size_t n = a.degree() + b.degree();
  std::vector<Permutation> gens;
  for (const auto& g : a.generators()) gens.push_back(shift_into(g, 0, n));
  for (const auto& g : b.generators()) gens.push_back(shift_into(g, a.degree(), n));
  if (name.empty()) name = a.name() + "x" + b.name();
  return generate(n, std::move(gens), cap, std::move(name));
}

/// G wr C_n on n disjoint copies of G's points, the top group permuting copies cyclically.
inline Group wreath_cyclic(const Group& G, std::size_t n, std::size_t cap = Limits{}.element_cap,
                           std::string name = "") {
  if (n < 1) throw PreconditionViolated("wreath_cyclic needs n >= 1");
  const std::size_t d = G.degree();
  const std::size_t total = d * n;
  std::vector<Permutation> gens;
  for (const auto& g : G.generators()) gens.push_back(shift_into(g, 0, total));
  if (n > 1) {
    std::vector<Point> img(total);
    for (std::size_t c = 0; c < n; ++c)
      for (std::size_t i = 0; i < d; ++i) img[c * d + i] = Point(((c + 1) % n) * d + i);
    gens.emplace_back(std::move(img));
  }
  if (name.empty()) name = G.name() + "wrC" + std::to_string(n);
  return generate(total, std::move(gens), cap, std::move(name));
}

}  // namespace quillen
