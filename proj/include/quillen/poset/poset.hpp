#pragma once

#include <algorithm>
#include <cstdint>
#include <functional>
#include <memory>
#include <optional>
#include <string>
#include <vector>

#include <boost/dynamic_bitset.hpp>
#include <nlohmann/json.hpp>

#include "quillen/config.hpp"
#include "quillen/error.hpp"

namespace quillen {

using Bits = boost::dynamic_bitset<std::uint64_t>;

/// A chain written as the increasing list of node keys.
using Simplex = std::vector<std::uint32_t>;

/// Finite poset with the full order relation stored as bit rows.
///
/// Node indices always form a linear extension (i <= j in the order implies
/// i <= j as integers). Each node carries a key, strictly increasing with the
/// index; induced subposets keep the keys of the nodes they keep, so a chain
/// written in keys means the same thing in every subposet of one ambient
/// poset.
class Poset {
public:
  Poset() : d_(std::make_shared<Data>()) {}

  /// Builds and validates a poset from a predicate leq(i, j). Index order
  /// must be a linear extension.
  static Poset from_relation(std::size_t n, const std::function<bool(std::size_t, std::size_t)>& leq,
                             std::vector<std::string> labels = {}) {
    auto d = std::make_shared<Data>();
    d->up.assign(n, Bits(n));
    d->down.assign(n, Bits(n));
    for (std::size_t i = 0; i < n; ++i)
      for (std::size_t j = 0; j < n; ++j)
        if (leq(i, j)) {
          d->up[i].set(j);
          d->down[j].set(i);
        }
    for (std::size_t i = 0; i < n; ++i) {
      if (!d->up[i].test(i)) throw PreconditionViolated("relation is not reflexive");
      for (std::size_t j = d->up[i].find_first(); j != Bits::npos; j = d->up[i].find_next(j)) {
        if (j < i) throw PreconditionViolated("node order is not a linear extension (or not antisymmetric)");
        if (!d->up[j].is_subset_of(d->up[i]))
          throw PreconditionViolated("relation is not transitive");
      }
    }
    finish(*d, std::move(labels));
    return Poset(std::move(d));
  }

  /// Trusted constructor from up-rows (up[i] = {j : i <= j}).
  static Poset from_up_rows(std::vector<Bits> up, std::vector<std::string> labels = {},
                            std::vector<std::uint32_t> keys = {}) {
    auto d = std::make_shared<Data>();
    const std::size_t n = up.size();
    d->down.assign(n, Bits(n));
    for (std::size_t i = 0; i < n; ++i)
      for (std::size_t j = up[i].find_first(); j != Bits::npos; j = up[i].find_next(j)) d->down[j].set(i);
    d->up = std::move(up);
    d->keys = std::move(keys);
    finish(*d, std::move(labels));
    return Poset(std::move(d));
  }

  static Poset antichain(std::size_t n) {
    return from_relation(n, [](std::size_t i, std::size_t j) { return i == j; });
  }
  static Poset chain(std::size_t n) {
    return from_relation(n, [](std::size_t i, std::size_t j) { return i <= j; });
  }

  std::size_t size() const { return d_->up.size(); }
  bool empty() const { return size() == 0; }
  bool leq(std::size_t i, std::size_t j) const { return d_->up[i].test(j); }
  bool lt(std::size_t i, std::size_t j) const { return i != j && leq(i, j); }
  bool comparable(std::size_t i, std::size_t j) const { return leq(i, j) || leq(j, i); }
  const Bits& up(std::size_t i) const { return d_->up[i]; }
  const Bits& down(std::size_t i) const { return d_->down[i]; }
  const std::string& label(std::size_t i) const { return d_->labels[i]; }
  const std::vector<std::string>& labels() const { return d_->labels; }
  std::uint32_t key(std::size_t i) const { return d_->keys[i]; }
  const std::vector<std::uint32_t>& keys() const { return d_->keys; }

  std::optional<std::size_t> index_of_key(std::uint32_t k) const {
    auto it = std::lower_bound(d_->keys.begin(), d_->keys.end(), k);
    if (it == d_->keys.end() || *it != k) return std::nullopt;
    return std::size_t(it - d_->keys.begin());
  }
  std::size_t require_key(std::uint32_t k) const {
    auto i = index_of_key(k);
    if (!i) throw NodeNotFound();
    return *i;
  }

  /// Subposet on the given node indices (sorted ascending); keys are kept.
  Poset induced(const std::vector<std::size_t>& nodes) const {
    const std::size_t m = nodes.size();
    std::vector<Bits> up(m, Bits(m));
    std::vector<std::string> labels(m);
    std::vector<std::uint32_t> keys(m);
    for (std::size_t a = 0; a < m; ++a) {
      if (a > 0 && nodes[a] <= nodes[a - 1]) throw PreconditionViolated("induced node list must be increasing");
      labels[a] = label(nodes[a]);
      keys[a] = key(nodes[a]);
      for (std::size_t b = a; b < m; ++b)
        if (leq(nodes[a], nodes[b])) up[a].set(b);
    }
    return from_up_rows(std::move(up), std::move(labels), std::move(keys));
  }

  Poset induced(const Bits& mask) const {
    std::vector<std::size_t> nodes;
    for (std::size_t i = mask.find_first(); i != Bits::npos; i = mask.find_next(i)) nodes.push_back(i);
    return induced(nodes);
  }

  std::optional<std::size_t> minimum() const {
    if (empty() || up(0).count() != size()) return std::nullopt;
    return 0;
  }
  std::optional<std::size_t> maximum() const {
    if (empty() || down(size() - 1).count() != size()) return std::nullopt;
    return size() - 1;
  }

  /// Same keys and same relation.
  friend bool operator==(const Poset& a, const Poset& b) {
    return a.d_->keys == b.d_->keys && a.d_->up == b.d_->up;
  }

private:
  struct Data {
    std::vector<Bits> up, down;
    std::vector<std::string> labels;
    std::vector<std::uint32_t> keys;
  };

  explicit Poset(std::shared_ptr<const Data> d) : d_(std::move(d)) {}

  static void finish(Data& d, std::vector<std::string> labels) {
    const std::size_t n = d.up.size();
    if (labels.empty()) {
      labels.resize(n);
      for (std::size_t i = 0; i < n; ++i) labels[i] = std::to_string(i);
    }
    if (labels.size() != n) throw PreconditionViolated("label count differs from node count");
    d.labels = std::move(labels);
    if (d.keys.empty()) {
      d.keys.resize(n);
      for (std::size_t i = 0; i < n; ++i) d.keys[i] = std::uint32_t(i);
    }
    for (std::size_t i = 1; i < n; ++i)
      if (d.keys[i] <= d.keys[i - 1]) throw PreconditionViolated("keys must increase with the node index");
  }

  std::shared_ptr<const Data> d_;
};

inline Bits strict_up_mask(const Poset& X, std::size_t x) {
  Bits b = X.up(x);
  b.reset(x);
  return b;
}
inline Bits strict_down_mask(const Poset& X, std::size_t x) {
  Bits b = X.down(x);
  b.reset(x);
  return b;
}

inline void require_node(const Poset& X, std::size_t x) {
  if (x >= X.size()) throw NodeNotFound();
}

inline Poset strict_upset(const Poset& X, std::size_t x) {
  require_node(X, x);
  return X.induced(strict_up_mask(X, x));
}
inline Poset strict_downset(const Poset& X, std::size_t x) {
  require_node(X, x);
  return X.induced(strict_down_mask(X, x));
}

/// X * Y: disjoint union with every node of X below every node of Y. Keys of
/// Y are shifted past those of X.
inline Poset join(const Poset& X, const Poset& Y) {
  const std::size_t n = X.size(), m = Y.size();
  std::vector<Bits> up(n + m, Bits(n + m));
  std::vector<std::string> labels;
  std::vector<std::uint32_t> keys;
  const std::uint32_t shift = n == 0 ? 0 : X.key(n - 1) + 1;
  for (std::size_t i = 0; i < n; ++i) {
    for (std::size_t j = 0; j < n; ++j)
      if (X.leq(i, j)) up[i].set(j);
    for (std::size_t j = 0; j < m; ++j) up[i].set(n + j);
    labels.push_back(X.label(i));
    keys.push_back(X.key(i));
  }
  for (std::size_t i = 0; i < m; ++i) {
    for (std::size_t j = 0; j < m; ++j)
      if (Y.leq(i, j)) up[n + i].set(n + j);
    labels.push_back(Y.label(i));
    keys.push_back(shift + Y.key(i));
  }
  return Poset::from_up_rows(std::move(up), std::move(labels), std::move(keys));
}

/// Lk(x) = X_{<x} * X_{>x}. Keys of the upper part are shifted by join().
inline Poset link_poset(const Poset& X, std::size_t x) { return join(strict_downset(X, x), strict_upset(X, x)); }

inline std::vector<std::vector<std::size_t>> connected_components(const Poset& X) {
  const std::size_t n = X.size();
  std::vector<int> comp(n, -1);
  std::vector<std::vector<std::size_t>> out;
  for (std::size_t s = 0; s < n; ++s) {
    if (comp[s] >= 0) continue;
    std::vector<std::size_t> stack{s}, members;
    comp[s] = int(out.size());
    while (!stack.empty()) {
      std::size_t v = stack.back();
      stack.pop_back();
      members.push_back(v);
      Bits nb = X.up(v) | X.down(v);
      for (std::size_t w = nb.find_first(); w != Bits::npos; w = nb.find_next(w))
        if (comp[w] < 0) {
          comp[w] = int(out.size());
          stack.push_back(w);
        }
    }
    std::sort(members.begin(), members.end());
    out.push_back(std::move(members));
  }
  return out;
}

// ---------------------------------------------------------------------------
// Chains

/// Node indices in increasing order forming a chain.
inline bool is_chain(const Poset& X, const std::vector<std::size_t>& a) {
  for (std::size_t i = 0; i < a.size(); ++i) {
    if (a[i] >= X.size()) return false;
    if (i > 0 && !X.lt(a[i - 1], a[i])) return false;
  }
  return true;
}

/// Every x comparable to all of a lies in a or above max a.
inline bool is_full_chain(const Poset& X, const std::vector<std::size_t>& a) {
  if (a.empty() || !is_chain(X, a)) throw NotAChain();
  Bits comparable_all(X.size());
  comparable_all.set();
  for (std::size_t v : a) comparable_all &= (X.up(v) | X.down(v));
  const std::size_t top = a.back();
  for (std::size_t x = comparable_all.find_first(); x != Bits::npos; x = comparable_all.find_next(x)) {
    if (std::find(a.begin(), a.end(), x) != a.end()) continue;
    if (!X.leq(top, x)) return false;
  }
  return true;
}

/// b is a-initial: a is a subchain of b and every extra element lies above
/// max a. Both are key lists of chains of one poset, so "above max a" is
/// "after max a" in b.
inline bool is_a_initial(const Simplex& a, const Simplex& b) {
  if (!std::includes(b.begin(), b.end(), a.begin(), a.end())) throw NotSubchain();
  if (a.empty()) return true;
  for (std::size_t i = 0; i < a.size(); ++i)
    if (b[i] != a[i]) return false;
  return true;
}

/// All nonempty chains of X as sorted node-index lists, by length then lexicographically.
inline std::vector<std::vector<std::size_t>> all_chains(const Poset& X, std::size_t cap = Limits{}.simplex_cap) {
  std::vector<std::vector<std::size_t>> out, layer;
  for (std::size_t i = 0; i < X.size(); ++i) layer.push_back({i});
  while (!layer.empty()) {
    if (out.size() + layer.size() > cap) throw CapExceeded("chain count", cap);
    std::vector<std::vector<std::size_t>> next;
    for (const auto& c : layer) {
      Bits above = strict_up_mask(X, c.back());
      for (std::size_t y = above.find_first(); y != Bits::npos; y = above.find_next(y)) {
        auto d = c;
        d.push_back(y);
        next.push_back(std::move(d));
      }
    }
    out.insert(out.end(), layer.begin(), layer.end());
    layer = std::move(next);
  }
  return out;
}

/// X': nonempty chains ordered by inclusion.
inline Poset chain_poset(const Poset& X, std::size_t cap = Limits{}.poset_cap) {
  auto chains = all_chains(X, cap);
  const std::size_t n = chains.size();
  std::vector<Bits> up(n, Bits(n));
  std::vector<std::string> labels(n);
  for (std::size_t i = 0; i < n; ++i) {
    std::string s = "{";
    for (std::size_t k = 0; k < chains[i].size(); ++k) s += (k ? "<" : "") + X.label(chains[i][k]);
    labels[i] = s + "}";
    for (std::size_t j = i; j < n; ++j)
      if (std::includes(chains[j].begin(), chains[j].end(), chains[i].begin(), chains[i].end())) up[i].set(j);
  }
  return Poset::from_up_rows(std::move(up), std::move(labels));
}

// ---------------------------------------------------------------------------
// Maps

/// Order-preserving map between two posets, given node index to node index.
class PosetMap {
public:
  PosetMap(Poset source, Poset target, std::vector<std::size_t> assign)
      : source_(std::move(source)), target_(std::move(target)), assign_(std::move(assign)) {
    if (assign_.size() != source_.size()) throw PreconditionViolated("map must assign every source node");
    for (std::size_t v : assign_)
      if (v >= target_.size()) throw NodeNotFound();
    for (std::size_t i = 0; i < source_.size(); ++i)
      for (std::size_t j = source_.up(i).find_first(); j != Bits::npos; j = source_.up(i).find_next(j))
        if (!target_.leq(assign_[i], assign_[j])) throw PreconditionViolated("map is not order preserving");
  }

  static PosetMap identity(const Poset& X) {
    std::vector<std::size_t> a(X.size());
    for (std::size_t i = 0; i < a.size(); ++i) a[i] = i;
    return PosetMap(X, X, std::move(a));
  }

  const Poset& source() const { return source_; }
  const Poset& target() const { return target_; }
  std::size_t operator()(std::size_t i) const { return assign_.at(i); }
  const std::vector<std::size_t>& assignment() const { return assign_; }

  bool is_identity() const {
    if (!(source_ == target_)) return false;
    for (std::size_t i = 0; i < assign_.size(); ++i)
      if (assign_[i] != i) return false;
    return true;
  }

private:
  Poset source_, target_;
  std::vector<std::size_t> assign_;
};

/// g after f.
inline PosetMap compose(const PosetMap& f, const PosetMap& g) {
  if (!(f.target() == g.source())) throw PreconditionViolated("maps do not compose");
  std::vector<std::size_t> a(f.source().size());
  for (std::size_t i = 0; i < a.size(); ++i) a[i] = g(f(i));
  return PosetMap(f.source(), g.target(), std::move(a));
}

/// f(x) <= g(x) for every x (same source and target).
inline bool pointwise_leq(const PosetMap& f, const PosetMap& g) {
  if (!(f.source() == g.source()) || !(f.target() == g.target())) return false;
  for (std::size_t i = 0; i < f.source().size(); ++i)
    if (!f.target().leq(f(i), g(i))) return false;
  return true;
}

// ---------------------------------------------------------------------------
// Isomorphism

/// Backtracking search for an order isomorphism X -> Y, pruning on
/// up/down degrees. Returns the node assignment.
inline std::optional<std::vector<std::size_t>> poset_isomorphic(const Poset& X, const Poset& Y,
                                                                std::size_t step_cap = 50'000'000) {
  const std::size_t n = X.size();
  if (n != Y.size()) return std::nullopt;
  auto signature = [](const Poset& P, std::size_t i) {
    return std::pair<std::size_t, std::size_t>(P.up(i).count(), P.down(i).count());
  };
  std::vector<std::pair<std::size_t, std::size_t>> sx(n), sy(n);
  for (std::size_t i = 0; i < n; ++i) {
    sx[i] = signature(X, i);
    sy[i] = signature(Y, i);
  }
  {
    auto a = sx, b = sy;
    std::sort(a.begin(), a.end());
    std::sort(b.begin(), b.end());
    if (a != b) return std::nullopt;
  }
  std::vector<std::size_t> assign(n, n);
  std::vector<char> used(n, 0);
  std::size_t steps = 0;
  std::function<bool(std::size_t)> place = [&](std::size_t i) -> bool {
    if (i == n) return true;
    for (std::size_t c = 0; c < n; ++c) {
      if (used[c] || sy[c] != sx[i]) continue;
      if (++steps > step_cap) throw CapExceeded("isomorphism search steps", step_cap);
      bool ok = true;
      for (std::size_t j = 0; j < i && ok; ++j) {
        if (X.leq(j, i) != Y.leq(assign[j], c) || X.leq(i, j) != Y.leq(c, assign[j])) ok = false;
      }
      if (!ok) continue;
      assign[i] = c;
      used[c] = 1;
      if (place(i + 1)) return true;
      used[c] = 0;
    }
    return false;
  };
  if (!place(0)) return std::nullopt;
  return assign;
}

// ---------------------------------------------------------------------------

inline std::vector<std::pair<std::size_t, std::size_t>> cover_relation(const Poset& X) {
  std::vector<std::pair<std::size_t, std::size_t>> out;
  for (std::size_t i = 0; i < X.size(); ++i) {
    Bits above = strict_up_mask(X, i);
    for (std::size_t j = above.find_first(); j != Bits::npos; j = above.find_next(j)) {
      Bits between = above & strict_down_mask(X, j);
      if (between.none()) out.emplace_back(i, j);
    }
  }
  return out;
}

/// {"nodes": [{"index", "key", "label"}], "covers": [[i, j], ...]}
inline nlohmann::ordered_json poset_to_json(const Poset& X) {
  nlohmann::ordered_json j;
  auto nodes = nlohmann::ordered_json::array();
  for (std::size_t i = 0; i < X.size(); ++i)
    nodes.push_back({{"index", i}, {"key", X.key(i)}, {"label", X.label(i)}});
  j["nodes"] = nodes;
  auto covers = nlohmann::ordered_json::array();
  for (auto [a, b] : cover_relation(X)) covers.push_back({a, b});
  j["covers"] = covers;
  return j;
}

}  // namespace quillen
