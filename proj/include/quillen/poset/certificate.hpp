#pragma once

#include <optional>
#include <string>
#include <vector>

#include "quillen/poset/poset.hpp"

namespace quillen {

enum class CertificateKind { HasMinimum, HasMaximum, ConicalZigzag, Dismantling };

inline const char* to_string(CertificateKind k) {
  switch (k) {
    case CertificateKind::HasMinimum: return "HasMinimum";
    case CertificateKind::HasMaximum: return "HasMaximum";
    case CertificateKind::ConicalZigzag: return "ConicalZigzag";
    case CertificateKind::Dismantling: return "Dismantling";
  }
  return "?";
}

/// One removal in a dismantling: `node` (an index of the original poset) is
/// dropped because, among the nodes still present, its strict upset
/// (`upward`) or strict downset has a least / greatest element `witness`.
/// When `witness` is empty the up/down-set was certified recursively by
/// `sub`.
struct DismantleStep {
  std::size_t node = 0;
  bool upward = true;
  std::optional<std::size_t> witness;
  std::vector<DismantleStep> sub;  // recursive certificate of the up/down-set
};

/// Replayable evidence that a poset is contractible.
///
/// HasMinimum / HasMaximum: `witness` is the extremal node.
/// ConicalZigzag: `map` is f with x <= f(x) >= witness for all x, f order
/// preserving (X -> X), so id <= f >= const.
/// Dismantling: `steps` remove nodes one at a time, each removal a homotopy
/// equivalence, leaving the single node `witness`.
struct ContractibilityCertificate {
  CertificateKind kind = CertificateKind::HasMinimum;
  std::size_t witness = 0;
  std::vector<std::size_t> map;
  std::vector<DismantleStep> steps;
};

namespace detail {

inline std::optional<std::size_t> least_in(const Poset& X, const Bits& set) {
  std::size_t u = set.find_first();
  if (u == Bits::npos) return std::nullopt;
  if (set.is_subset_of(X.up(u))) return u;
  return std::nullopt;
}

inline std::optional<std::size_t> greatest_in(const Poset& X, const Bits& set) {
  std::size_t last = Bits::npos;
  for (std::size_t i = set.find_first(); i != Bits::npos; i = set.find_next(i)) last = i;
  if (last == Bits::npos) return std::nullopt;
  if (set.is_subset_of(X.down(last))) return last;
  return std::nullopt;
}

std::optional<std::vector<DismantleStep>> dismantle(const Poset& X, Bits alive, int depth);

/// Contractibility of the sub-poset `set`: min, max, or recursive dismantling.
inline std::optional<std::vector<DismantleStep>> certify_subset(const Poset& X, const Bits& set, int depth,
                                                                std::optional<std::size_t>& extremal) {
  extremal.reset();
  if (set.none()) return std::nullopt;
  if (auto u = least_in(X, set)) {
    extremal = u;
    return std::vector<DismantleStep>{};
  }
  if (auto u = greatest_in(X, set)) {
    extremal = u;
    return std::vector<DismantleStep>{};
  }
  if (depth <= 0) return std::nullopt;
  return dismantle(X, set, depth - 1);
}

/// Greedy removal of points whose (alive) strict upset or downset is
/// contractible, until one point is left.
inline std::optional<std::vector<DismantleStep>> dismantle(const Poset& X, Bits alive, int depth) {
  std::vector<DismantleStep> steps;
  while (alive.count() > 1) {
    bool removed = false;
    // beat points first, cheapest
    for (std::size_t x = alive.find_first(); x != Bits::npos && !removed; x = alive.find_next(x)) {
      Bits up = X.up(x) & alive;
      up.reset(x);
      if (auto u = least_in(X, up)) {
        steps.push_back({x, true, u, {}});
        alive.reset(x);
        removed = true;
        break;
      }
      Bits down = X.down(x) & alive;
      down.reset(x);
      if (auto u = greatest_in(X, down)) {
        steps.push_back({x, false, u, {}});
        alive.reset(x);
        removed = true;
        break;
      }
    }
    if (removed) continue;
    if (depth <= 0) return std::nullopt;
    for (std::size_t x = alive.find_first(); x != Bits::npos && !removed; x = alive.find_next(x)) {
      for (bool upward : {true, false}) {
        Bits part = (upward ? X.up(x) : X.down(x)) & alive;
        part.reset(x);
        std::optional<std::size_t> ext;
        auto sub = certify_subset(X, part, depth, ext);
        if (sub) {
          steps.push_back({x, upward, ext, std::move(*sub)});
          alive.reset(x);
          removed = true;
          break;
        }
      }
    }
    if (!removed) return std::nullopt;
  }
  return steps;
}

inline bool replay_dismantle(const Poset& X, Bits alive, const std::vector<DismantleStep>& steps,
                             std::size_t* last = nullptr);

inline bool replay_subset(const Poset& X, const Bits& set, const DismantleStep& s) {
  if (s.sub.empty()) {
    if (!s.witness || !set.test(*s.witness)) return false;
    std::size_t w = *s.witness;
    return set.is_subset_of(X.up(w)) || set.is_subset_of(X.down(w));
  }
  return replay_dismantle(X, set, s.sub);
}

inline bool replay_dismantle(const Poset& X, Bits alive, const std::vector<DismantleStep>& steps, std::size_t* last) {
  for (const auto& s : steps) {
    if (s.node >= X.size() || !alive.test(s.node)) return false;
    Bits part = (s.upward ? X.up(s.node) : X.down(s.node)) & alive;
    part.reset(s.node);
    if (!replay_subset(X, part, s)) return false;
    alive.reset(s.node);
  }
  if (alive.count() != 1) return false;
  if (last) *last = alive.find_first();
  return true;
}

}  // namespace detail

/// Checks a certificate against X node by node.
inline bool replay(const ContractibilityCertificate& c, const Poset& X) {
  if (X.empty()) return false;
  switch (c.kind) {
    case CertificateKind::HasMinimum: return c.witness < X.size() && X.up(c.witness).count() == X.size();
    case CertificateKind::HasMaximum: return c.witness < X.size() && X.down(c.witness).count() == X.size();
    case CertificateKind::ConicalZigzag: {
      if (c.map.size() != X.size() || c.witness >= X.size()) return false;
      for (std::size_t i = 0; i < X.size(); ++i) {
        if (c.map[i] >= X.size() || !X.leq(i, c.map[i]) || !X.leq(c.witness, c.map[i])) return false;
        for (std::size_t j = X.up(i).find_first(); j != Bits::npos; j = X.up(i).find_next(j))
          if (!X.leq(c.map[i], c.map[j])) return false;
      }
      return true;
    }
    case CertificateKind::Dismantling: {
      Bits all(X.size());
      all.set();
      std::size_t last = 0;
      return detail::replay_dismantle(X, all, c.steps, &last) && last == c.witness;
    }
  }
  return false;
}

/// Minimum, maximum, then dismantling (with one level of recursion).
/// An empty result means no certificate was found, not that X is not
/// contractible.
inline std::optional<ContractibilityCertificate> contractibility_certificate(const Poset& X, int depth = 1) {
  if (X.empty()) return std::nullopt;
  if (auto m = X.minimum()) return ContractibilityCertificate{CertificateKind::HasMinimum, *m, {}, {}};
  if (auto m = X.maximum()) return ContractibilityCertificate{CertificateKind::HasMaximum, *m, {}, {}};
  Bits all(X.size());
  all.set();
  if (auto steps = detail::dismantle(X, all, depth)) {
    ContractibilityCertificate c{CertificateKind::Dismantling, 0, {}, std::move(*steps)};
    Bits alive = all;
    for (const auto& s : c.steps) alive.reset(s.node);
    c.witness = alive.find_first();
    return c;
  }
  return std::nullopt;
}

// ---------------------------------------------------------------------------

enum class FiberDirection { Down, Up };

struct FiberLemmaResult {
  bool certified = false;  // CertifiedEquivalence when true, Inconclusive otherwise
  std::vector<std::size_t> failing;  // target nodes whose fiber did not certify
  std::vector<std::optional<ContractibilityCertificate>> fibers;
};

/// Down: fibers f^-1(Y_{<=y}); Up: fibers f^-1(Y_{>=y}). All fibers
/// contractible makes f a homotopy equivalence.
inline FiberLemmaResult fiber_lemma_check(const PosetMap& f, FiberDirection dir = FiberDirection::Down) {
  FiberLemmaResult r;
  const Poset& Y = f.target();
  const Poset& X = f.source();
  for (std::size_t y = 0; y < Y.size(); ++y) {
    const Bits& cone = dir == FiberDirection::Down ? Y.down(y) : Y.up(y);
    std::vector<std::size_t> nodes;
    for (std::size_t x = 0; x < X.size(); ++x)
      if (cone.test(f(x))) nodes.push_back(x);
    Poset fiber = X.induced(nodes);
    auto cert = contractibility_certificate(fiber);
    if (!cert) r.failing.push_back(y);
    r.fibers.push_back(std::move(cert));
  }
  r.certified = r.failing.empty();
  return r;
}

}  // namespace quillen
