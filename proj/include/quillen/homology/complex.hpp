#pragma once

#include <algorithm>
#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include <nlohmann/json.hpp>

#include "quillen/config.hpp"
#include "quillen/homology/linalg.hpp"
#include "quillen/poset/poset.hpp"

namespace quillen {

enum class Ring { Z, Q };

inline const char* to_string(Ring r) { return r == Ring::Z ? "Z" : "Q"; }

/// Augmented chain complex of the order complex of a poset.
///
/// Degree d holds the chains with d+1 nodes, written in keys and sorted
/// lexicographically; degree -1 holds the empty chain.
class ChainComplex {
public:
  static ChainComplex build(const Poset& X, Ring ring = Ring::Z, std::size_t cap = Limits{}.simplex_cap) {
    ChainComplex C;
    C.poset_ = X;
    C.ring_ = ring;
    C.flat_.assign(1, {});  // degree -1: one empty simplex
    C.counts_.assign(1, 1);
    std::size_t total = 1;
    std::vector<std::uint32_t> stack;
    // DFS with children in increasing index order yields lexicographic order per length.
    auto visit = [&](auto&& self, std::size_t v) -> void {
      stack.push_back(X.key(v));
      const std::size_t d = stack.size();
      if (C.flat_.size() <= d) {
        C.flat_.emplace_back();
        C.counts_.push_back(0);
      }
      C.flat_[d].insert(C.flat_[d].end(), stack.begin(), stack.end());
      ++C.counts_[d];
      if (++total > cap) throw CapExceeded("simplex count", cap);
      Bits up = strict_up_mask(X, v);
      for (std::size_t w = up.find_first(); w != Bits::npos; w = up.find_next(w)) self(self, w);
      stack.pop_back();
    };
    for (std::size_t v = 0; v < X.size(); ++v) visit(visit, v);
    return C;
  }

  const Poset& poset() const { return poset_; }
  Ring ring() const { return ring_; }
  /// Largest degree with a simplex (-1 for the empty poset).
  int top_degree() const { return int(counts_.size()) - 2; }
  std::size_t count(int d) const {
    if (d < -1 || d > top_degree()) return 0;
    return counts_[d + 1];
  }
  std::size_t total() const {
    std::size_t t = 0;
    for (auto c : counts_) t += c;
    return t;
  }
  std::vector<std::size_t> counts() const { return counts_; }

  Simplex simplex(int d, std::size_t i) const {
    const auto* p = flat_[d + 1].data() + i * std::size_t(d + 1);
    return Simplex(p, p + d + 1);
  }

  std::optional<std::size_t> index_of(const Simplex& s) const {
    const int d = int(s.size()) - 1;
    if (d > top_degree()) return std::nullopt;
    if (d < 0) return 0;
    const std::size_t w = s.size();
    const auto& f = flat_[d + 1];
    std::size_t lo = 0, hi = counts_[d + 1];
    while (lo < hi) {
      std::size_t mid = (lo + hi) / 2;
      if (std::lexicographical_compare(f.begin() + mid * w, f.begin() + (mid + 1) * w, s.begin(), s.end()))
        lo = mid + 1;
      else
        hi = mid;
    }
    if (lo < counts_[d + 1] && std::equal(s.begin(), s.end(), f.begin() + lo * w)) return lo;
    return std::nullopt;
  }

  /// Columns of the boundary map C_d -> C_{d-1}; face i has sign (-1)^i.
  /// Degree -1 gives one zero column.
  std::vector<SparseVec<std::int64_t>> boundary(int d) const {
    std::vector<SparseVec<std::int64_t>> cols(count(d));
    if (d < 0) return cols;  // the empty chain has zero boundary
    Simplex face(d);
    for (std::size_t j = 0; j < cols.size(); ++j) {
      if (d == 0) {
        cols[j] = {{0u, 1}};
        continue;
      }
      Simplex s = simplex(d, j);
      auto& col = cols[j];
      for (int i = 0; i <= d; ++i) {
        std::copy(s.begin(), s.begin() + i, face.begin());
        std::copy(s.begin() + i + 1, s.end(), face.begin() + i);
        auto r = index_of(face);
        if (!r) throw InternalError("face missing from complex");
        col.emplace_back(std::uint32_t(*r), i % 2 ? -1 : 1);
      }
      std::sort(col.begin(), col.end());
    }
    return cols;
  }

private:
  Poset poset_;
  Ring ring_ = Ring::Z;
  std::vector<std::vector<std::uint32_t>> flat_;  // index d+1
  std::vector<std::size_t> counts_;
};

inline ChainComplex chain_complex(const Poset& X, Ring ring = Ring::Z, std::size_t cap = Limits{}.simplex_cap) {
  return ChainComplex::build(X, ring, cap);
}

// ---------------------------------------------------------------------------

struct DegreeHomology {
  int degree = 0;
  std::uint64_t betti = 0;
  std::vector<BigInt> torsion;  // elementary divisors > 1, ascending
};

/// Reduced homology, degrees -1 .. top degree of the complex.
struct HomologyResult {
  Ring ring = Ring::Z;
  std::vector<std::size_t> simplex_counts;  // index d+1
  std::vector<DegreeHomology> degrees;      // index d+1

  std::uint64_t betti(int d) const {
    return d + 1 >= 0 && std::size_t(d + 1) < degrees.size() ? degrees[d + 1].betti : 0;
  }
  std::vector<BigInt> torsion(int d) const {
    return d + 1 >= 0 && std::size_t(d + 1) < degrees.size() ? degrees[d + 1].torsion : std::vector<BigInt>{};
  }
  bool is_zero() const {
    for (const auto& h : degrees)
      if (h.betti || !h.torsion.empty()) return false;
    return true;
  }
  /// Highest degree with nonzero homology.
  std::optional<int> top_nonzero() const {
    for (std::size_t i = degrees.size(); i-- > 0;)
      if (degrees[i].betti || !degrees[i].torsion.empty()) return degrees[i].degree;
    return std::nullopt;
  }
  std::int64_t euler_from_betti() const {
    std::int64_t e = 0;
    for (const auto& h : degrees) e += (h.degree % 2 ? -1 : 1) * std::int64_t(h.betti);
    return e;
  }
  std::int64_t euler_from_counts() const {
    std::int64_t e = 0;
    for (std::size_t i = 0; i < simplex_counts.size(); ++i) e += (int(i) % 2 ? 1 : -1) * std::int64_t(simplex_counts[i]);
    return e;
  }
};

/// Same Betti numbers and torsion in every degree (trailing zero degrees ignored).
inline bool same_homology(const HomologyResult& a, const HomologyResult& b) {
  const std::size_t n = std::max(a.degrees.size(), b.degrees.size());
  for (std::size_t i = 0; i < n; ++i) {
    const int d = int(i) - 1;
    if (a.betti(d) != b.betti(d) || a.torsion(d) != b.torsion(d)) return false;
  }
  return true;
}

inline HomologyResult homology(const ChainComplex& C) {
  HomologyResult H;
  H.ring = C.ring();
  H.simplex_counts = C.counts();
  const int top = C.top_degree();
  // rank_of[d+1] = rank of the boundary C_d -> C_{d-1}; torsion of degree d-1 comes from it
  std::vector<RankInfo> info(top + 2);
  for (int d = 0; d <= top; ++d) info[d + 1] = rank_info(C.boundary(d), C.count(d - 1), C.ring() == Ring::Z);
  for (int d = -1; d <= top; ++d) {
    DegreeHomology h;
    h.degree = d;
    const std::size_t out_rank = d >= 0 ? info[d + 1].rank : 0;
    const std::size_t in_rank = d + 1 <= top ? info[d + 2].rank : 0;
    h.betti = C.count(d) - out_rank - in_rank;
    if (d + 1 <= top) {
      h.torsion = info[d + 2].torsion;
      std::sort(h.torsion.begin(), h.torsion.end());
    }
    H.degrees.push_back(std::move(h));
  }
  return H;
}

inline HomologyResult homology(const Poset& X, Ring ring = Ring::Z, std::size_t cap = Limits{}.simplex_cap) {
  return homology(chain_complex(X, ring, cap));
}

inline nlohmann::ordered_json big_to_json(const BigInt& v) {
  if (v <= BigInt(std::numeric_limits<std::int64_t>::max()) && v >= BigInt(std::numeric_limits<std::int64_t>::min()))
    return v.convert_to<std::int64_t>();
  return v.str();
}

inline nlohmann::ordered_json homology_to_json(const HomologyResult& H) {
  auto arr = nlohmann::ordered_json::array();
  for (const auto& h : H.degrees) {
    nlohmann::ordered_json t = nlohmann::ordered_json::array();
    for (const auto& v : h.torsion) t.push_back(big_to_json(v));
    arr.push_back({{"degree", h.degree}, {"betti", h.betti}, {"torsion", t}});
  }
  return arr;
}

}  // namespace quillen
