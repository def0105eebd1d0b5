#pragma once

#include <algorithm>
#include <cstdint>
#include <limits>
#include <optional>
#include <utility>
#include <vector>

#include <boost/multiprecision/cpp_int.hpp>

#include "quillen/error.hpp"

namespace quillen {

using BigInt = boost::multiprecision::cpp_int;
using Rational = boost::multiprecision::cpp_rational;

/// 64-bit integer that throws Overflow instead of wrapping; computations
/// start here and are redone in BigInt when it fires.
struct CheckedInt {
  struct Overflow {};
  std::int64_t v = 0;

  CheckedInt() = default;
  CheckedInt(std::int64_t x) : v(x) {}

  friend CheckedInt operator+(CheckedInt a, CheckedInt b) {
    std::int64_t r;
    if (__builtin_add_overflow(a.v, b.v, &r)) throw Overflow{};
    return r;
  }
  friend CheckedInt operator-(CheckedInt a, CheckedInt b) {
    std::int64_t r;
    if (__builtin_sub_overflow(a.v, b.v, &r)) throw Overflow{};
    return r;
  }
  friend CheckedInt operator*(CheckedInt a, CheckedInt b) {
    std::int64_t r;
    if (__builtin_mul_overflow(a.v, b.v, &r)) throw Overflow{};
    return r;
  }
  friend CheckedInt operator/(CheckedInt a, CheckedInt b) {
    if (b.v == -1 && a.v == std::numeric_limits<std::int64_t>::min()) throw Overflow{};
    return a.v / b.v;
  }
  friend CheckedInt operator%(CheckedInt a, CheckedInt b) {
    if (b.v == -1) return 0;
    return a.v % b.v;
  }
  CheckedInt operator-() const { return CheckedInt(0) - *this; }
  CheckedInt& operator+=(CheckedInt b) { return *this = *this + b; }
  CheckedInt& operator-=(CheckedInt b) { return *this = *this - b; }
  friend bool operator==(CheckedInt a, CheckedInt b) { return a.v == b.v; }
  friend auto operator<=>(CheckedInt a, CheckedInt b) { return a.v <=> b.v; }
};

inline BigInt to_big(const CheckedInt& x) { return BigInt(x.v); }
inline BigInt to_big(const BigInt& x) { return x; }

template <class T>
T abs_value(const T& x) {
  return x < T(0) ? T(0) - x : x;
}

/// Sparse column: (row, value) sorted by row, no zeros.
template <class T>
using SparseVec = std::vector<std::pair<std::uint32_t, T>>;

/// a - f * b.
template <class T>
SparseVec<T> axpy_sub(const SparseVec<T>& a, const T& f, const SparseVec<T>& b) {
  SparseVec<T> out;
  out.reserve(a.size() + b.size());
  std::size_t i = 0, j = 0;
  while (i < a.size() || j < b.size()) {
    if (j == b.size() || (i < a.size() && a[i].first < b[j].first)) {
      out.push_back(a[i++]);
    } else if (i == a.size() || b[j].first < a[i].first) {
      out.emplace_back(b[j].first, T(0) - f * b[j].second);
      ++j;
    } else {
      T v = a[i].second - f * b[j].second;
      if (!(v == T(0))) out.emplace_back(a[i].first, v);
      ++i;
      ++j;
    }
  }
  return out;
}

/// s * a + t * b.
template <class T>
SparseVec<T> lin_comb(const T& s, const SparseVec<T>& a, const T& t, const SparseVec<T>& b) {
  SparseVec<T> out;
  std::size_t i = 0, j = 0;
  while (i < a.size() || j < b.size()) {
    std::uint32_t r;
    T v(0);
    if (j == b.size() || (i < a.size() && a[i].first < b[j].first)) {
      r = a[i].first;
      v = s * a[i].second;
      ++i;
    } else if (i == a.size() || b[j].first < a[i].first) {
      r = b[j].first;
      v = t * b[j].second;
      ++j;
    } else {
      r = a[i].first;
      v = s * a[i].second + t * b[j].second;
      ++i;
      ++j;
    }
    if (!(v == T(0))) out.emplace_back(r, v);
  }
  return out;
}

template <class T>
const T* entry(const SparseVec<T>& c, std::uint32_t row) {
  auto it = std::lower_bound(c.begin(), c.end(), row, [](const auto& e, std::uint32_t r) { return e.first < r; });
  if (it == c.end() || it->first != row) return nullptr;
  return &it->second;
}

template <class T, class U>
SparseVec<T> convert(const SparseVec<U>& c) {
  SparseVec<T> out;
  out.reserve(c.size());
  for (const auto& [r, v] : c) out.emplace_back(r, T(v));
  return out;
}

// ---------------------------------------------------------------------------
// Rank and elementary divisors

/// Result of reducing an integer matrix: its rank and its elementary
/// divisors greater than one.
struct RankInfo {
  std::size_t rank = 0;
  std::vector<BigInt> torsion;
};

namespace detail {

/// Eliminates with +-1 pivots (Markowitz-style choice of the sparsest row)
/// using unimodular column operations; returns the number of pivots and
/// leaves the unreduced columns in `cols`.
template <class T>
std::size_t unit_pivot_eliminate(std::vector<SparseVec<T>>& cols, std::size_t nrows) {
  std::vector<std::vector<std::uint32_t>> row_cols(nrows);
  for (std::uint32_t c = 0; c < cols.size(); ++c)
    for (const auto& e : cols[c]) row_cols[e.first].push_back(c);
  std::vector<char> alive(cols.size(), 1);
  std::vector<std::uint32_t> order(cols.size());
  for (std::uint32_t c = 0; c < order.size(); ++c) order[c] = c;
  std::stable_sort(order.begin(), order.end(),
                   [&](std::uint32_t a, std::uint32_t b) { return cols[a].size() < cols[b].size(); });
  std::size_t pivots = 0;
  bool progress = true;
  while (progress) {
    progress = false;
    for (std::uint32_t c : order) {
      if (!alive[c] || cols[c].empty()) continue;
      std::int64_t best_row = -1;
      std::size_t best_cost = std::numeric_limits<std::size_t>::max();
      for (const auto& [r, v] : cols[c]) {
        if (!(v == T(1) || v == T(-1))) continue;
        if (row_cols[r].size() < best_cost) {
          best_cost = row_cols[r].size();
          best_row = r;
        }
      }
      if (best_row < 0) continue;
      const std::uint32_t r = std::uint32_t(best_row);
      const T pv = *entry(cols[c], r);
      auto others = std::move(row_cols[r]);
      row_cols[r].clear();
      std::sort(others.begin(), others.end());
      others.erase(std::unique(others.begin(), others.end()), others.end());
      for (std::uint32_t c2 : others) {
        if (c2 == c || !alive[c2]) continue;
        const T* v2 = entry(cols[c2], r);
        if (!v2) continue;
        const T f = *v2 * pv;  // pv is its own inverse
        SparseVec<T> next = axpy_sub(cols[c2], f, cols[c]);
        // record rows that are new to c2
        std::size_t i = 0;
        for (const auto& e : next) {
          while (i < cols[c2].size() && cols[c2][i].first < e.first) ++i;
          if (i == cols[c2].size() || cols[c2][i].first != e.first) row_cols[e.first].push_back(c2);
        }
        cols[c2] = std::move(next);
      }
      alive[c] = 0;
      cols[c].clear();
      ++pivots;
      progress = true;
    }
  }
  std::vector<SparseVec<T>> rest;
  for (std::uint32_t c = 0; c < cols.size(); ++c)
    if (alive[c] && !cols[c].empty()) rest.push_back(std::move(cols[c]));
  cols = std::move(rest);
  return pivots;
}

/// Diagonalizes a dense integer matrix by row/column operations with
/// smallest-pivot selection; returns the nonzero diagonal entries.
inline std::vector<BigInt> dense_diagonalize(std::vector<std::vector<BigInt>> a) {
  std::vector<BigInt> diag;
  const std::size_t m = a.size();
  const std::size_t n = m ? a[0].size() : 0;
  std::size_t t = 0;
  while (t < m && t < n) {
    // smallest nonzero |entry| in the trailing block
    std::size_t pi = m, pj = n;
    BigInt best;
    for (std::size_t i = t; i < m; ++i)
      for (std::size_t j = t; j < n; ++j)
        if (a[i][j] != 0 && (pi == m || abs(a[i][j]) < best)) {
          best = abs(a[i][j]);
          pi = i;
          pj = j;
        }
    if (pi == m) break;
    std::swap(a[t], a[pi]);
    for (auto& row : a) std::swap(row[t], row[pj]);
    bool clean = false;
    while (!clean) {
      clean = true;
      for (std::size_t i = t + 1; i < m; ++i) {
        if (a[i][t] == 0) continue;
        BigInt q = a[i][t] / a[t][t];
        for (std::size_t j = t; j < n; ++j) a[i][j] -= q * a[t][j];
        if (a[i][t] != 0) {
          std::swap(a[t], a[i]);
          clean = false;
        }
      }
      for (std::size_t j = t + 1; j < n; ++j) {
        if (a[t][j] == 0) continue;
        BigInt q = a[t][j] / a[t][t];
        for (std::size_t i = t; i < m; ++i) a[i][j] -= q * a[i][t];
        if (a[t][j] != 0) {
          for (auto& row : a) std::swap(row[t], row[j]);
          clean = false;
        }
      }
    }
    diag.push_back(abs(a[t][t]));
    ++t;
  }
  return diag;
}

/// Turns a diagonal into invariant factors d_1 | d_2 | ... by gcd/lcm swaps.
inline std::vector<BigInt> invariant_factors(std::vector<BigInt> d) {
  for (std::size_t i = 0; i < d.size(); ++i)
    for (std::size_t j = i + 1; j < d.size(); ++j) {
      BigInt g = gcd(d[i], d[j]);
      if (g == d[i]) continue;
      BigInt l = d[i] / g * d[j];
      d[i] = g;
      d[j] = l;
    }
  return d;
}

inline std::size_t dense_rational_rank(std::vector<std::vector<Rational>> a) {
  const std::size_t m = a.size();
  const std::size_t n = m ? a[0].size() : 0;
  std::size_t rank = 0;
  for (std::size_t j = 0; j < n && rank < m; ++j) {
    std::size_t p = rank;
    while (p < m && a[p][j] == 0) ++p;
    if (p == m) continue;
    std::swap(a[rank], a[p]);
    for (std::size_t i = rank + 1; i < m; ++i) {
      if (a[i][j] == 0) continue;
      Rational f = a[i][j] / a[rank][j];
      for (std::size_t k = j; k < n; ++k) a[i][k] -= f * a[rank][k];
    }
    ++rank;
  }
  return rank;
}

template <class T>
RankInfo rank_info_impl(std::vector<SparseVec<T>> cols, std::size_t nrows, bool integral) {
  RankInfo out;
  out.rank = unit_pivot_eliminate(cols, nrows);
  if (cols.empty()) return out;
  // compress the remaining rows into a dense core
  std::vector<std::uint32_t> rows;
  for (const auto& c : cols)
    for (const auto& e : c) rows.push_back(e.first);
  std::sort(rows.begin(), rows.end());
  rows.erase(std::unique(rows.begin(), rows.end()), rows.end());
  auto row_pos = [&](std::uint32_t r) { return std::size_t(std::lower_bound(rows.begin(), rows.end(), r) - rows.begin()); };
  if (integral) {
    std::vector<std::vector<BigInt>> dense(rows.size(), std::vector<BigInt>(cols.size()));
    for (std::size_t j = 0; j < cols.size(); ++j)
      for (const auto& [r, v] : cols[j]) dense[row_pos(r)][j] = to_big(v);
    auto diag = invariant_factors(dense_diagonalize(std::move(dense)));
    out.rank += diag.size();
    for (auto& d : diag)
      if (d > 1) out.torsion.push_back(d);
  } else {
    std::vector<std::vector<Rational>> dense(rows.size(), std::vector<Rational>(cols.size()));
    for (std::size_t j = 0; j < cols.size(); ++j)
      for (const auto& [r, v] : cols[j]) dense[row_pos(r)][j] = Rational(to_big(v));
    out.rank += dense_rational_rank(std::move(dense));
  }
  return out;
}

}  // namespace detail

/// Rank (and, when `integral`, elementary divisors > 1) of an integer matrix
/// given by sparse columns. Runs in checked 64-bit arithmetic and repeats in
/// arbitrary precision on overflow.
inline RankInfo rank_info(const std::vector<SparseVec<std::int64_t>>& cols, std::size_t nrows, bool integral) {
  try {
    std::vector<SparseVec<CheckedInt>> c;
    c.reserve(cols.size());
    for (const auto& col : cols) c.push_back(convert<CheckedInt>(col));
    return detail::rank_info_impl(std::move(c), nrows, integral);
  } catch (const CheckedInt::Overflow&) {
    std::vector<SparseVec<BigInt>> c;
    c.reserve(cols.size());
    for (const auto& col : cols) c.push_back(convert<BigInt>(col));
    return detail::rank_info_impl(std::move(c), nrows, integral);
  }
}

// ---------------------------------------------------------------------------
// Column echelon form with transform: A V = H, V unimodular (over Z) or
// invertible (over Q). Nonzero columns of H have distinct lowest rows.

struct IntegerRing {
  using T = BigInt;
  static bool divides(const T& a, const T& b) { return b % a == 0; }
  static T quot(const T& b, const T& a) { return b / a; }
  /// g = s a + t b with g = gcd(a, b).
  static void gcdext(const T& a, const T& b, T& g, T& s, T& t) {
    T r0 = a, r1 = b, s0 = 1, s1 = 0, t0 = 0, t1 = 1;
    while (r1 != 0) {
      T q = r0 / r1;
      T r2 = r0 - q * r1;
      r0 = r1;
      r1 = r2;
      T s2 = s0 - q * s1;
      s0 = s1;
      s1 = s2;
      T t2 = t0 - q * t1;
      t0 = t1;
      t1 = t2;
    }
    g = r0;
    s = s0;
    t = t0;
  }
};

struct RationalField {
  using T = Rational;
  static bool divides(const T& a, const T&) { return a != 0; }
  static T quot(const T& b, const T& a) { return b / a; }
  static void gcdext(const T& a, const T&, T& g, T& s, T& t) {
    g = a;
    s = 1;
    t = 0;
  }
};

template <class Ring>
class ColumnEchelon {
public:
  using T = typename Ring::T;

  ColumnEchelon(const std::vector<SparseVec<std::int64_t>>& cols, std::size_t nrows) : nrows_(nrows) {
    const std::size_t n = cols.size();
    H_.resize(n);
    V_.resize(n);
    pivot_of_row_.assign(nrows, -1);
    for (std::size_t j = 0; j < n; ++j) {
      H_[j] = convert<T>(cols[j]);
      V_[j] = {{std::uint32_t(j), T(1)}};
      reduce(j);
    }
  }

  /// Solves A x = b; returns x when solvable over the ring.
  std::optional<SparseVec<T>> solve(SparseVec<T> b) const {
    SparseVec<T> x;
    while (!b.empty()) {
      const auto [r, v] = b.back();
      const long p = pivot_of_row_[r];
      if (p < 0) return std::nullopt;
      const T& pv = H_[p].back().second;
      if (!Ring::divides(pv, v)) return std::nullopt;
      T y = Ring::quot(v, pv);
      b = axpy_sub(b, y, H_[p]);
      x = lin_comb(T(1), x, y, V_[p]);
    }
    return x;
  }

  /// Columns of V spanning the kernel of A (a basis over the ring).
  std::vector<SparseVec<T>> kernel_basis() const {
    std::vector<SparseVec<T>> out;
    for (std::size_t j = 0; j < H_.size(); ++j)
      if (H_[j].empty()) out.push_back(V_[j]);
    return out;
  }

  std::size_t rank() const {
    std::size_t r = 0;
    for (const auto& h : H_) r += !h.empty();
    return r;
  }

private:
  void reduce(std::size_t j) {
    while (!H_[j].empty()) {
      const auto [r, v] = H_[j].back();
      long p = pivot_of_row_[r];
      if (p < 0) {
        pivot_of_row_[r] = long(j);
        return;
      }
      const T pv = H_[p].back().second;
      if (Ring::divides(pv, v)) {
        T q = Ring::quot(v, pv);
        H_[j] = axpy_sub(H_[j], q, H_[p]);
        V_[j] = axpy_sub(V_[j], q, V_[p]);
        continue;
      }
      // gcd step: the pivot becomes s p + t j, column j the cofactor combination.
      T g, s, t;
      Ring::gcdext(pv, v, g, s, t);
      T a = Ring::quot(pv, g), b = Ring::quot(v, g);
      auto Hp = lin_comb(s, H_[p], t, H_[j]);
      auto Vp = lin_comb(s, V_[p], t, V_[j]);
      auto Hj = lin_comb(a, H_[j], T(0) - b, H_[p]);
      auto Vj = lin_comb(a, V_[j], T(0) - b, V_[p]);
      H_[p] = std::move(Hp);
      V_[p] = std::move(Vp);
      H_[j] = std::move(Hj);
      V_[j] = std::move(Vj);
    }
  }

  std::size_t nrows_;
  std::vector<SparseVec<T>> H_, V_;
  std::vector<long> pivot_of_row_;
};

}  // namespace quillen
