#pragma once

#include <map>
#include <optional>
#include <random>
#include <string>
#include <utility>
#include <vector>

#include "quillen/homology/complex.hpp"
#include "quillen/poset/poset.hpp"

namespace quillen {

/// Finite linear combination of chains of one degree, written in keys.
/// Zero coefficients are never stored.
template <class T>
class BasicChain {
public:
  explicit BasicChain(int degree = -1) : degree_(degree) {}

  static BasicChain basis(const Simplex& s, const T& c = T(1)) {
    BasicChain out(int(s.size()) - 1);
    out.add(s, c);
    return out;
  }

  int degree() const { return degree_; }
  const std::map<Simplex, T>& terms() const { return terms_; }
  std::size_t size() const { return terms_.size(); }
  bool is_zero() const { return terms_.empty(); }

  void add(const Simplex& s, const T& c) {
    if (int(s.size()) - 1 != degree_) throw DegreeMismatch(s.size() - 1, std::size_t(degree_));
    if (c == T(0)) return;
    auto [it, fresh] = terms_.emplace(s, c);
    if (!fresh) {
      it->second += c;
      if (it->second == T(0)) terms_.erase(it);
    }
  }

  T coefficient(const Simplex& s) const {
    auto it = terms_.find(s);
    return it == terms_.end() ? T(0) : it->second;
  }

  BasicChain& operator+=(const BasicChain& o) {
    require_degree(o);
    for (const auto& [s, c] : o.terms_) add(s, c);
    return *this;
  }
  BasicChain& operator-=(const BasicChain& o) {
    require_degree(o);
    for (const auto& [s, c] : o.terms_) add(s, T(0) - c);
    return *this;
  }
  friend BasicChain operator+(BasicChain a, const BasicChain& b) { return a += b; }
  friend BasicChain operator-(BasicChain a, const BasicChain& b) { return a -= b; }
  BasicChain operator-() const { return scaled(T(-1)); }
  BasicChain scaled(const T& f) const {
    BasicChain out(degree_);
    if (f == T(0)) return out;
    for (const auto& [s, c] : terms_) out.terms_.emplace(s, c * f);
    return out;
  }
  friend BasicChain operator*(const T& f, const BasicChain& a) { return a.scaled(f); }

  friend bool operator==(const BasicChain& a, const BasicChain& b) {
    return a.degree_ == b.degree_ && a.terms_ == b.terms_;
  }

  std::string to_string() const {
    if (terms_.empty()) return "0";
    std::string out;
    for (const auto& [s, c] : terms_) {
      std::string cs = c.str();
      out += out.empty() ? "" : " + ";
      out += cs + "*(";
      for (std::size_t i = 0; i < s.size(); ++i) out += (i ? "<" : "") + std::to_string(s[i]);
      out += ")";
    }
    return out;
  }

private:
  void require_degree(const BasicChain& o) const {
    if (o.degree_ != degree_) throw DegreeMismatch(std::size_t(o.degree_ + 1), std::size_t(degree_ + 1));
  }

  int degree_;
  std::map<Simplex, T> terms_;
};

using IntChain = BasicChain<BigInt>;
using RatChain = BasicChain<Rational>;

inline RatChain to_rational(const IntChain& c) {
  RatChain out(c.degree());
  for (const auto& [s, v] : c.terms()) out.add(s, Rational(v));
  return out;
}

template <class T>
BasicChain<T> boundary(const BasicChain<T>& c) {
  BasicChain<T> out(c.degree() - 1);
  if (c.degree() < 0) return out;
  Simplex face;
  for (const auto& [s, v] : c.terms()) {
    for (std::size_t i = 0; i < s.size(); ++i) {
      face.assign(s.begin(), s.end());
      face.erase(face.begin() + long(i));
      out.add(face, i % 2 ? T(0) - v : v);
    }
  }
  return out;
}

template <class T>
bool is_cycle(const BasicChain<T>& c) {
  return boundary(c).is_zero();
}

namespace detail {
template <class T>
struct RingFor;
template <>
struct RingFor<BigInt> {
  using type = IntegerRing;
};
template <>
struct RingFor<Rational> {
  using type = RationalField;
};
}  // namespace detail

/// Solves boundary(x) = c for chains of degree d of one complex.
template <class T>
class BoundarySolver {
public:
  using Ring = typename detail::RingFor<T>::type;

  BoundarySolver(const ChainComplex& C, int d) : C_(C), d_(d), echelon_(C.boundary(d + 1), C.count(d)) {}

  int degree() const { return d_; }

  /// A witness x with boundary(x) = c, or nothing when c is not a boundary.
  std::optional<BasicChain<T>> solve(const BasicChain<T>& c) const {
    if (c.degree() != d_) throw DegreeMismatch(std::size_t(c.degree() + 1), std::size_t(d_ + 1));
    SparseVec<T> b;
    for (const auto& [s, v] : c.terms()) {
      auto i = C_.index_of(s);
      if (!i) throw PreconditionViolated("chain is not supported on the complex");
      b.emplace_back(std::uint32_t(*i), v);
    }
    std::sort(b.begin(), b.end(), [](const auto& x, const auto& y) { return x.first < y.first; });
    auto x = echelon_.solve(std::move(b));
    if (!x) return std::nullopt;
    BasicChain<T> out(d_ + 1);
    for (const auto& [j, v] : *x) out.add(C_.simplex(d_ + 1, j), v);
    return out;
  }

  /// Basis of the cycles of degree d + 1 (kernel of the boundary).
  std::vector<BasicChain<T>> cycle_basis() const {
    std::vector<BasicChain<T>> out;
    for (const auto& v : echelon_.kernel_basis()) {
      BasicChain<T> c(d_ + 1);
      for (const auto& [j, x] : v) c.add(C_.simplex(d_ + 1, j), x);
      out.push_back(std::move(c));
    }
    return out;
  }

private:
  const ChainComplex& C_;
  int d_;
  ColumnEchelon<Ring> echelon_;
};

template <class T>
std::optional<BasicChain<T>> boundary_witness(const ChainComplex& C, const BasicChain<T>& c) {
  if (c.is_zero()) return BasicChain<T>(c.degree() + 1);
  return BoundarySolver<T>(C, c.degree()).solve(c);
}

template <class T>
bool is_boundary(const ChainComplex& C, const BasicChain<T>& c) {
  return boundary_witness(C, c).has_value();
}

/// Every term is a chain of X.
template <class T>
bool supported_on(const Poset& X, const BasicChain<T>& c) {
  for (const auto& [s, v] : c.terms()) {
    std::vector<std::size_t> idx;
    for (auto k : s) {
      auto i = X.index_of_key(k);
      if (!i) return false;
      idx.push_back(*i);
    }
    if (!is_chain(X, idx)) return false;
  }
  return true;
}

// ---------------------------------------------------------------------------
// a-initial decomposition

/// (gamma_a, gamma_not_a).
template <class T>
std::pair<BasicChain<T>, BasicChain<T>> a_initial_split(const BasicChain<T>& c, const Simplex& a) {
  BasicChain<T> in(c.degree()), out(c.degree());
  for (const auto& [s, v] : c.terms()) {
    bool initial = std::includes(s.begin(), s.end(), a.begin(), a.end()) && is_a_initial(a, s);
    (initial ? in : out).add(s, v);
  }
  return {std::move(in), std::move(out)};
}

/// Drops the prefix a from every term. The chain a itself goes to the empty
/// chain.
template <class T>
BasicChain<T> tilde(const BasicChain<T>& c, const Simplex& a) {
  BasicChain<T> out(c.degree() - int(a.size()));
  for (const auto& [s, v] : c.terms()) {
    if (!std::includes(s.begin(), s.end(), a.begin(), a.end()) || !is_a_initial(a, s)) throw NotAInitial();
    out.add(Simplex(s.begin() + long(a.size()), s.end()), v);
  }
  return out;
}

/// a followed by each term of c (all keys above max a).
template <class T>
BasicChain<T> prepend(const Simplex& a, const BasicChain<T>& c) {
  BasicChain<T> out(c.degree() + int(a.size()));
  for (const auto& [s, v] : c.terms()) {
    Simplex t(a);
    t.insert(t.end(), s.begin(), s.end());
    out.add(t, v);
  }
  return out;
}

// ---------------------------------------------------------------------------

/// Chain map of an order-preserving map; chains with a repeated image go to 0.
template <class T>
BasicChain<T> induced_chain_map(const PosetMap& f, const BasicChain<T>& c) {
  BasicChain<T> out(c.degree());
  for (const auto& [s, v] : c.terms()) {
    Simplex img;
    bool degenerate = false;
    for (auto k : s) {
      std::uint32_t y = f.target().key(f(f.source().require_key(k)));
      if (!img.empty() && img.back() == y) {
        degenerate = true;
        break;
      }
      img.push_back(y);
    }
    if (!degenerate) out.add(img, v);
  }
  return out;
}

/// Random chain of degree d with small integer coefficients, supported on
/// the complex. Returns zero when the degree is empty.
template <class T, class Rng>
BasicChain<T> random_chain(const ChainComplex& C, int d, Rng& rng, std::size_t max_terms = 6, int max_coeff = 3) {
  BasicChain<T> out(d);
  const std::size_t n = C.count(d);
  if (n == 0) return out;
  std::uniform_int_distribution<std::size_t> pick(0, n - 1);
  std::uniform_int_distribution<std::size_t> terms(1, max_terms);
  std::uniform_int_distribution<int> coeff(-max_coeff, max_coeff);
  for (std::size_t t = terms(rng); t > 0; --t) out.add(C.simplex(d, pick(rng)), T(coeff(rng)));
  return out;
}

template <class T>
nlohmann::ordered_json chain_to_json(const BasicChain<T>& c) {
  nlohmann::ordered_json terms = nlohmann::ordered_json::array();
  for (const auto& [s, v] : c.terms()) terms.push_back({{"chain", s}, {"coefficient", v.str()}});
  return {{"degree", c.degree()}, {"terms", terms}};
}

}  // namespace quillen
