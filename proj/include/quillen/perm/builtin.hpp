#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include "quillen/perm/group.hpp"

namespace quillen {

namespace detail {

/// GF(q) for small q, elements coded as base-p digit vectors of a polynomial
/// modulo a fixed irreducible. Only used to write down generators.
class SmallField {
public:
  explicit SmallField(std::uint32_t q) : q_(q) {
    // (q, p, k, low coefficients of the monic irreducible of degree k)
    struct Def {
      std::uint32_t q, p, k;
      std::vector<std::uint32_t> low;
    };
    static const std::vector<Def> defs = {
        {4, 2, 2, {1, 1}},      // x^2 + x + 1
        {8, 2, 3, {1, 1, 0}},   // x^3 + x + 1
        {9, 3, 2, {1, 0}},      // x^2 + 1
        {16, 2, 4, {1, 1, 0, 0}},
        {25, 5, 2, {2, 0}},     // x^2 + 2
        {27, 3, 3, {1, 2, 0}},  // x^3 + 2x + 1
    };
    p_ = 0;
    for (std::uint32_t d = 2; d <= q; ++d)
      if (q % d == 0) {
        p_ = d;
        break;
      }
    std::uint32_t t = q;
    k_ = 0;
    while (t > 1 && t % p_ == 0) {
      t /= p_;
      ++k_;
    }
    if (t != 1) throw PreconditionViolated("field order must be a prime power");
    if (k_ > 1) {
      bool found = false;
      for (const auto& d : defs)
        if (d.q == q) {
          low_ = d.low;
          found = true;
        }
      if (!found) throw PreconditionViolated("no built-in field of order " + std::to_string(q));
    }
    mul_.assign(std::size_t(q) * q, 0);
    for (std::uint32_t a = 0; a < q; ++a)
      for (std::uint32_t b = 0; b < q; ++b) mul_[a * q + b] = slow_mul(a, b);
    inv_.assign(q, 0);
    for (std::uint32_t a = 1; a < q; ++a)
      for (std::uint32_t b = 1; b < q; ++b)
        if (mul(a, b) == 1) inv_[a] = b;
    for (std::uint32_t g = 1; g < q; ++g) {
      std::uint32_t x = g, ord = 1;
      while (x != 1) {
        x = mul(x, g);
        ++ord;
      }
      if (ord == q - 1) {
        primitive_ = g;
        break;
      }
    }
  }

  std::uint32_t order() const { return q_; }
  std::uint32_t characteristic() const { return p_; }
  std::uint32_t add(std::uint32_t a, std::uint32_t b) const {
    std::uint32_t r = 0, m = 1;
    for (std::uint32_t i = 0; i < k_; ++i) {
      r += ((a % p_ + b % p_) % p_) * m;
      a /= p_;
      b /= p_;
      m *= p_;
    }
    return r;
  }
  std::uint32_t neg(std::uint32_t a) const {
    std::uint32_t r = 0, m = 1;
    for (std::uint32_t i = 0; i < k_; ++i) {
      r += ((p_ - a % p_) % p_) * m;
      a /= p_;
      m *= p_;
    }
    return r;
  }
  std::uint32_t mul(std::uint32_t a, std::uint32_t b) const { return mul_[a * q_ + b]; }
  std::uint32_t inv(std::uint32_t a) const { return inv_[a]; }
  std::uint32_t primitive() const { return primitive_; }

private:
  std::uint32_t slow_mul(std::uint32_t a, std::uint32_t b) const {
    if (k_ == 1) return (a * b) % p_;
    std::vector<std::uint32_t> x(k_), y(k_), r(2 * k_, 0);
    for (std::uint32_t i = 0; i < k_; ++i) {
      x[i] = a % p_;
      a /= p_;
      y[i] = b % p_;
      b /= p_;
    }
    for (std::uint32_t i = 0; i < k_; ++i)
      for (std::uint32_t j = 0; j < k_; ++j) r[i + j] = (r[i + j] + x[i] * y[j]) % p_;
    // x^k = -low(x)
    for (std::uint32_t d = 2 * k_ - 1; d >= k_; --d) {
      std::uint32_t c = r[d];
      if (c == 0) continue;
      r[d] = 0;
      for (std::uint32_t i = 0; i < k_; ++i)
        r[d - k_ + i] = (r[d - k_ + i] + (p_ - (c * low_[i]) % p_)) % p_;
    }
    std::uint32_t out = 0, m = 1;
    for (std::uint32_t i = 0; i < k_; ++i) {
      out += r[i] * m;
      m *= p_;
    }
    return out;
  }

  std::uint32_t q_, p_ = 0, k_ = 1;
  std::vector<std::uint32_t> low_;
  std::vector<std::uint32_t> mul_, inv_;
  std::uint32_t primitive_ = 1;
};

/// Permutation of the projective line {0..q-1, inf=q} induced by x -> f(x).
template <class F>
Permutation projective_map(const SmallField& K, F f) {
  std::vector<Point> img(K.order() + 1);
  for (std::uint32_t x = 0; x <= K.order(); ++x) img[x] = f(x);
  return Permutation(std::move(img));
}

inline std::vector<Permutation> psl2_generators(const SmallField& K) {
  const std::uint32_t q = K.order(), inf = q;
  const std::uint32_t w = K.primitive(), w2 = K.mul(w, w);
  std::vector<Permutation> gens;
  gens.push_back(projective_map(K, [&](std::uint32_t x) { return x == inf ? inf : K.add(x, 1); }));
  gens.push_back(projective_map(K, [&](std::uint32_t x) { return x == inf ? inf : K.mul(w2, x); }));
  gens.push_back(projective_map(K, [&](std::uint32_t x) -> std::uint32_t {
    if (x == inf) return 0;
    if (x == 0) return inf;
    return K.neg(K.inv(x));
  }));
  return gens;
}

}  // namespace detail

inline Group trivial_group(std::size_t degree = 1) { return generate(degree, {}, 1, "1"); }

inline Group symmetric(std::size_t n, std::size_t cap = Limits{}.element_cap) {
  std::vector<Permutation> gens;
  if (n >= 2) {
    gens.push_back(Permutation::from_cycles(n, {{0, 1}}));
    std::vector<Point> cyc(n);
    for (std::size_t i = 0; i < n; ++i) cyc[i] = Point(i);
    gens.push_back(Permutation::from_cycles(n, {cyc}));
  }
  return generate(n, std::move(gens), cap, "S" + std::to_string(n));
}

inline Group alternating(std::size_t n, std::size_t cap = Limits{}.element_cap) {
  std::vector<Permutation> gens;
  for (std::size_t k = 2; k < n; ++k) gens.push_back(Permutation::from_cycles(n, {{0, 1, Point(k)}}));
  return generate(n, std::move(gens), cap, "A" + std::to_string(n));
}

inline Group cyclic(std::size_t n) {
  std::vector<Point> cyc(n);
  for (std::size_t i = 0; i < n; ++i) cyc[i] = Point(i);
  return generate(n, {Permutation::from_cycles(n, {cyc})}, n, "C" + std::to_string(n));
}

/// Dihedral group of order 2n acting on the n-gon (n >= 3).
inline Group dihedral(std::size_t n) {
  if (n < 3) throw PreconditionViolated("dihedral needs n >= 3");
  std::vector<Point> rot(n), refl(n);
  for (std::size_t i = 0; i < n; ++i) {
    rot[i] = Point((i + 1) % n);
    refl[i] = Point((n - i) % n);
  }
  return generate(n, {Permutation(rot), Permutation(refl)}, 2 * n, "D" + std::to_string(2 * n));
}

inline Group klein_four() {
  return generate(4, {Permutation::from_cycles(4, {{0, 1}, {2, 3}}), Permutation::from_cycles(4, {{0, 2}, {1, 3}})},
                  4, "V4");
}

/// (C_p)^k on k disjoint p-cycles.
inline Group elementary_abelian_group(std::uint32_t p, std::size_t k) {
  const std::size_t n = p * k;
  std::vector<Permutation> gens;
  for (std::size_t b = 0; b < k; ++b) {
    std::vector<Point> cyc(p);
    for (std::uint32_t i = 0; i < p; ++i) cyc[i] = Point(b * p + i);
    gens.push_back(Permutation::from_cycles(n, {cyc}));
  }
  std::string name = "E" + std::to_string(p) + "^" + std::to_string(k);
  return generate(n, std::move(gens), Limits{}.element_cap, name);
}

/// PSL(2,q) on the q+1 points of the projective line.
inline Group psl2(std::uint32_t q, std::size_t cap = Limits{}.element_cap) {
  detail::SmallField K(q);
  return generate(q + 1, detail::psl2_generators(K), cap, "PSL2_" + std::to_string(q));
}

/// PGL(2,q) extended by the Frobenius x -> x^p.
inline Group pgammal2(std::uint32_t q, std::size_t cap = Limits{}.element_cap) {
  detail::SmallField K(q);
  const std::uint32_t inf = q, w = K.primitive(), p = K.characteristic();
  auto gens = detail::psl2_generators(K);
  gens.push_back(detail::projective_map(K, [&](std::uint32_t x) { return x == inf ? inf : K.mul(w, x); }));
  gens.push_back(detail::projective_map(K, [&](std::uint32_t x) {
    if (x == inf) return inf;
    std::uint32_t r = 1;
    for (std::uint32_t i = 0; i < p; ++i) r = K.mul(r, x);
    return r;
  }));
  return generate(q + 1, std::move(gens), cap, "PGammaL2_" + std::to_string(q));
}

/// C_q : C_r on q points (q prime, r | q-1): x -> x+1 and x -> a x with a of order r.
inline Group frobenius(std::uint32_t q, std::uint32_t r) {
  if (r == 0 || (q - 1) % r != 0) throw PreconditionViolated("frobenius needs r | q-1");
  detail::SmallField K(q);
  if (K.characteristic() != q) throw PreconditionViolated("frobenius needs q prime");
  std::uint32_t a = 1;
  for (std::uint32_t i = 0; i < (q - 1) / r; ++i) a = K.mul(a, K.primitive());
  std::vector<Point> t(q), m(q);
  for (std::uint32_t x = 0; x < q; ++x) {
    t[x] = (x + 1) % q;
    m[x] = K.mul(a, x);
  }
  return generate(q, {Permutation(t), Permutation(m)}, Limits{}.element_cap,
                  "F" + std::to_string(q) + ":" + std::to_string(r));
}

/// M11 from its standard generators (1 2 ... 11), (3 7 11 8)(4 10 5 6).
inline Group mathieu11(std::size_t cap = Limits{}.element_cap) {
  auto a = Permutation::from_cycles(11, {{0, 1, 2, 3, 4, 5, 6, 7, 8, 9, 10}});
  auto b = Permutation::from_cycles(11, {{2, 6, 10, 7}, {3, 9, 4, 5}});
  return generate(11, {a, b}, cap, "M11");
}

/// SL(2,q) acting on the nonzero vectors of GF(q)^2, q prime.
inline Group sl2(std::uint32_t q, std::size_t cap = Limits{}.element_cap) {
  detail::SmallField K(q);
  const std::uint32_t n = q * q - 1;
  auto code = [q](std::uint32_t x, std::uint32_t y) { return Point(x * q + y - 1); };
  auto act = [&](std::uint32_t a, std::uint32_t b, std::uint32_t c, std::uint32_t d) {
    // row vector (x, y) times [[a, b], [c, d]]
    std::vector<Point> img(n);
    for (std::uint32_t x = 0; x < q; ++x)
      for (std::uint32_t y = 0; y < q; ++y) {
        if (x == 0 && y == 0) continue;
        std::uint32_t nx = K.add(K.mul(x, a), K.mul(y, c));
        std::uint32_t ny = K.add(K.mul(x, b), K.mul(y, d));
        img[code(x, y)] = code(nx, ny);
      }
    return Permutation(std::move(img));
  };
  return generate(n, {act(1, 1, 0, 1), act(1, 0, 1, 1)}, cap, "SL2_" + std::to_string(q));
}

/// Affine group (C_3 x C_3) : (C_2 x C_2) on GF(3)^2, each involution inverting one coordinate.
inline Group c3c3_by_klein() {
  auto code = [](std::uint32_t x, std::uint32_t y) { return Point(3 * x + y); };
  auto map = [&](auto f) {
    std::vector<Point> img(9);
    for (std::uint32_t x = 0; x < 3; ++x)
      for (std::uint32_t y = 0; y < 3; ++y) {
        auto [nx, ny] = f(x, y);
        img[code(x, y)] = code(nx, ny);
      }
    return Permutation(std::move(img));
  };
  using P = std::pair<std::uint32_t, std::uint32_t>;
  auto tx = map([](std::uint32_t x, std::uint32_t y) { return P{(x + 1) % 3, y}; });
  auto ty = map([](std::uint32_t x, std::uint32_t y) { return P{x, (y + 1) % 3}; });
  auto ix = map([](std::uint32_t x, std::uint32_t y) { return P{(3 - x) % 3, y}; });
  auto iy = map([](std::uint32_t x, std::uint32_t y) { return P{x, (3 - y) % 3}; });
  return generate(9, {tx, ty, ix, iy}, 36, "C3xC3:V4");
}

/// Pairs (x, y) in S_n x S_m with sgn x = sgn y, on n + m points.
inline Group equal_sign_product(std::size_t n, std::size_t m, std::size_t cap = Limits{}.element_cap) {
  if (n < 2 || m < 2) throw PreconditionViolated("equal_sign_product needs n, m >= 2");
  const std::size_t d = n + m;
  std::vector<Permutation> gens;
  const Group An = alternating(n), Am = alternating(m);
  for (const auto& g : An.generators()) gens.push_back(shift_into(g, 0, d));
  for (const auto& g : Am.generators()) gens.push_back(shift_into(g, n, d));
  gens.push_back(Permutation::from_cycles(d, {{0, 1}, {Point(n), Point(n + 1)}}));
  return generate(d, std::move(gens), cap, "(S" + std::to_string(n) + "xS" + std::to_string(m) + ")+");
}

}  // namespace quillen
