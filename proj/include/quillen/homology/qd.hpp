#pragma once

#include <optional>
#include <string>
#include <vector>

#include <nlohmann/json.hpp>

#include "quillen/homology/chain.hpp"
#include "quillen/homology/shuffle.hpp"
#include "quillen/local/local.hpp"
#include "quillen/poset/group_poset.hpp"

namespace quillen {

/// A top-degree cycle of A_p(G) and a full chain in it with coefficient
/// +-1 (ring Z) or nonzero (ring Q, used only when no unit was found).
struct QDCertificate {
  std::string group;
  std::uint32_t prime = 0;
  std::uint32_t rank = 0;  // m_p(G); the cycle has degree rank - 1
  Ring ring = Ring::Z;
  IntChain cycle;
  Simplex exhibiting_chain;
  BigInt coefficient;
  /// Set when the integral search found no unit coefficient; a coefficient
  /// prime to the order of the partner class would also do but is not tried.
  bool torsion_relaxation_pending = false;
};

namespace detail {

inline std::optional<Simplex> unit_term(const IntChain& c) {
  for (const auto& [s, v] : c.terms())
    if (v == 1 || v == -1) return s;
  return std::nullopt;
}

/// Single kernel vectors, then u + s v for |s| <= box, then s u + v.
inline std::optional<IntChain> unit_cycle(const std::vector<IntChain>& basis, int box) {
  for (const auto& u : basis)
    if (unit_term(u)) return u;
  for (std::size_t i = 0; i < basis.size(); ++i)
    for (std::size_t j = 0; j < basis.size(); ++j) {
      if (i == j) continue;
      for (int s = -box; s <= box; ++s) {
        if (s == 0) continue;
        IntChain c = basis[i] + basis[j].scaled(BigInt(s));
        if (unit_term(c)) return c;
      }
    }
  return std::nullopt;
}

}  // namespace detail

/// Nonzero top homology of A_p(G) with an exhibiting chain, or nothing when
/// H_{m-1} = 0.
inline std::optional<QDCertificate> qd_certificate(const GroupPoset& X, const Limits& lim = {}) {
  const Group& G = X.group();
  const std::uint32_t p = X.prime();
  if (G.order() % p != 0) throw PreconditionViolated("p does not divide |G|");
  std::uint32_t m = 0;
  for (std::size_t i = 0; i < X.size(); ++i) m = std::max(m, log_p(X.node(i).order(), p));
  const int d = int(m) - 1;
  ChainComplex C = chain_complex(X.poset(), Ring::Z, lim.simplex_cap);
  // no (d+1)-simplices, so cycles of degree d are the homology
  BoundarySolver<BigInt> below(C, d - 1);
  auto basis = below.cycle_basis();
  if (basis.empty()) return std::nullopt;
  QDCertificate cert;
  cert.group = G.name();
  cert.prime = p;
  cert.rank = m;
  if (auto c = detail::unit_cycle(basis, lim.coeff_box)) {
    cert.cycle = *c;
    cert.exhibiting_chain = *detail::unit_term(*c);
  } else {
    cert.ring = Ring::Q;
    cert.torsion_relaxation_pending = true;
    cert.cycle = basis.front();
    cert.exhibiting_chain = basis.front().terms().begin()->first;
  }
  cert.coefficient = cert.cycle.coefficient(cert.exhibiting_chain);
  if (!is_cycle(cert.cycle)) throw InternalError("QD cycle has nonzero boundary");
  if (is_boundary(C, cert.cycle)) throw InternalError("QD cycle is a boundary");
  return cert;
}

inline std::optional<QDCertificate> qd_certificate(const Group& G, std::uint32_t p, const Limits& lim = {}) {
  return qd_certificate(quillen_poset(G, p, lim.poset_cap), lim);
}

/// Independent check of a certificate against X.
inline bool verify_qd(const GroupPoset& X, const QDCertificate& c) {
  if (c.cycle.degree() != int(c.rank) - 1 || c.exhibiting_chain.size() != c.rank) return false;
  if (!supported_on(X.poset(), c.cycle) || !is_cycle(c.cycle)) return false;
  const BigInt q = c.cycle.coefficient(c.exhibiting_chain);
  if (q == 0 || (c.ring == Ring::Z && q != 1 && q != -1)) return false;
  std::vector<std::size_t> idx;
  for (auto k : c.exhibiting_chain) idx.push_back(X.poset().require_key(k));
  if (!is_full_chain(X.poset(), idx)) return false;
  ChainComplex C = chain_complex(X.poset(), Ring::Q);
  return !is_boundary(C, to_rational(c.cycle));
}

/// H = L A with L = O_p'(H) and A elementary abelian acting faithfully on L,
/// H a subgroup of the ambient group of X0 (whose A_p(H) is read off X0).
/// The certificate's exhibiting chain ends at A, obtained by conjugating the
/// cycle by an element of L.
inline QDCertificate p_solvable_qd(const GroupPoset& X0, const Subgroup& L, const Subgroup& A, const Limits& lim = {}) {
  require_same_parent(L, A);
  if (!L.parent().same_as(X0.group())) throw ElementNotInParent();
  const std::uint32_t p = X0.prime();
  if (A.is_trivial() || !is_p_group(A, p)) throw PreconditionViolated("A must be a nontrivial p-group");
  if (!is_elementary_abelian(A, p)) throw PreconditionViolated("A is not elementary abelian");
  if (!acts_faithfully(A, L)) throw PreconditionViolated("A does not act faithfully on L");
  const Subgroup H = join(L, A);
  if (o_p_prime(H, p) != L) throw PreconditionViolated("L is not O_p'(LA)");
  GroupPoset X = restrict_to(X0, H);
  auto cert = qd_certificate(X, lim);
  if (!cert) throw InternalError("p-solvable group without top homology");
  cert->group = X0.group().name() + ":" + GroupPoset::subgroup_label(H);
  const Subgroup& top = X.subgroup_of_key(cert->exhibiting_chain.back());
  if (top != A) {
    // A is a Sylow p-subgroup of LA, so some element of L conjugates the top to A
    std::optional<Elem> g;
    for (Elem x : L.elements())
      if (conjugate(top, x) == A) {
        g = x;
        break;
      }
    if (!g) throw InternalError("top of exhibiting chain is not conjugate to A");
    cert->cycle = conjugate_chain(X, cert->cycle, *g);
    Simplex t;
    for (auto k : cert->exhibiting_chain) t.push_back(*X.ambient_key(conjugate(X.subgroup_of_key(k), *g)));
    std::sort(t.begin(), t.end());
    cert->exhibiting_chain = t;
    cert->coefficient = cert->cycle.coefficient(t);
  }
  return *cert;
}

/// Same with H = G = L.parent().
inline QDCertificate p_solvable_qd(const Subgroup& L, const Subgroup& A, const Limits& lim = {}) {
  require_same_parent(L, A);
  auto primes = prime_divisors(A.order());
  if (A.is_trivial() || primes.size() != 1) throw PreconditionViolated("A must be a nontrivial p-group");
  const Group& G = L.parent();
  if (join(L, A).order() != G.order()) throw PreconditionViolated("G != L A");
  auto cert = p_solvable_qd(quillen_poset(G, primes.front(), lim.poset_cap), L, A, lim);
  cert.group = G.name();
  return cert;
}

inline nlohmann::ordered_json qd_to_json(const QDCertificate& c) {
  return {{"group", c.group},
          {"prime", c.prime},
          {"rank", c.rank},
          {"ring", to_string(c.ring)},
          {"exhibiting_chain", c.exhibiting_chain},
          {"coefficient", c.coefficient.str()},
          {"torsion_relaxation_pending", c.torsion_relaxation_pending},
          {"cycle", chain_to_json(c.cycle)}};
}

}  // namespace quillen
