#pragma once

#include <optional>
#include <string>
#include <vector>

#include "quillen/harness/lemma_suites.hpp"
#include "quillen/harness/record.hpp"
#include "quillen/harness/spec.hpp"
#include "quillen/reduction/theorem1.hpp"
#include "quillen/reduction/structure.hpp"

namespace quillen {

inline const std::vector<std::string>& verify_kinds() {
  static const std::vector<std::string> k = {"inflation",   "link",        "retract",  "join",    "central-quotient",
                                             "shuffle",     "propagation", "theorem1", "embedded"};
  return k;
}

struct VerifyRequest {
  std::string kind;
  Group group;
  std::uint32_t prime = 0;
  std::optional<std::string> subgroup;  // H (Z for central-quotient)
  std::optional<std::string> element;   // E for link
  std::uint64_t seed = 1;
};

namespace detail {

inline Subgroup require_subgroup(const VerifyRequest& q, const char* fallback = nullptr) {
  if (q.subgroup) return parse_subgroup(q.group, q.prime, *q.subgroup);
  if (!fallback) throw ParseError("verify " + q.kind + " needs --subgroup");
  return parse_subgroup(q.group, q.prime, fallback);
}

inline nlohmann::ordered_json with_schema(const nlohmann::ordered_json& body) {
  nlohmann::ordered_json j;
  j["schema"] = kReportSchema;
  for (const auto& [k, v] : body.items()) j[k] = v;
  return j;
}

/// X = A_p(G), K = C_G(H), alpha a top class of A_p(H) with a unit
/// coefficient and beta the lowest class of A_p(K).
inline PropagationInstance product_instance(const VerifyRequest& q, const Subgroup& H, const Limits& lim) {
  GroupPoset X = quillen_poset(q.group, q.prime, lim.poset_cap);
  const Subgroup K = centralizer(q.group, H);
  auto qd = qd_certificate(restrict_to(X, H), lim);
  if (!qd) throw PreconditionViolated("A_p(H) has no top homology to propagate");
  auto beta = nonzero_class(restrict_to(X, K).poset(), qd->ring, lim);
  if (!beta) throw PreconditionViolated("A_p(C_G(H)) has zero homology");
  PropagationInstance in{X, H, K, qd->exhibiting_chain, qd->cycle, *beta, qd->ring};
  in.seed = q.seed;
  return in;
}

}  // namespace detail

/// Runs one verification and returns its report as JSON with a schema field.
inline nlohmann::ordered_json verify(const VerifyRequest& q, const Limits& lim = {}) {
  const Group& G = q.group;
  const std::uint32_t p = q.prime;
  if (p < 2 || G.order() % p != 0) throw PreconditionViolated("p does not divide |G|");
  if (q.kind == "embedded") return detail::with_schema(embedded_to_json(strongly_p_embedded(G, p, lim)));
  if (q.kind == "theorem1") return detail::with_schema(report_to_json(theorem1_pipeline(G, p, lim)));
  if (q.kind == "central-quotient") {
    const Subgroup Z = q.subgroup ? parse_subgroup(G, p, *q.subgroup) : o_p_prime(center(G), p);
    return detail::with_schema(report_to_json(central_quotient_check(G, Z, p, lim)));
  }
  if (q.kind == "join") return detail::with_schema(report_to_json(join_report(G, p, detail::require_subgroup(q), lim)));
  if (q.kind == "retract") {
    const Subgroup H = detail::require_subgroup(q, "c_o_p_prime");
    return detail::with_schema(report_to_json(retract_reduction(G, p, H, lim)));
  }
  GroupPoset X = quillen_poset(G, p, lim.poset_cap);
  if (q.kind == "inflation")
    return detail::with_schema(report_to_json(inflation_report(X, detail::require_subgroup(q, "sylow"), lim)));
  if (q.kind == "link") {
    const Subgroup H = detail::require_subgroup(q, "sylow");
    std::optional<Subgroup> E;
    if (q.element) E = parse_subgroup(G, p, *q.element);
    for (std::size_t i = 0; i < X.size() && !E; ++i)
      if (intersection(X.node(i), H).is_trivial()) E = X.node(i);
    if (!E) throw PreconditionViolated("no E in A_p(G) meets H trivially");
    return detail::with_schema(report_to_json(link_report(X, H, *E, lim)));
  }
  if (q.kind == "shuffle") {
    const Subgroup H = detail::require_subgroup(q);
    return detail::with_schema(report_to_json(shuffle_report(X, H, centralizer(G, H), 20, q.seed, lim)));
  }
  if (q.kind == "propagation") {
    auto in = detail::product_instance(q, detail::require_subgroup(q), lim);
    return detail::with_schema(report_to_json(propagation_check(in, lim)));
  }
  throw ParseError("unknown verification '" + q.kind + "'");
}

}  // namespace quillen
