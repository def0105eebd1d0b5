#pragma once

#include <algorithm>
#include <set>
#include <string>
#include <vector>

#include "quillen/harness/corpus.hpp"
#include "quillen/harness/lemma_suites.hpp"
#include "quillen/harness/record.hpp"
#include "quillen/homology/qd.hpp"
#include "quillen/reduction/lemmas.hpp"
#include "quillen/reduction/structure.hpp"

namespace quillen {

enum class Check { Embedded, QD, TopFree, Inflation, Link, Retract, CentralQuotient, BrownQuillen, BoundarySquared };

inline const char* to_string(Check c) {
  switch (c) {
    case Check::Embedded: return "embedded";
    case Check::QD: return "qd";
    case Check::TopFree: return "top-free";
    case Check::Inflation: return "inflation";
    case Check::Link: return "link";
    case Check::Retract: return "retract";
    case Check::CentralQuotient: return "central-quotient";
    case Check::BrownQuillen: return "brown-quillen";
    case Check::BoundarySquared: return "boundary-squared";
  }
  return "?";
}

inline Check check_from_string(const std::string& s) {
  for (Check c : {Check::Embedded, Check::QD, Check::TopFree, Check::Inflation, Check::Link, Check::Retract,
                  Check::CentralQuotient, Check::BrownQuillen, Check::BoundarySquared})
    if (s == to_string(c)) return c;
  throw ParseError("unknown check '" + s + "'");
}

inline std::set<Check> default_checks() { return {Check::Embedded, Check::QD, Check::TopFree}; }

inline std::set<Check> lemma_checks() {
  return {Check::Inflation, Check::Link, Check::Retract, Check::CentralQuotient, Check::BrownQuillen,
          Check::BoundarySquared};
}

namespace detail {

/// Subgroups the lemma suites run on: a Sylow subgroup, its normalizer,
/// O_p'(G), C_G(O_p'(G)) and G', without repeats, 1 or G.
inline std::vector<Subgroup> lemma_subgroups(const Group& G, std::uint32_t p) {
  std::vector<Subgroup> cand;
  const Subgroup S = sylow(G, p);
  cand.push_back(S);
  cand.push_back(normalizer(G, S));
  const Subgroup L = o_p_prime(G, p);
  cand.push_back(L);
  if (!L.is_trivial()) cand.push_back(centralizer(G, L));
  cand.push_back(commutator_subgroup(G));
  std::vector<Subgroup> out;
  for (auto& H : cand) {
    if (H.is_trivial() || H.order() == G.order()) continue;
    if (std::find(out.begin(), out.end(), H) != out.end()) continue;
    out.push_back(H);
  }
  return out;
}

inline std::string verdicts(std::size_t ok, std::size_t total, const std::string& what) {
  return std::to_string(ok) + " of " + std::to_string(total) + " " + what;
}

}  // namespace detail

/// Full analysis of (G, p). With ring Q the integral homology is computed
/// only when it decides the verdict or a check needs it.
inline AnalysisRecord analyze(const CorpusEntry& e, std::uint32_t p, Ring ring = Ring::Z,
                              const std::set<Check>& checks = default_checks(), const Limits& lim = {}) {
  const Group& G = e.group;
  if (p < 2 || G.order() % p != 0) throw PreconditionViolated("p does not divide |G|");
  AnalysisRecord r;
  r.group = e.name;
  r.prime = p;
  r.order = G.order();
  const Subgroup Op = o_p(G, p);
  r.o_p = Op.order();
  r.o_p_prime = o_p_prime(G, p).order();

  GroupPoset X = quillen_poset(G, p, lim.poset_cap);
  for (std::size_t i = 0; i < X.size(); ++i) r.p_rank = std::max(r.p_rank, log_p(X.node(i).order(), p));
  r.components = connected_components(X.poset()).size();

  const HomologyResult hq = homology(X.poset(), Ring::Q, lim.simplex_cap);
  r.homology_q = hq.degrees;
  std::optional<HomologyResult> hz;
  const bool need_z = ring == Ring::Z || checks.count(Check::TopFree) || (Op.is_trivial() && hq.is_zero());
  if (need_z) {
    hz = homology(X.poset(), Ring::Z, lim.simplex_cap);
    r.homology_z = hz->degrees;
    bool same = true;
    for (const auto& d : hz->degrees) same = same && d.betti == hq.betti(d.degree);
    r.checks.push_back({"z-q-betti", same, same ? "" : "free ranks over Z differ from Betti numbers over Q"});
  }

  if (!Op.is_trivial()) {
    r.qc_verdict = QcVerdict::OpNontrivial;
    const bool zero = hz ? hz->is_zero() : hq.is_zero();
    r.checks.push_back({"op-contractible", zero, zero ? "" : "O_p(G) != 1 but A_p(G) has homology"});
  } else if (!hq.is_zero() || (hz && !hz->is_zero())) {
    r.qc_verdict = QcVerdict::NonzeroHomology;
  } else {
    r.qc_verdict = QcVerdict::Violation;
  }

  std::optional<StronglyEmbeddedReport> emb;
  bool want_emb = checks.count(Check::Embedded) > 0;
  for (const auto& f : e.metadata) want_emb = want_emb || (f.prime == p && f.key == "strongly_embedded");
  if (want_emb) {
    emb = strongly_p_embedded(X);
    const bool ok = emb->disconnected ? emb->verified : !emb->subgroup.has_value();
    std::string d = emb->disconnected ? "disconnected, " + emb->detail : "connected, no M claimed";
    r.checks.push_back({"embedded", ok, d});
  }

  if (checks.count(Check::QD)) {
    auto c = qd_certificate(X, lim);
    if (!c) r.checks.push_back({"qd", true, "H_{m-1} = 0, no certificate"});
    else {
      const bool ok = verify_qd(X, *c);
      r.checks.push_back({"qd", ok,
                          "degree " + std::to_string(int(c->rank) - 1) + ", coefficient " + c->coefficient.str() +
                              " over " + to_string(c->ring)});
    }
  }

  if (checks.count(Check::TopFree)) {
    auto top = hz->top_nonzero();
    const bool ok = !top || hz->torsion(*top).empty();
    r.checks.push_back({"top-free", ok, top ? "top degree " + std::to_string(*top) : "no homology"});
  }

  for (const auto& f : e.metadata) {
    if (f.prime != p) continue;
    std::int64_t got = 0;
    if (f.key == "p_rank") got = r.p_rank;
    else if (f.key == "disconnected") got = r.components > 1;
    else if (f.key == "strongly_embedded") got = emb->verified;
    else throw ParseError("unknown metadata key '" + f.key + "'");
    r.checks.push_back({"metadata:" + f.key, got == f.value,
                        "expected " + std::to_string(f.value) + ", computed " + std::to_string(got) + " [" +
                            f.citation + "]"});
  }

  const bool lemmas = std::any_of(checks.begin(), checks.end(), [](Check c) { return lemma_checks().count(c); });
  const std::vector<Subgroup> subs = lemmas ? detail::lemma_subgroups(G, p) : std::vector<Subgroup>{};
  if (checks.count(Check::Inflation)) {
    std::size_t ok = 0;
    for (const auto& H : subs) ok += inflation_report(X, H, lim).verdict == Verdict::Verified;
    r.checks.push_back({"inflation", ok == subs.size(), detail::verdicts(ok, subs.size(), "subgroups")});
  }
  if (checks.count(Check::Link)) {
    std::size_t ok = 0, total = 0;
    for (const auto& H : subs) {
      std::size_t per = 0;
      for (std::size_t i = 0; i < X.size() && per < 8; ++i) {
        if (!intersection(X.node(i), H).is_trivial()) continue;
        ok += link_report(X, H, X.node(i), lim).verdict == Verdict::Verified;
        ++per;
        ++total;
      }
    }
    r.checks.push_back({"link", ok == total, detail::verdicts(ok, total, "pairs (H, E)")});
  }
  if (checks.count(Check::Retract)) {
    std::size_t ok = 0, applied = 0;
    for (const auto& H : subs) {
      auto rep = retract_reduction(X, H, lim);
      if (rep.verdict == Verdict::CounterWitness) continue;
      ++applied;
      ok += rep.verdict == Verdict::Verified;
    }
    r.checks.push_back({"retract", ok == applied, detail::verdicts(ok, applied, "subgroups meeting the hypothesis")});
  }
  if (checks.count(Check::CentralQuotient)) {
    const Subgroup Z = o_p_prime(center(G), p);
    if (Z.is_trivial()) r.checks.push_back({"central-quotient", true, "Z(G) has trivial p'-part"});
    else {
      auto rep = central_quotient_check(G, Z, p, lim);
      r.checks.push_back({"central-quotient", rep.verdict == Verdict::Verified, "|Z| = " + std::to_string(Z.order())});
    }
  }
  if (checks.count(Check::BrownQuillen)) {
    try {
      auto rep = brown_quillen_report(G, p, lim);
      r.checks.push_back({"brown-quillen", rep.verdict == Verdict::Verified, rep.steps.front().detail});
    } catch (const CapExceeded& ex) {
      r.checks.push_back({"brown-quillen", true, std::string("skipped: ") + ex.what()});
    }
  }
  if (checks.count(Check::BoundarySquared)) {
    auto rep = boundary_squared_report(X, 500, 1, lim);
    r.checks.push_back({"boundary-squared", rep.verdict == Verdict::Verified, rep.steps.front().detail});
  }
  return r;
}

inline AnalysisRecord analyze(const Group& G, std::uint32_t p, Ring ring = Ring::Z,
                              const std::set<Check>& checks = default_checks(), const Limits& lim = {}) {
  return analyze(CorpusEntry{G, G.name(), "", {}}, p, ring, checks, lim);
}

struct SuiteError {
  std::string entry;
  std::uint32_t prime = 0;
  std::string message;
};

struct SuiteResult {
  std::vector<AnalysisRecord> records;
  std::vector<SuiteError> errors;

  std::size_t violations() const {
    return std::size_t(std::count_if(records.begin(), records.end(),
                                     [](const AnalysisRecord& r) { return r.qc_verdict == QcVerdict::Violation; }));
  }
  std::size_t failed_checks() const {
    return std::size_t(std::count_if(records.begin(), records.end(),
                                     [](const AnalysisRecord& r) { return !r.all_checks_ok(); }));
  }
};

/// Every (entry, p) with p dividing the order, in corpus order and then by
/// increasing p. An error in one pair is recorded and the batch goes on.
inline SuiteResult run_suite(const std::vector<CorpusEntry>& corpus, std::vector<std::uint32_t> primes,
                             Ring ring = Ring::Z, const std::set<Check>& checks = default_checks(),
                             const Limits& lim = {}) {
  std::sort(primes.begin(), primes.end());
  primes.erase(std::unique(primes.begin(), primes.end()), primes.end());
  SuiteResult out;
  for (const auto& e : corpus)
    for (auto p : primes) {
      if (p < 2 || e.group.order() % p != 0) continue;
      try {
        out.records.push_back(analyze(e, p, ring, checks, lim));
      } catch (const std::exception& ex) {
        out.errors.push_back({e.name, p, ex.what()});
      }
    }
  return out;
}

inline nlohmann::ordered_json suite_to_json(const SuiteResult& s) {
  nlohmann::ordered_json j;
  j["schema"] = kReportSchema;
  auto recs = nlohmann::ordered_json::array();
  for (const auto& r : s.records) recs.push_back(record_to_json(r));
  j["records"] = recs;
  auto errs = nlohmann::ordered_json::array();
  for (const auto& e : s.errors) errs.push_back({{"entry", e.entry}, {"prime", e.prime}, {"error", e.message}});
  j["errors"] = errs;
  j["violations"] = s.violations();
  return j;
}

inline SuiteResult suite_from_json(const nlohmann::ordered_json& j) {
  try {
    if (j.at("schema").get<int>() != kReportSchema) throw ParseError("unsupported schema");
    SuiteResult s;
    for (const auto& r : j.at("records")) s.records.push_back(record_from_json(r));
    for (const auto& e : j.at("errors"))
      s.errors.push_back({e.at("entry").get<std::string>(), e.at("prime").get<std::uint32_t>(),
                          e.at("error").get<std::string>()});
    return s;
  } catch (const nlohmann::json::exception& e) {
    throw ParseError(e.what());
  }
}

}  // namespace quillen
