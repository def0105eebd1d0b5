#include <gtest/gtest.h>

#include <random>

#include "quillen/harness/corpus.hpp"
#include "quillen/harness/record.hpp"
#include "quillen/harness/spec.hpp"
#include "quillen/harness/suite.hpp"
#include "quillen/harness/verify.hpp"

using namespace quillen;

namespace {

const CorpusEntry* find_entry(const std::vector<CorpusEntry>& c, const std::string& name) {
  for (const auto& e : c)
    if (e.name == name) return &e;
  return nullptr;
}

std::optional<std::int64_t> fact(const CorpusEntry& e, std::uint32_t p, const std::string& key) {
  for (const auto& f : e.metadata)
    if (f.prime == p && f.key == key) return f.value;
  return std::nullopt;
}

const std::vector<CorpusEntry>& corpus() {
  static const auto c = corpus_default();
  return c;
}

std::uint64_t psl2_order(std::uint64_t q) { return q * (q * q - 1) / (q % 2 ? 2 : 1); }

}  // namespace

TEST(Corpus, ContainsTheTableEntries) {
  const auto* pgl = find_entry(corpus(), "pgaml2_8");
  ASSERT_NE(pgl, nullptr);
  EXPECT_EQ(pgl->group.order(), 1512u);  // |PSL(2,8)| * 3
  EXPECT_EQ(fact(*pgl, 3, "p_rank"), 2);
  const auto* m11 = find_entry(corpus(), "m11");
  ASSERT_NE(m11, nullptr);
  EXPECT_EQ(m11->group.order(), 7920u);
  EXPECT_EQ(fact(*m11, 3, "p_rank"), 2);
  EXPECT_EQ(fact(*m11, 3, "strongly_embedded"), 1);
  const auto* a5 = find_entry(corpus(), "alt5");
  ASSERT_NE(a5, nullptr);
  EXPECT_EQ(fact(*a5, 2, "p_rank"), 2);
  for (const auto& e : corpus()) {
    EXPECT_FALSE(e.provenance.empty()) << e.name;
    for (const auto& f : e.metadata) EXPECT_FALSE(f.citation.empty()) << e.name;
  }
}

TEST(Corpus, FamiliesAndOrders) {
  std::uint64_t fact_n = 1;
  for (int n = 3; n <= 8; ++n) {
    fact_n *= std::uint64_t(n) * (n == 3 ? 2 : 1);
    const auto* s = find_entry(corpus(), "sym" + std::to_string(n));
    ASSERT_NE(s, nullptr);
    EXPECT_EQ(s->group.order(), fact_n);
    if (n >= 4) {
      const auto* a = find_entry(corpus(), "alt" + std::to_string(n));
      ASSERT_NE(a, nullptr);
      EXPECT_EQ(a->group.order(), fact_n / 2);
    }
  }
  for (std::uint64_t order = 6; order <= 100; order += 2) {
    const auto* d = find_entry(corpus(), "dih" + std::to_string(order));
    ASSERT_NE(d, nullptr) << order;
    EXPECT_EQ(d->group.order(), order);
  }
  for (std::uint64_t q : {4, 5, 7, 8, 9, 11, 13}) {
    const auto* e = find_entry(corpus(), "psl2_" + std::to_string(q));
    ASSERT_NE(e, nullptr) << q;
    EXPECT_EQ(e->group.order(), psl2_order(q)) << q;
    EXPECT_EQ(e->group.degree(), q + 1);
  }
  EXPECT_EQ(find_entry(corpus(), "sym3wr2")->group.order(), 72u);
  EXPECT_EQ(find_entry(corpus(), "frob13_12")->group.order(), 156u);
}

TEST(Corpus, OverCapEntriesAreSkippedWithNotice) {
  std::vector<CorpusNotice> notices;
  auto c = corpus_default({}, &notices);
  ASSERT_EQ(notices.size(), 1u);
  EXPECT_EQ(notices[0].name, "sym8xsym3");
  EXPECT_EQ(find_entry(c, "sym8xsym3"), nullptr);

  Limits small;
  small.element_cap = 1000;
  notices.clear();
  auto c2 = corpus_default(small, &notices);
  for (const auto& e : c2) EXPECT_LE(e.group.order(), 1000u);
  EXPECT_NE(find_entry(c2, "sym6"), nullptr);
  EXPECT_EQ(find_entry(c2, "sym7"), nullptr);
  EXPECT_EQ(c2.size() + notices.size(), c.size() + 1);
}

TEST(Corpus, BuiltinNames) {
  EXPECT_EQ(builtin_group("sym3xsym3").order(), 36u);
  EXPECT_EQ(builtin_group("sym3xcyc3xcyc2").order(), 36u);
  EXPECT_EQ(builtin_group("alt4wr2").order(), 288u);
  EXPECT_EQ(builtin_group("eqsign3_3").order(), 18u);
  EXPECT_EQ(builtin_group("dih10").order(), 10u);
  EXPECT_THROW(builtin_group("sym"), ParseError);
  EXPECT_THROW(builtin_group("dih7"), ParseError);
  EXPECT_THROW(builtin_group("nope4"), ParseError);
  EXPECT_THROW(load_entry("builtin:sym99999999999"), ParseError);
  EXPECT_THROW(load_entry("/nonexistent/group.json"), ParseError);
  auto e = load_entry("builtin:sym4");
  EXPECT_EQ(e.name, "sym4");
  EXPECT_EQ(e.provenance, "symmetric(4)");
}

// ---------------------------------------------------------------------------

TEST(Analyze, Symmetric4AtThree) {
  auto r = analyze(load_entry("builtin:sym4"), 3);
  EXPECT_EQ(r.o_p, 1u);
  EXPECT_EQ(r.o_p_prime, 4u);
  ASSERT_TRUE(r.homology_z);
  EXPECT_EQ((*r.homology_z)[1].betti, 3u);  // four Sylow 3-subgroups
  EXPECT_EQ(r.qc_verdict, QcVerdict::NonzeroHomology);
  EXPECT_TRUE(r.all_checks_ok());
}

TEST(Analyze, Symmetric4AtTwoIsContractibleBranch) {
  auto r = analyze(load_entry("builtin:sym4"), 2);
  EXPECT_EQ(r.o_p, 4u);
  EXPECT_EQ(r.qc_verdict, QcVerdict::OpNontrivial);
  for (const auto& d : *r.homology_z) {
    EXPECT_EQ(d.betti, 0u);
    EXPECT_TRUE(d.torsion.empty());
  }
  ASSERT_NE(r.find_check("op-contractible"), nullptr);
  EXPECT_TRUE(r.find_check("op-contractible")->ok);
}

TEST(Analyze, PGammaL28AtThreeMatchesMetadata) {
  const auto* e = find_entry(corpus(), "pgaml2_8");
  auto r = analyze(*e, 3);
  EXPECT_GT(r.components, 1u);
  EXPECT_GT((*r.homology_z)[1].betti, 0u);
  EXPECT_EQ(r.p_rank, 2u);
  for (const char* k : {"metadata:p_rank", "metadata:disconnected", "metadata:strongly_embedded"}) {
    ASSERT_NE(r.find_check(k), nullptr) << k;
    EXPECT_TRUE(r.find_check(k)->ok) << k;
  }
}

TEST(Analyze, MetadataIsComparedNotUsed) {
  CorpusEntry e = *find_entry(corpus(), "alt5");
  auto honest = analyze(e, 2);
  for (auto& f : e.metadata) f.value = 7;
  auto tampered = analyze(e, 2);
  EXPECT_EQ(honest.p_rank, tampered.p_rank);
  EXPECT_EQ(honest.components, tampered.components);
  EXPECT_EQ(honest.homology_z, tampered.homology_z);
  EXPECT_TRUE(honest.all_checks_ok());
  EXPECT_FALSE(tampered.find_check("metadata:p_rank")->ok);
}

TEST(Analyze, RationalRingSkipsIntegralWhenNotNeeded) {
  auto r = analyze(load_entry("builtin:alt5"), 2, Ring::Q, {Check::Embedded});
  EXPECT_FALSE(r.homology_z);
  EXPECT_EQ(r.qc_verdict, QcVerdict::NonzeroHomology);
  auto c = analyze(load_entry("builtin:sym4"), 2, Ring::Q, {});
  EXPECT_FALSE(c.homology_z);
  EXPECT_EQ(c.qc_verdict, QcVerdict::OpNontrivial);
  EXPECT_THROW(analyze(load_entry("builtin:sym4"), 5), PreconditionViolated);
}

TEST(Suite, DeterministicAndIsolatesErrors) {
  std::vector<CorpusEntry> c;
  for (const char* n : {"sym3", "alt5", "sym6", "dih10"}) c.push_back(*find_entry(corpus(), n));
  Limits lim;
  lim.poset_cap = 100;  // A_2(S6) has more nodes
  auto a = run_suite(c, {5, 3, 2, 3}, Ring::Z, default_checks(), lim);
  auto b = run_suite(c, {2, 3, 5}, Ring::Z, default_checks(), lim);
  EXPECT_EQ(suite_to_json(a).dump(), suite_to_json(b).dump());
  ASSERT_FALSE(a.errors.empty());
  for (const auto& e : a.errors) EXPECT_EQ(e.entry, "sym6");
  // sym3 at 2,3; alt5 at 2,3,5; sym6 at 3 and 5 fit the cap; dih10 at 2,5
  std::vector<std::pair<std::string, std::uint32_t>> got, want = {{"sym3", 2}, {"sym3", 3}, {"alt5", 2}, {"alt5", 3},
                                                                  {"alt5", 5}, {"sym6", 3}, {"sym6", 5}, {"dih10", 2},
                                                                  {"dih10", 5}};
  for (const auto& r : a.records) got.emplace_back(r.group, r.prime);
  EXPECT_EQ(got, want);
  EXPECT_EQ(a.violations(), 0u);
}

TEST(Suite, VerdictInvariant) {
  std::vector<CorpusEntry> c;
  for (const auto& e : corpus())
    if (e.group.order() <= 200) c.push_back(e);
  auto res = run_suite(c, {2, 3, 5, 7}, Ring::Z, {});
  EXPECT_TRUE(res.errors.empty());
  for (const auto& r : res.records) {
    bool zero = true;
    for (const auto& d : *r.homology_z) zero = zero && d.betti == 0 && d.torsion.empty();
    const bool violation = r.o_p == 1 && zero;
    EXPECT_EQ(r.qc_verdict == QcVerdict::Violation, violation) << r.group << " p=" << r.prime;
    EXPECT_EQ(r.qc_verdict == QcVerdict::OpNontrivial, r.o_p != 1) << r.group << " p=" << r.prime;
  }
}

// ---------------------------------------------------------------------------

TEST(Records, CsvParserFollowsRfc4180) {
  auto rows = csv_parse("a,b,c\r\n\"x,y\",\"he said \"\"hi\"\"\",\"two\nlines\"\n,,\n");
  ASSERT_EQ(rows.size(), 3u);
  EXPECT_EQ(rows[1], (std::vector<std::string>{"x,y", "he said \"hi\"", "two\nlines"}));
  EXPECT_EQ(rows[2], (std::vector<std::string>{"", "", ""}));
  EXPECT_EQ(csv_quote("plain"), "plain");
  EXPECT_EQ(csv_quote("a\"b"), "\"a\"\"b\"");
  EXPECT_THROW(csv_parse("\"open"), ParseError);
  EXPECT_THROW(csv_parse("ab\"c\"\n"), ParseError);
}

TEST(Records, RoundTripOnSuiteOutput) {
  std::vector<CorpusEntry> c;
  for (const char* n : {"sym4", "alt5", "pgaml2_8", "sym3xsym3", "sl2_3"}) c.push_back(*find_entry(corpus(), n));
  auto res = run_suite(c, {2, 3, 5, 7}, Ring::Z, {Check::Embedded, Check::QD, Check::TopFree, Check::Inflation});
  ASSERT_FALSE(res.records.empty());
  EXPECT_EQ(records_from_csv(records_to_csv(res.records)), res.records);
  auto back = suite_from_json(nlohmann::ordered_json::parse(suite_to_json(res).dump()));
  EXPECT_EQ(back.records, res.records);
  // and the emissions themselves are stable
  EXPECT_EQ(records_to_csv(back.records), records_to_csv(res.records));
}

TEST(Records, RoundTripRandomRecords) {
  std::mt19937 rng(5);
  const std::string alphabet = "ab,\"\n\r x;{}[]:";
  auto text = [&] {
    std::string s;
    for (std::uint32_t i = rng() % 8; i > 0; --i) s += alphabet[rng() % alphabet.size()];
    return s;
  };
  std::vector<AnalysisRecord> rs;
  for (int t = 0; t < 200; ++t) {
    AnalysisRecord r;
    r.group = text();
    r.prime = rng() % 50;
    r.order = rng();
    r.o_p = rng() % 100;
    r.o_p_prime = rng() % 100;
    r.p_rank = rng() % 5;
    r.components = rng() % 1000;
    auto degrees = [&](bool torsion) {
      std::vector<DegreeHomology> ds;
      for (int d = -1; d < int(rng() % 4); ++d) {
        DegreeHomology h{d, rng() % 100, {}};
        if (torsion && rng() % 3 == 0) h.torsion = {BigInt(2), BigInt("123456789012345678901234567890")};
        ds.push_back(h);
      }
      return ds;
    };
    if (rng() % 2) r.homology_z = degrees(true);
    r.homology_q = degrees(false);
    r.qc_verdict = QcVerdict(rng() % 3);
    for (std::uint32_t i = rng() % 3; i > 0; --i) r.checks.push_back({text(), rng() % 2 == 0, text()});
    rs.push_back(r);
  }
  EXPECT_EQ(records_from_csv(records_to_csv(rs)), rs);
  for (const auto& r : rs) EXPECT_EQ(record_from_json(record_to_json(r)), r);
}

TEST(Records, RejectsOtherSchemas) {
  auto j = record_to_json(analyze(load_entry("builtin:sym3"), 3));
  j["schema"] = 2;
  EXPECT_THROW(record_from_json(j), ParseError);
  EXPECT_THROW(records_from_csv("schema,group\r\n1,x\r\n"), ParseError);
}

// ---------------------------------------------------------------------------

TEST(Spec, CyclesAndSubgroups) {
  auto G = symmetric(4);
  EXPECT_EQ(parse_cycles("(1,2)(3,4)", 4), Permutation::from_cycles(4, {{0, 1}, {2, 3}}));
  EXPECT_EQ(parse_cycles("(1 2 3)", 4), Permutation::from_cycles(4, {{0, 1, 2}}));
  EXPECT_TRUE(parse_cycles("()", 4).is_identity());
  EXPECT_THROW(parse_cycles("(1 5)", 4), ParseError);
  EXPECT_THROW(parse_cycles("(1 2", 4), ParseError);
  EXPECT_THROW(parse_cycles("(1 1)", 4), ParseError);
  EXPECT_EQ(parse_subgroup(G, 2, "(1,2)(3,4);(1,3)(2,4)").order(), 4u);
  EXPECT_EQ(parse_subgroup(G, 2, "support:1,2,3").order(), 6u);
  EXPECT_EQ(parse_subgroup(G, 2, "o_p").order(), 4u);
  EXPECT_EQ(parse_subgroup(G, 3, "o_p_prime").order(), 4u);
  EXPECT_EQ(parse_subgroup(G, 3, "sylow").order(), 3u);
  EXPECT_EQ(parse_subgroup(G, 3, "derived").order(), 12u);
  EXPECT_EQ(parse_subgroup(G, 3, "c_o_p_prime").order(), 4u);
  EXPECT_THROW(parse_subgroup(alternating(4), 2, "(1,2)"), ParseError);
}

TEST(Spec, Limits) {
  auto lim = limits_from_json(nlohmann::json::parse(R"({"element_cap": 100, "poset_cap": 7, "coeff_box": 1})"));
  EXPECT_EQ(lim.element_cap, 100u);
  EXPECT_EQ(lim.poset_cap, 7u);
  EXPECT_EQ(lim.coeff_box, 1);
  EXPECT_EQ(lim.simplex_cap, Limits{}.simplex_cap);
  EXPECT_THROW(limits_from_json(nlohmann::json::parse(R"({"element_kap": 1})")), ParseError);
  EXPECT_THROW(limits_from_json(nlohmann::json::parse(R"({"poset_cap": 0})")), ParseError);
  EXPECT_THROW(limits_from_json(nlohmann::json::parse(R"({"poset_cap": "x"})")), ParseError);
}

// ---------------------------------------------------------------------------

namespace {

nlohmann::ordered_json run_verify(const std::string& kind, const std::string& g, std::uint32_t p,
                                  std::optional<std::string> sub = std::nullopt) {
  VerifyRequest q{kind, load_entry("builtin:" + g).group, p, std::move(sub), std::nullopt, 1};
  return verify(q);
}

}  // namespace

TEST(Verify, EveryKind) {
  EXPECT_EQ(run_verify("theorem1", "sym4", 3)["verdict"], "Verified");
  EXPECT_EQ(run_verify("inflation", "sym4", 2)["verdict"], "Verified");
  EXPECT_EQ(run_verify("inflation", "sym3xsym3", 2, "support:1,2,3")["verdict"], "Verified");
  EXPECT_EQ(run_verify("link", "sym3xsym3", 2, "support:1,2,3")["verdict"], "Verified");
  EXPECT_EQ(run_verify("retract", "sym4", 3, "derived")["verdict"], "Verified");
  EXPECT_EQ(run_verify("retract", "sym5", 2, "derived")["verdict"], "CounterWitness");
  EXPECT_EQ(run_verify("join", "sym3xsym3", 2, "support:1,2,3")["verdict"], "Verified");
  EXPECT_EQ(run_verify("join", "alt4xdih10", 2, "support:1,2,3,4")["verdict"], "Verified");
  EXPECT_EQ(run_verify("central-quotient", "sym3xcyc3", 2)["verdict"], "Verified");
  EXPECT_EQ(run_verify("shuffle", "sym3xsym3", 2, "support:1,2,3")["verdict"], "Verified");
  EXPECT_EQ(run_verify("propagation", "sym3xsym3", 2, "support:1,2,3")["verdict"], "Verified");
  auto e = run_verify("embedded", "alt5", 2);
  EXPECT_EQ(e["schema"], 1);
  EXPECT_EQ(e["components"], 5);
  EXPECT_EQ(e["verified"], true);
  EXPECT_EQ(e["m_order"], 12);
  for (const auto& k : verify_kinds()) {
    if (k == "embedded") continue;
    auto j = k == "join" || k == "shuffle" || k == "propagation" ? run_verify(k, "sym3xsym3", 2, "support:1,2,3")
             : k == "theorem1"                                   ? run_verify(k, "sym4", 3)
                                                                 : run_verify(k, "sym3xcyc3", 2);
    EXPECT_EQ(j.begin().key(), "schema") << k;
    EXPECT_TRUE(j.contains("steps")) << k;
  }
}

TEST(Verify, Errors) {
  EXPECT_THROW(run_verify("join", "sym3xsym3", 2), ParseError);
  EXPECT_THROW(run_verify("join", "sym4", 2, "support:1,2,3"), PreconditionViolated);
  EXPECT_THROW(run_verify("theorem1", "sym4", 5), PreconditionViolated);
  EXPECT_THROW(run_verify("frobnicate", "sym4", 2), ParseError);
  // A_3(S3) is a point, so there is no class to propagate
  EXPECT_THROW(run_verify("propagation", "sym3xsym3", 3, "support:1,2,3"), PreconditionViolated);
}
