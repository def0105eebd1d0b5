#include <gtest/gtest.h>

#include <numeric>
#include <random>

#include "oracle.hpp"
#include "quillen/perm/builtin.hpp"
#include "quillen/poset/group_poset.hpp"

using namespace quillen;

namespace {

std::set<oracle::Img> raw(const Subgroup& H) {
  std::set<oracle::Img> out;
  for (Elem e : H.elements()) {
    auto im = H.parent().element(e).images();
    out.emplace(im.begin(), im.end());
  }
  return out;
}

bool is_pow(std::size_t n, std::size_t p) {
  while (n % p == 0) n /= p;
  return n == 1;
}

Poset random_poset(std::mt19937& rng, std::size_t n, double density) {
  std::bernoulli_distribution coin(density);
  std::vector<std::vector<bool>> rel(n, std::vector<bool>(n, false));
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = i + 1; j < n; ++j) rel[i][j] = coin(rng);
  // transitive closure
  for (std::size_t k = 0; k < n; ++k)
    for (std::size_t i = 0; i < n; ++i)
      for (std::size_t j = 0; j < n; ++j)
        if (rel[i][k] && rel[k][j]) rel[i][j] = true;
  return Poset::from_relation(n, [&](std::size_t i, std::size_t j) { return i == j || rel[i][j]; });
}

}  // namespace

TEST(QuillenPoset, SmallExamples) {
  auto s3 = quillen_poset(symmetric(3), 2);
  EXPECT_EQ(s3.size(), 3u);
  EXPECT_EQ(connected_components(s3.poset()).size(), 3u);

  auto v = quillen_poset(klein_four(), 2);
  ASSERT_EQ(v.size(), 4u);
  EXPECT_EQ(v.poset().maximum(), std::optional<std::size_t>(3));
  EXPECT_FALSE(v.poset().minimum());
  EXPECT_EQ(cover_relation(v.poset()).size(), 3u);

  EXPECT_TRUE(quillen_poset(symmetric(3), 5).poset().empty());
}

TEST(QuillenPoset, OrderMatchesInclusionOracle) {
  for (const Group& G : {symmetric(4), dihedral(6), sl2(3), c3c3_by_klein()})
    for (std::uint32_t p : {2u, 3u}) {
      auto X = quillen_poset(G, p);
      for (std::size_t i = 0; i < X.size(); ++i)
        for (std::size_t j = 0; j < X.size(); ++j) {
          auto a = raw(X.node(i)), b = raw(X.node(j));
          bool sub = std::includes(b.begin(), b.end(), a.begin(), a.end());
          EXPECT_EQ(X.poset().leq(i, j), sub);
        }
    }
}

TEST(BrownPoset, CountsAllPSubgroups) {
  for (const Group& G : {symmetric(4), dihedral(8), sl2(3), frobenius(7, 3)})
    for (std::uint32_t p : {2u, 3u}) {
      std::size_t expect = 0;
      for (const auto& H : oracle::all_subgroups(raw(whole(G))))
        if (H.size() > 1 && is_pow(H.size(), p)) ++expect;
      EXPECT_EQ(brown_poset(G, p).size(), expect) << G.name() << " p=" << p;
    }
  EXPECT_EQ(brown_poset(symmetric(4), 2).size(), 19u);
}

TEST(Neighborhood, MeetsH) {
  auto G = direct_product(symmetric(3), symmetric(3));
  auto X = quillen_poset(G, 2);
  auto H = support_subgroup(G, {0, 1, 2});
  auto N = neighborhood(X, H);
  // A_2(S3 x S3): 15 subgroups of order 2 and 9 of order 4; N(H) keeps the
  // 3 inside H and the 9 fours
  EXPECT_EQ(X.size(), 24u);
  EXPECT_EQ(N.size(), 12u);
  for (std::size_t i = 0; i < N.size(); ++i) EXPECT_FALSE(intersection(N.node(i), H).is_trivial());
}

TEST(Inflation, RetractionIdentities) {
  auto G = direct_product(symmetric(3), symmetric(3));
  auto X = quillen_poset(G, 2);
  auto H = support_subgroup(G, {0, 1, 2});
  auto m = inflation_maps(X, H);
  EXPECT_EQ(m.sub.size(), 3u);
  EXPECT_TRUE(compose(m.inclusion, m.retraction).is_identity());
  EXPECT_TRUE(pointwise_leq(compose(m.retraction, m.inclusion), PosetMap::identity(m.nbhd.poset())));
  // fibers of the inclusion below each node of N(H) have a maximum
  EXPECT_TRUE(fiber_lemma_check(m.inclusion, FiberDirection::Down).certified);
}

TEST(LinkMaps, S3TimesC2) {
  auto G = direct_product(symmetric(3), cyclic(2));
  auto X = quillen_poset(G, 2);
  auto H = support_subgroup(G, {0, 1, 2});
  auto E = support_subgroup(G, {3, 4});
  auto L = link_maps(X, H, E);
  EXPECT_EQ(L.centralizer_poset.size(), 3u);
  EXPECT_EQ(L.upper.size(), 3u);
  EXPECT_TRUE(compose(L.f, L.g).is_identity());
  EXPECT_THROW(link_maps(X, H, X.node(0)), PreconditionViolated);
}

TEST(Join, ChainCountIsProduct) {
  std::mt19937 rng(7);
  for (int t = 0; t < 30; ++t) {
    Poset X = random_poset(rng, 1 + rng() % 6, 0.4);
    Poset Y = random_poset(rng, rng() % 6, 0.4);
    Poset J = join(X, Y);
    EXPECT_EQ(J.size(), X.size() + Y.size());
    EXPECT_EQ(all_chains(J).size() + 1, (all_chains(X).size() + 1) * (all_chains(Y).size() + 1));
  }
}

TEST(Link, IsJoinOfDownAndUp) {
  Poset C = Poset::chain(5);
  Poset L = link_poset(C, 2);
  EXPECT_EQ(L.size(), 4u);
  EXPECT_TRUE(L.maximum().has_value());
}

TEST(ChainPoset, CountsFaces) {
  EXPECT_EQ(chain_poset(Poset::chain(3)).size(), 7u);
  EXPECT_EQ(chain_poset(Poset::antichain(4)).size(), 4u);
  auto V = quillen_poset(klein_four(), 2).poset();
  EXPECT_EQ(chain_poset(V).size(), 7u);
}

TEST(Chains, FullAndAInitial) {
  auto V = quillen_poset(klein_four(), 2).poset();
  EXPECT_TRUE(is_full_chain(V, {0, 3}));
  EXPECT_FALSE(is_full_chain(V, {3}));
  EXPECT_TRUE(is_full_chain(V, {0}));
  EXPECT_THROW(is_full_chain(V, {0, 1}), NotAChain);

  EXPECT_TRUE(is_a_initial({1, 2}, {1, 2, 5}));
  EXPECT_FALSE(is_a_initial({1, 5}, {1, 2, 5}));
  EXPECT_TRUE(is_a_initial({}, {3}));
  EXPECT_THROW(is_a_initial({4}, {1, 2}), NotSubchain);
}

TEST(Certificates, ReplayOnExamples) {
  auto V = quillen_poset(klein_four(), 2);
  auto c = contractibility_certificate(V);
  ASSERT_TRUE(c);
  EXPECT_EQ(c->kind, CertificateKind::HasMaximum);
  EXPECT_TRUE(replay(*c, V.poset()));

  auto S4 = quillen_poset(symmetric(4), 2);
  auto s = contractibility_certificate(S4);
  ASSERT_TRUE(s);
  EXPECT_TRUE(replay(*s, S4.poset()));

  // D8 x C2 has a central subgroup of order 2 that is not the maximum
  auto D = quillen_poset(direct_product(dihedral(4), cyclic(2)), 2);
  auto d = contractibility_certificate(D);
  ASSERT_TRUE(d);
  EXPECT_TRUE(replay(*d, D.poset()));

  EXPECT_FALSE(contractibility_certificate(quillen_poset(symmetric(3), 2)));
  EXPECT_FALSE(contractibility_certificate(Poset::antichain(2)));
}

TEST(Certificates, TamperedCertificateFailsReplay) {
  auto S4 = quillen_poset(symmetric(4), 2);
  auto s = contractibility_certificate(S4);
  ASSERT_TRUE(s);
  auto bad = *s;
  if (bad.kind == CertificateKind::Dismantling) {
    bad.steps.pop_back();
  } else {
    bad.witness = 0;
  }
  EXPECT_FALSE(replay(bad, S4.poset()));
}

TEST(Filtration, AddsComplementOfNeighborhood) {
  auto G = direct_product(symmetric(3), symmetric(3));
  auto X = quillen_poset(G, 2);
  auto H = support_subgroup(G, {0, 1, 2});
  auto F = attachment_filtration(X, H);
  EXPECT_EQ(F.start.size() + F.steps.size(), X.size());
  for (const auto& s : F.steps) {
    EXPECT_TRUE(intersection(X.subgroup_of_key(s.key), H).is_trivial());
    EXPECT_EQ(s.link.size(), s.lower.size() + s.upper.size());
  }
}

TEST(Isomorphism, CentralQuotient) {
  auto G = direct_product(symmetric(3), cyclic(3));
  auto X = quillen_poset(G, 2);
  auto Z = support_subgroup(G, {3, 4, 5});
  auto Q = quotient(G, Z);
  auto Y = quillen_poset(Q.group, 2);
  EXPECT_TRUE(poset_isomorphic(X.poset(), Y.poset()).has_value());
  EXPECT_FALSE(poset_isomorphic(X.poset(), quillen_poset(klein_four(), 2).poset()).has_value());
}

TEST(Isomorphism, RandomRelabelling) {
  std::mt19937 rng(11);
  for (int t = 0; t < 20; ++t) {
    Poset X = random_poset(rng, 2 + rng() % 7, 0.35);
    // reverse a linear extension by sorting on (rank, random key)
    std::vector<std::size_t> perm(X.size());
    std::iota(perm.begin(), perm.end(), 0);
    std::vector<std::size_t> height(X.size(), 0);
    for (std::size_t i = 0; i < X.size(); ++i)
      for (std::size_t j = 0; j < i; ++j)
        if (X.lt(j, i)) height[i] = std::max(height[i], height[j] + 1);
    std::vector<unsigned> noise(X.size());
    for (auto& v : noise) v = unsigned(rng());
    std::sort(perm.begin(), perm.end(), [&](auto a, auto b) {
      return std::pair(height[a], noise[a]) < std::pair(height[b], noise[b]);
    });
    Poset Y = Poset::from_relation(X.size(), [&](std::size_t i, std::size_t j) { return X.leq(perm[i], perm[j]); });
    auto iso = poset_isomorphic(Y, X);
    ASSERT_TRUE(iso);
    for (std::size_t i = 0; i < X.size(); ++i)
      for (std::size_t j = 0; j < X.size(); ++j) EXPECT_EQ(Y.leq(i, j), X.leq((*iso)[i], (*iso)[j]));
  }
}

TEST(Json, CoversAndLabels) {
  auto V = quillen_poset(klein_four(), 2);
  auto j = poset_to_json(V.poset());
  EXPECT_EQ(j["nodes"].size(), 4u);
  EXPECT_EQ(j["covers"].size(), 3u);
  EXPECT_EQ(j["nodes"][0]["label"].get<std::string>().front(), '<');
}

TEST(PosetMap, RejectsNonMonotone) {
  Poset C = Poset::chain(2);
  EXPECT_THROW(PosetMap(C, C, {1, 0}), PreconditionViolated);
  PosetMap f(C, C, {1, 1});
  EXPECT_TRUE(pointwise_leq(PosetMap::identity(C), f));
}
