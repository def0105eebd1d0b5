#include <gtest/gtest.h>

#include <random>

#include "oracle.hpp"
#include "quillen/perm/builtin.hpp"
#include "quillen/perm/group.hpp"
#include "quillen/perm/io.hpp"

using namespace quillen;

namespace {

std::vector<oracle::Img> raw_gens(const Group& G) {
  std::vector<oracle::Img> out;
  for (const auto& g : G.generators()) out.emplace_back(g.images().begin(), g.images().end());
  return out;
}

std::set<oracle::Img> raw_elements(const Subgroup& H) {
  std::set<oracle::Img> out;
  for (Elem e : H.elements()) {
    auto im = H.parent().element(e).images();
    out.emplace(im.begin(), im.end());
  }
  return out;
}

}  // namespace

TEST(Permutation, ComposeConvention) {
  auto a = Permutation::from_cycles(3, {{0, 1}});
  auto b = Permutation::from_cycles(3, {{1, 2}});
  auto c = compose(a, b);
  // Hand table: 0 -a-> 1 -b-> 2, 1 -a-> 0 -b-> 0, 2 -a-> 2 -b-> 1.
  EXPECT_EQ(c[0], 2u);
  EXPECT_EQ(c[1], 0u);
  EXPECT_EQ(c[2], 1u);
  EXPECT_EQ(c.to_cycle_string(), "(1 3 2)");
}

TEST(Permutation, IdentityAndInverse) {
  auto g = Permutation::from_cycles(5, {{0, 3, 4}, {1, 2}});
  EXPECT_EQ(compose(Permutation::identity(5), g), g);
  EXPECT_TRUE(compose(g, g.inverse()).is_identity());
  EXPECT_EQ(g.order(), 6u);
}

TEST(Permutation, Errors) {
  EXPECT_THROW(compose(Permutation(3), Permutation(4)), DegreeMismatch);
  EXPECT_THROW(Permutation(std::vector<Point>{0, 0, 1}), Error);
}

TEST(Generate, SmallGroups) {
  auto S3 = generate(3, {Permutation::from_cycles(3, {{0, 1}}), Permutation::from_cycles(3, {{0, 1, 2}})});
  EXPECT_EQ(S3.order(), 6u);
  EXPECT_EQ(generate(1, {}).order(), 1u);
  auto P = psl2(8);
  EXPECT_EQ(P.degree(), 9u);
  EXPECT_EQ(P.order(), 504u);  // q(q^2-1)/gcd(2,q-1)
}

TEST(Generate, OrdersMatchBruteForceClosure) {
  for (const Group& G : {symmetric(4), alternating(5), dihedral(7), frobenius(7, 3), psl2(4), klein_four(),
                         sl2(3), c3c3_by_klein()}) {
    auto ref = oracle::closure(G.degree(), raw_gens(G));
    EXPECT_EQ(G.order(), ref.size()) << G.name();
    EXPECT_EQ(raw_elements(whole(G)), ref) << G.name();
  }
}

TEST(Generate, BuiltinOrders) {
  EXPECT_EQ(psl2(5).order(), 60u);
  EXPECT_EQ(psl2(7).order(), 168u);
  EXPECT_EQ(psl2(9).order(), 360u);
  EXPECT_EQ(psl2(11).order(), 660u);
  EXPECT_EQ(psl2(13).order(), 1092u);
  EXPECT_EQ(pgammal2(8).order(), 1512u);
  EXPECT_EQ(mathieu11().order(), 7920u);
  EXPECT_EQ(sl2(5).order(), 120u);
  EXPECT_EQ(frobenius(11, 5).order(), 55u);
  EXPECT_EQ(symmetric(8).order(), 40320u);
}

TEST(Generate, CapExceeded) {
  try {
    symmetric(6, 100);
    FAIL();
  } catch (const CapExceeded& e) {
    EXPECT_EQ(e.cap(), 100u);
  }
  EXPECT_THROW(generate(3, {Permutation(4)}), DegreeMismatch);
}

TEST(Group, ClosureIdentityInverseElementwise) {
  for (const Group& G : {symmetric(4), psl2(7), dihedral(10)}) {
    for (Elem a = 0; a < G.order(); ++a) {
      EXPECT_EQ(G.mul(a, G.inv(a)), Group::identity());
      for (Elem b = 0; b < G.order(); b += 7)
        EXPECT_EQ(G.element(G.mul(a, b)), compose(G.element(a), G.element(b)));
    }
  }
}

TEST(Group, RandomInverseProperty) {
  std::mt19937 rng(12345);
  std::vector<Group> corpus = {symmetric(5), psl2(8), mathieu11(), sl2(5), wreath_cyclic(symmetric(3), 2)};
  for (int i = 0; i < 1000; ++i) {
    const Group& G = corpus[i % corpus.size()];
    const auto& g = G.element(Elem(rng() % G.order()));
    EXPECT_TRUE(compose(g, g.inverse()).is_identity());
  }
}

TEST(Subgroup, Generated) {
  auto S4 = symmetric(4);
  EXPECT_TRUE(subgroup_generated(S4, std::vector<Elem>{}).is_trivial());
  std::vector<Elem> all(S4.order());
  std::iota(all.begin(), all.end(), 0u);
  EXPECT_EQ(subgroup_generated(S4, all).order(), 24u);
  auto V = subgroup_from_permutations(S4, {Permutation::from_cycles(4, {{0, 1}, {2, 3}}),
                                           Permutation::from_cycles(4, {{0, 2}, {1, 3}})});
  EXPECT_EQ(V.order(), 4u);
  EXPECT_THROW(subgroup_generated(S4, std::vector<Elem>{999}), ElementNotInParent);
}

TEST(Subgroup, LagrangeAndClosureOnAllSubgroups) {
  auto G = symmetric(4);
  for (Elem a = 0; a < G.order(); ++a)
    for (Elem b = a; b < G.order(); b += 3) {
      auto H = subgroup_generated(G, {a, b});
      EXPECT_EQ(G.order() % H.order(), 0u);
      EXPECT_TRUE(oracle::is_closed(raw_elements(H)));
    }
}

TEST(Subgroup, CentralizerNormalizerCenter) {
  auto S3 = symmetric(3);
  EXPECT_EQ(centralizer(S3, trivial_subgroup(S3)).order(), 6u);
  EXPECT_TRUE(center(S3).is_trivial());
  EXPECT_EQ(normalizer(S3, whole(S3)).order(), 6u);
  EXPECT_EQ(center(sl2(3)).order(), 2u);
  EXPECT_EQ(center(dihedral(8)).order(), 2u);
}

TEST(Subgroup, ConjugationProperties) {
  auto G = symmetric(5);
  std::mt19937 rng(7);
  for (int i = 0; i < 50; ++i) {
    auto H = subgroup_generated(G, {Elem(rng() % G.order()), Elem(rng() % G.order())});
    Elem g = Elem(rng() % G.order());
    auto Hg = conjugate(H, g);
    EXPECT_EQ(Hg.order(), H.order());
    // g^-1 h g convention, checked on raw permutations
    for (Elem h : H.elements()) {
      auto x = compose(compose(G.element(g).inverse(), G.element(h)), G.element(g));
      EXPECT_TRUE(Hg.contains(G.id_of(x)));
    }
    auto N = normalizer(G, H);
    auto C = centralizer(G, H);
    EXPECT_TRUE(is_subgroup_of(H, N));
    EXPECT_TRUE(is_subgroup_of(C, N));
  }
}

TEST(Subgroup, CommutatorSubgroup) {
  EXPECT_TRUE(commutator_subgroup(cyclic(6)).is_trivial());
  EXPECT_EQ(commutator_subgroup(symmetric(4)).order(), 12u);
  EXPECT_EQ(commutator_subgroup(alternating(5)).order(), 60u);
  EXPECT_EQ(commutator_subgroup(sl2(3)).order(), 8u);
}

TEST(Subgroup, NormalClosureMatchesBruteForce) {
  auto G = symmetric(4);
  auto raw = raw_elements(whole(G));
  for (Elem x = 0; x < G.order(); ++x) {
    auto N = normal_closure(whole(G), std::vector<Elem>{x});
    EXPECT_TRUE(oracle::is_normal(raw_elements(N), raw));
    // brute-force: closure of the conjugacy class
    std::vector<oracle::Img> cls;
    for (Elem g = 0; g < G.order(); ++g) {
      auto im = G.element(G.conj(x, g)).images();
      cls.emplace_back(im.begin(), im.end());
    }
    EXPECT_EQ(raw_elements(N), oracle::closure(4, cls));
  }
}

TEST(Quotient, Orders) {
  auto S4 = symmetric(4);
  auto V = subgroup_from_permutations(S4, {Permutation::from_cycles(4, {{0, 1}, {2, 3}}),
                                           Permutation::from_cycles(4, {{0, 2}, {1, 3}})});
  auto q = quotient(S4, V);
  EXPECT_EQ(q.group.order(), 6u);
  EXPECT_EQ(q.group.degree(), 6u);
  auto reg = quotient(S4, trivial_subgroup(S4));
  EXPECT_EQ(reg.group.order(), 24u);
  EXPECT_EQ(reg.group.degree(), 24u);
  EXPECT_EQ(quotient(S4, whole(S4)).group.order(), 1u);
  auto T = subgroup_from_permutations(S4, {Permutation::from_cycles(4, {{0, 1}})});
  EXPECT_THROW(quotient(S4, T), NotNormal);
}

TEST(Quotient, IsHomomorphismWithSection) {
  auto G = sl2(3);
  auto Z = center(G);
  auto q = quotient(G, Z);
  EXPECT_EQ(q.group.order() * Z.order(), G.order());
  for (Elem a = 0; a < G.order(); ++a)
    for (Elem b = 0; b < G.order(); ++b) EXPECT_EQ(q.image[G.mul(a, b)], q.group.mul(q.image[a], q.image[b]));
  for (std::size_t c = 0; c < q.section.size(); ++c) EXPECT_EQ(q.coset_of[q.section[c]], c);
}

TEST(Products, Orders) {
  auto S3 = symmetric(3);
  EXPECT_EQ(direct_product(trivial_group(), S3).order(), 6u);
  EXPECT_EQ(direct_product(S3, dihedral(5)).order(), 60u);
  EXPECT_EQ(wreath_cyclic(S3, 2).order(), 72u);
  EXPECT_EQ(wreath_cyclic(S3, 1).order(), 6u);
  EXPECT_EQ(wreath_cyclic(cyclic(2), 3).order(), 24u);
  EXPECT_THROW(wreath_cyclic(S3, 8, 1000), CapExceeded);
}

TEST(Products, SupportSubgroup) {
  auto G = direct_product(symmetric(3), symmetric(3));
  EXPECT_EQ(support_subgroup(G, {0, 1, 2}).order(), 6u);
  EXPECT_EQ(support_subgroup(G, {3, 4, 5}).order(), 6u);
}

TEST(GroupJson, RoundTrip) {
  auto G = mathieu11();
  auto j = group_to_json(G);
  EXPECT_EQ(j["generators"][0][0], 2);  // 1-based
  auto H = group_from_json(j);
  EXPECT_EQ(H.order(), 7920u);
  EXPECT_EQ(H.name(), "M11");
  EXPECT_THROW(group_from_json(nlohmann::json::parse(R"({"degree":2,"generators":[[1,3]]})")), ParseError);
  EXPECT_THROW(group_from_json(nlohmann::json::parse(R"({"generators":[]})")), ParseError);
}
