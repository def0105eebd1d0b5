#include <gtest/gtest.h>

#include "oracle.hpp"
#include "quillen/local/local.hpp"
#include "quillen/perm/builtin.hpp"

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

std::uint64_t raw_order_is_power(std::size_t n, std::uint32_t p) {
  while (n % p == 0) n /= p;
  return n == 1;
}

// Largest normal p-subgroup found among all subgroups (small groups only).
std::size_t oracle_op(const Group& G, std::uint32_t p) {
  auto all = raw(whole(G));
  std::size_t best = 1;
  for (const auto& H : oracle::all_subgroups(all))
    if (raw_order_is_power(H.size(), p) && oracle::is_normal(H, all)) best = std::max(best, H.size());
  return best;
}

std::size_t oracle_op_prime(const Group& G, std::uint32_t p) {
  auto all = raw(whole(G));
  std::size_t best = 1;
  for (const auto& H : oracle::all_subgroups(all))
    if (H.size() % p != 0 && oracle::is_normal(H, all)) best = std::max(best, H.size());
  return best;
}

std::size_t oracle_max_p_subgroup(const Group& G, std::uint32_t p) {
  std::size_t best = 1;
  for (const auto& H : oracle::all_subgroups(raw(whole(G))))
    if (raw_order_is_power(H.size(), p)) best = std::max(best, H.size());
  return best;
}

}  // namespace

TEST(Sylow, Examples) {
  EXPECT_EQ(sylow(symmetric(4), 2).order(), 8u);
  EXPECT_EQ(sylow(symmetric(3), 3).order(), 3u);
  EXPECT_TRUE(sylow(symmetric(3), 5).is_trivial());
  EXPECT_EQ(sylow(mathieu11(), 2).order(), 16u);
  EXPECT_EQ(sylow(mathieu11(), 3).order(), 9u);
  EXPECT_EQ(sylow(symmetric(8), 2).order(), 128u);
}

TEST(Sylow, MatchesLargestPSubgroup) {
  for (const Group& G : {symmetric(4), dihedral(6), frobenius(7, 3), sl2(3)})
    for (std::uint32_t p : {2u, 3u, 7u}) {
      auto P = sylow(G, p);
      EXPECT_TRUE(is_p_group(P, p));
      EXPECT_EQ(P.order(), oracle_max_p_subgroup(G, p)) << G.name() << " p=" << p;
    }
}

TEST(Op, Examples) {
  auto S4 = symmetric(4);
  EXPECT_EQ(o_p(S4, 2).order(), 4u);
  EXPECT_TRUE(o_p(S4, 3).is_trivial());
  EXPECT_EQ(o_p(klein_four(), 2).order(), 4u);
  EXPECT_EQ(o_p_prime(S4, 3).order(), 4u);
  EXPECT_EQ(o_p_prime(symmetric(3), 2).order(), 3u);
  EXPECT_TRUE(o_p_prime(elementary_abelian_group(3, 2), 3).is_trivial());
  EXPECT_EQ(o_p(sl2(3), 2).order(), 8u);
  EXPECT_EQ(o_p_prime(sl2(3), 3).order(), 8u);
}

TEST(Op, MatchesSubgroupScan) {
  for (const Group& G : {symmetric(4), dihedral(6), dihedral(9), frobenius(7, 3), frobenius(5, 4), sl2(3),
                         direct_product(symmetric(3), cyclic(3)), alternating(4)})
    for (std::uint32_t p : {2u, 3u, 5u}) {
      auto O = o_p(G, p);
      EXPECT_TRUE(is_p_group(O, p));
      EXPECT_TRUE(is_normal_in(O, whole(G)));
      EXPECT_EQ(O.order(), oracle_op(G, p)) << G.name() << " p=" << p;
      auto Q = o_p_prime(G, p);
      EXPECT_TRUE(is_normal_in(Q, whole(G)));
      EXPECT_EQ(Q.order(), oracle_op_prime(G, p)) << G.name() << " p=" << p;
    }
}

TEST(Omega1, Examples) {
  EXPECT_EQ(omega1(elementary_abelian_group(2, 3), 2).order(), 8u);
  EXPECT_EQ(omega1(cyclic(4), 2).order(), 2u);
  EXPECT_EQ(omega1(symmetric(3), 3).order(), 3u);
  EXPECT_EQ(omega1(symmetric(4), 3).order(), 12u);
}

TEST(ElementaryAbelians, Examples) {
  auto s3 = elementary_abelians(symmetric(3), 2);
  ASSERT_EQ(s3.size(), 3u);
  for (const auto& e : s3) EXPECT_EQ(e.rank, 1u);
  auto v = elementary_abelians(klein_four(), 2);
  ASSERT_EQ(v.size(), 4u);
  EXPECT_EQ(v[3].rank, 2u);
  EXPECT_TRUE(elementary_abelians(symmetric(3), 5).empty());
  EXPECT_THROW(elementary_abelians(symmetric(6), 2, 10), CapExceeded);
}

TEST(ElementaryAbelians, MatchesSubgroupScan) {
  for (const Group& G : {symmetric(4), dihedral(4), sl2(3), elementary_abelian_group(2, 3), c3c3_by_klein()})
    for (std::uint32_t p : {2u, 3u}) {
      std::set<std::set<oracle::Img>> expect;
      for (const auto& H : oracle::all_subgroups(raw(whole(G)))) {
        if (H.size() == 1 || !raw_order_is_power(H.size(), p)) continue;
        bool ok = true;
        for (const auto& a : H) {
          if (oracle::elem_order(a) > p) ok = false;
          for (const auto& b : H)
            if (oracle::mul(a, b) != oracle::mul(b, a)) ok = false;
        }
        if (ok) expect.insert(H);
      }
      std::set<std::set<oracle::Img>> got;
      for (const auto& e : elementary_abelians(G, p)) {
        EXPECT_TRUE(is_elementary_abelian(e.subgroup, p));
        EXPECT_EQ(e.subgroup.order(), std::size_t(std::pow(p, e.rank)));
        got.insert(raw(e.subgroup));
      }
      EXPECT_EQ(got, expect) << G.name() << " p=" << p;
    }
}

TEST(PRank, TableValues) {
  EXPECT_EQ(p_rank(pgammal2(8), 3), 2u);
  EXPECT_EQ(p_rank(alternating(5), 2), 2u);
  EXPECT_EQ(p_rank(cyclic(9), 3), 1u);
  EXPECT_EQ(p_rank(mathieu11(), 3), 2u);
  EXPECT_EQ(p_rank(symmetric(3), 5), 0u);
}

TEST(Simplicity, Examples) {
  EXPECT_TRUE(is_simple(alternating(5)));
  EXPECT_TRUE(is_perfect(alternating(5)));
  EXPECT_TRUE(is_quasisimple(alternating(5)));
  EXPECT_FALSE(is_simple(symmetric(3)));
  EXPECT_FALSE(is_perfect(symmetric(3)));
  EXPECT_FALSE(is_simple(cyclic(3)));
  EXPECT_TRUE(is_simple(psl2(7)));
  EXPECT_TRUE(is_simple(mathieu11()));
  EXPECT_FALSE(is_simple(sl2(5)));
  EXPECT_TRUE(is_quasisimple(sl2(5)));
  EXPECT_FALSE(is_quasisimple(sl2(3)));
}

TEST(Components, Examples) {
  auto A5 = alternating(5);
  auto c = components(A5);
  ASSERT_EQ(c.components.size(), 1u);
  EXPECT_EQ(c.components[0].order(), 60u);
  EXPECT_TRUE(c.fitting.is_trivial());
  EXPECT_EQ(c.generalized_fitting.order(), 60u);

  auto s4 = components(symmetric(4));
  EXPECT_TRUE(s4.components.empty());
  EXPECT_EQ(s4.fitting.order(), 4u);
  EXPECT_EQ(s4.generalized_fitting.order(), 4u);

  auto AA = direct_product(A5, A5);
  auto cc = components(AA);
  EXPECT_EQ(cc.components.size(), 2u);
  EXPECT_EQ(cc.generalized_fitting.order(), 3600u);
}

TEST(Components, StructuralInvariants) {
  for (const Group& G : {direct_product(alternating(5), symmetric(3)), wreath_cyclic(alternating(5), 2),
                         sl2(5), symmetric(5), direct_product(sl2(5), cyclic(2))}) {
    auto c = components(G);
    auto W = whole(G);
    for (std::size_t i = 0; i < c.components.size(); ++i) {
      const auto& L = c.components[i];
      EXPECT_TRUE(is_perfect(L));
      EXPECT_TRUE(is_quasisimple(L));
      EXPECT_TRUE(is_subnormal(L, W));
      for (std::size_t j = i + 1; j < c.components.size(); ++j)
        EXPECT_TRUE(is_subgroup_of(c.components[j], centralizer(W, L)));
    }
    // F*(G) is self-centralizing: C_G(F*) = Z(F)
    EXPECT_EQ(centralizer(W, c.generalized_fitting), center(c.fitting)) << G.name();
  }
}

TEST(Components, WreathHasTwoComponents) {
  auto c = components(wreath_cyclic(alternating(5), 2));
  EXPECT_EQ(c.components.size(), 2u);
  EXPECT_EQ(c.layer.order(), 3600u);
}

TEST(Faithful, Examples) {
  auto S3 = symmetric(3);
  auto A = subgroup_from_permutations(S3, {Permutation::from_cycles(3, {{0, 1, 2}})});
  EXPECT_FALSE(acts_faithfully(A, A));
  EXPECT_TRUE(acts_faithfully(trivial_subgroup(S3), A));
  auto T = subgroup_from_permutations(S3, {Permutation::from_cycles(3, {{0, 1}})});
  EXPECT_TRUE(acts_faithfully(T, A));
  EXPECT_THROW(acts_faithfully(A, T), NotNormalizing);
}

TEST(Outer, Examples) {
  auto S5 = symmetric(5);
  auto A5 = subgroup_from_permutations(S5, {Permutation::from_cycles(5, {{0, 1, 2}}),
                                            Permutation::from_cycles(5, {{0, 1, 2, 3, 4}})});
  ASSERT_EQ(A5.order(), 60u);
  auto E = subgroup_from_permutations(S5, {Permutation::from_cycles(5, {{0, 1}})});
  EXPECT_TRUE(induces_outer(E, A5, S5));
  auto E2 = subgroup_from_permutations(S5, {Permutation::from_cycles(5, {{0, 1}, {2, 3}})});
  EXPECT_FALSE(induces_outer(E2, A5, S5));
  auto G = direct_product(symmetric(3), cyclic(2));
  auto L = support_subgroup(G, {0, 1, 2});
  auto C = support_subgroup(G, {3, 4});
  EXPECT_FALSE(induces_outer(C, L, G));
}

TEST(LocalStructure, Assembles) {
  auto s = local_structure(symmetric(4), 3);
  EXPECT_EQ(s.sylow.order(), 3u);
  EXPECT_TRUE(s.o_p.is_trivial());
  EXPECT_EQ(s.o_p_prime.order(), 4u);
  EXPECT_EQ(s.omega1.order(), 12u);
  EXPECT_EQ(s.p_rank, 1u);
}
