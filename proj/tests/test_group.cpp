#include "normtorus/group.hpp"

#include <gtest/gtest.h>

#include <random>
#include <set>

using namespace normtorus;

namespace {

// Brute force: set of cyclic subgroups as element sets, and the conjugacy
// classes among them, without using the library's subgroup routines.
std::set<std::set<Elem>> naive_cyclic(const FiniteGroup& g) {
  std::set<std::set<Elem>> out;
  for (Elem x = 0; x < g.order(); ++x) {
    std::set<Elem> c;
    Elem y = g.identity();
    do {
      c.insert(y);
      y = g.mul(y, x);
    } while (y != g.identity());
    out.insert(c);
  }
  return out;
}

std::size_t naive_class_count(const FiniteGroup& g) {
  auto all = naive_cyclic(g);
  std::set<std::set<Elem>> seen;
  std::size_t classes = 0;
  for (const auto& c : all) {
    if (seen.count(c)) continue;
    ++classes;
    for (Elem x = 0; x < g.order(); ++x) {
      std::set<Elem> conj;
      for (Elem y : c) conj.insert(g.mul(g.mul(x, y), g.inv(x)));
      seen.insert(conj);
    }
  }
  return classes;
}

}  // namespace

TEST(BuildGroup, KleinFour) {
  auto g = build_group(GroupSpec::cyclic_product({2, 2}));
  EXPECT_EQ(g->order(), 4u);
  for (Elem x = 1; x < 4; ++x) EXPECT_EQ(g->element_order(x), 2u);
  EXPECT_EQ(g->element_label(2), "(1,0)");
}

TEST(BuildGroup, Z3xZ3HasExponentThree) {
  auto g = build_group(GroupSpec::cyclic_product({3, 3}));
  EXPECT_EQ(g->order(), 9u);
  for (Elem x = 1; x < 9; ++x) EXPECT_EQ(g->element_order(x), 3u);
}

TEST(BuildGroup, S3CyclicClasses) {
  auto g = build_group(GroupSpec::symmetric(3));
  EXPECT_EQ(g->order(), 6u);
  EXPECT_EQ(g->identity(), 0u);
  EXPECT_EQ(g->element_label(0), "[1 2 3]");
  auto reps = cyclic_subgroup_reps(g);
  ASSERT_EQ(reps.size(), 3u);
  EXPECT_EQ(reps[0].order(), 1u);
  EXPECT_EQ(reps[1].order(), 2u);
  EXPECT_EQ(reps[2].order(), 3u);
  // class sizes 3 (order two) and 1 (order three)
  std::set<std::vector<Elem>> cls2, cls3;
  for (Elem x = 0; x < 6; ++x) {
    cls2.insert(conjugate(reps[1], x).elements());
    cls3.insert(conjugate(reps[2], x).elements());
  }
  EXPECT_EQ(cls2.size(), 3u);
  EXPECT_EQ(cls3.size(), 1u);
}

TEST(BuildGroup, RejectsBadTables) {
  EXPECT_THROW(build_group(GroupSpec::explicit_table({{0, 1}, {1, 1}})), BadIdentity);
  // a Latin square with identity 0 that is not associative (order 5)
  std::vector<std::vector<Elem>> t{{0, 1, 2, 3, 4}, {1, 0, 3, 4, 2}, {2, 4, 0, 1, 3}, {3, 2, 4, 0, 1}, {4, 3, 1, 2, 0}};
  EXPECT_THROW(build_group(GroupSpec::explicit_table(t)), NonAssociativeTable);
  EXPECT_THROW(build_group(GroupSpec::explicit_table({{0, 3}, {1, 0}})), ElementOutOfRange);
}

TEST(BuildGroup, ExplicitTableWithIdentityElsewhere) {
  // Z/2 with the identity stored at index 1
  auto g = build_group(GroupSpec::explicit_table({{1, 0}, {0, 1}}));
  EXPECT_EQ(g->identity(), 1u);
  EXPECT_EQ(g->inv(0), 0u);
}

TEST(Subgroups, Closure) {
  auto g = build_group(GroupSpec::symmetric(3));
  EXPECT_TRUE(subgroup_closure(g, {}).is_trivial());
  EXPECT_EQ(subgroup_closure(g, {1}).order(), 2u);  // [1 3 2] is a transposition
  EXPECT_TRUE(subgroup_closure(g, {1, 2}).is_whole());
  EXPECT_THROW(subgroup_closure(g, {6}), ElementOutOfRange);
}

TEST(Subgroups, CyclicRepsSmallGroups) {
  EXPECT_EQ(cyclic_subgroup_reps(build_group(GroupSpec::cyclic_product({2, 2}))).size(), 4u);
  auto z4 = cyclic_subgroup_reps(build_group(GroupSpec::cyclic_product({4})));
  ASSERT_EQ(z4.size(), 3u);
  EXPECT_EQ(z4[0].order(), 1u);
  EXPECT_EQ(z4[1].order(), 2u);
  EXPECT_EQ(z4[2].order(), 4u);
}

TEST(Subgroups, CyclicRepsCoverAllCyclicSubgroups) {
  const std::vector<GroupSpec> specs{
      GroupSpec::symmetric(3), GroupSpec::symmetric(4), GroupSpec::cyclic_product({2, 2, 2}),
      GroupSpec::cyclic_product({4, 2}), GroupSpec::cyclic_product({3, 3}), GroupSpec::cyclic_product({12}),
      GroupSpec{{{GroupFactor::Kind::Symmetric, 3}, {GroupFactor::Kind::Cyclic, 2}}, {}},
      GroupSpec{{{GroupFactor::Kind::Symmetric, 3}, {GroupFactor::Kind::Cyclic, 4}}, {}},
  };
  for (const auto& s : specs) {
    auto g = build_group(s);
    auto reps = cyclic_subgroup_reps(g);
    EXPECT_EQ(reps.size(), naive_class_count(*g)) << s.str();
    std::set<std::set<Elem>> covered;
    for (const auto& r : reps)
      for (Elem x = 0; x < g->order(); ++x) {
        auto c = conjugate(r, x).elements();
        covered.insert(std::set<Elem>(c.begin(), c.end()));
      }
    EXPECT_EQ(covered, naive_cyclic(*g)) << s.str();
  }
}

TEST(Subgroups, AssociativityOfBuiltGroups) {
  for (const auto& s : {GroupSpec::symmetric(4), GroupSpec::cyclic_product({2, 3, 4}), GroupSpec::symmetric(5)}) {
    auto g = build_group(s);
    std::mt19937 rng(3);
    std::uniform_int_distribution<Elem> pick(0, static_cast<Elem>(g->order() - 1));
    const bool exhaustive = g->order() <= 64;
    const std::size_t trials = exhaustive ? g->order() * g->order() * g->order() : 100000;
    for (std::size_t t = 0; t < trials; ++t) {
      Elem a, b, c;
      if (exhaustive) {
        a = static_cast<Elem>(t % g->order());
        b = static_cast<Elem>((t / g->order()) % g->order());
        c = static_cast<Elem>(t / (g->order() * g->order()));
      } else {
        a = pick(rng);
        b = pick(rng);
        c = pick(rng);
      }
      ASSERT_EQ(g->mul(g->mul(a, b), c), g->mul(a, g->mul(b, c)));
    }
  }
}

TEST(Subgroups, LagrangeAndNormality) {
  auto g = build_group(GroupSpec::symmetric(4));
  for (Elem x = 0; x < g->order(); ++x)
    for (Elem y = 0; y < g->order(); y += 5) {
      Subgroup h = subgroup_closure(g, {x, y});
      EXPECT_EQ(g->order() % h.order(), 0u);
      Subgroup nc = normal_closure(h);
      Subgroup co = core(h);
      EXPECT_TRUE(is_normal(nc));
      EXPECT_TRUE(is_normal(co));
      EXPECT_TRUE(h.is_subgroup_of(nc));
      EXPECT_TRUE(co.is_subgroup_of(h));
    }
}

TEST(Subgroups, ClosureAndCoreOfTranspositionInS3) {
  auto g = build_group(GroupSpec::symmetric(3));
  Subgroup t = subgroup_closure(g, {1});
  EXPECT_TRUE(normal_closure(t).is_whole());
  EXPECT_TRUE(core(t).is_trivial());
  auto z2cubed = build_group(GroupSpec::cyclic_product({2, 2, 2}));
  Subgroup h = subgroup_closure(z2cubed, {3});
  EXPECT_EQ(normal_closure(h), h);
  EXPECT_EQ(core(h), h);
}

TEST(Quotients, Examples) {
  auto g = build_group(GroupSpec::cyclic_product({4, 2}));
  auto q0 = quotient_group(trivial_subgroup(g));
  EXPECT_EQ(q0.group->order(), 8u);
  EXPECT_EQ(abelian_invariants_of_group(*q0.group).factors_str(), "[2,4]");
  // Z/2 x {0} inside Z/4 x Z/2 is generated by (2,0)
  Subgroup n = subgroup_closure(g, {4});
  auto q = quotient_group(n);
  EXPECT_EQ(abelian_invariants_of_group(*q.group).factors_str(), "[2,2]");

  auto s3 = build_group(GroupSpec::symmetric(3));
  Subgroup a3 = commutator_subgroup(s3);
  EXPECT_EQ(a3.order(), 3u);
  EXPECT_EQ(quotient_group(a3).group->order(), 2u);
  EXPECT_THROW(quotient_group(subgroup_closure(s3, {1})), NotNormal);
}

TEST(Quotients, AbelianInvariantsByTorsionCounting) {
  EXPECT_EQ(abelian_invariants_of_group(*build_group(GroupSpec::cyclic_product({6, 4}))).factors_str(), "[2,12]");
  EXPECT_EQ(abelian_invariants_of_group(*build_group(GroupSpec::cyclic_product({2, 2, 8}))).factors_str(), "[2,2,8]");
  EXPECT_TRUE(abelian_invariants_of_group(*build_group(GroupSpec::cyclic_product({1}))).is_trivial());
  EXPECT_THROW(abelian_invariants_of_group(*build_group(GroupSpec::symmetric(3))), HypothesisViolated);
}

TEST(Cosets, ActionIsAHomomorphism) {
  auto g = build_group(GroupSpec::symmetric(4));
  Subgroup h = subgroup_closure(g, {1, 2});
  CosetAction ca = coset_action(h);
  EXPECT_EQ(ca.num_cosets(), 4u);
  for (Elem a = 0; a < g->order(); ++a) {
    std::set<std::size_t> image(ca.act[a].begin(), ca.act[a].end());
    EXPECT_EQ(image.size(), ca.num_cosets());
    for (Elem b = 0; b < g->order(); ++b)
      for (std::size_t i = 0; i < ca.num_cosets(); ++i)
        EXPECT_EQ(ca.act[g->mul(a, b)][i], ca.act[a][ca.act[b][i]]);
  }
}
