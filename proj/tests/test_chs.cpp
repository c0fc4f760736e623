#include "anchors.hpp"
#include "corpus.hpp"
#include "normtorus/chs.hpp"

#include <gtest/gtest.h>

using namespace normtorus;
using namespace normtorus::testing;

namespace {

GroupPtr z(std::initializer_list<unsigned> ns) { return build_group(GroupSpec::cyclic_product(ns)); }

Scenario make(GroupPtr g, Subgroup hk, PData p) { return Scenario{"t", std::move(g), std::move(hk), std::move(p), {}, {}}; }

}  // namespace

TEST(BsSequence, CyclicKHasNothing) {
  auto g = z({4});
  BSReport r = bs_sequence(make(g, trivial_subgroup(g), PData{{subgroup_closure(g, {2}), 1}}));
  EXPECT_TRUE(r.left.is_trivial());
  EXPECT_TRUE(r.right.is_trivial());
  EXPECT_EQ(r.middle_order, Integer(1));
  ASSERT_TRUE(r.middle_structure.has_value());
  EXPECT_TRUE(r.middle_structure->is_trivial());
}

TEST(BsSequence, BicyclicDegreeNine) {
  auto g = z({3, 3});
  BSReport r = bs_sequence(make(g, trivial_subgroup(g), PData{{subgroup_closure(g, {1}), 1}}));
  EXPECT_TRUE(r.left.is_trivial());
  EXPECT_EQ(r.right.str(), "Z/3");
  EXPECT_EQ(r.middle_order, Integer(3));
  EXPECT_EQ(r.middle_structure->str(), "Z/3");
}

TEST(BsSequence, S3OrderIsProductOfEnds) {
  auto g = build_group(GroupSpec::symmetric(3));
  Scenario s = make(g, subgroup_closure(g, {1}), PData{{subgroup_closure(g, {3}), 1}});
  BSReport r = bs_sequence(s);
  EXPECT_EQ(r.left.str(), kS3H1DefectAnchor);
  EXPECT_EQ(r.middle_order, r.left.torsion_order() * r.right.torsion_order());
}

TEST(Br1, ProductGroupExample) {
  auto g = z({2, 3});
  Scenario s = make(g, subgroup_closure(g, {3}), PData{{subgroup_closure(g, {1}), 1}});
  ASSERT_EQ(s.hk.order(), 2u);
  ASSERT_EQ(s.factors[0].subgroup.order(), 3u);
  Verdict v = br1_verdict(s);
  EXPECT_EQ(v.claim, Claim::UnramifiedQuotientZero);
  EXPECT_EQ(v.checks.size(), 2u);
  EXPECT_FALSE(v.reasons.empty());
}

TEST(Br1, SplitFactorAndRemarkCase) {
  auto g = z({2, 2, 2});
  Verdict split = br1_verdict(make(g, trivial_subgroup(g), PData{{whole_group(g), 1}}));
  EXPECT_EQ(split.claim, Claim::UnramifiedQuotientZero);
  Verdict remark = br1_verdict(make(g, trivial_subgroup(g), PData{{subgroup_closure(g, {1}), 1}}));
  EXPECT_EQ(remark.claim, Claim::Inconclusive);
  ASSERT_EQ(remark.reasons.size(), 1u);
  EXPECT_FALSE(remark.reasons[0].holds);
}

TEST(Br1, NonAbelianInstance) {
  // S_3 x Z/2, element (sigma, c) has index 2 rank(sigma) + c
  auto g = build_group(GroupSpec{{{GroupFactor::Kind::Symmetric, 3}, {GroupFactor::Kind::Cyclic, 2}}, {}});
  Subgroup hk = subgroup_closure(g, {6});
  ASSERT_EQ(hk.order(), 3u);
  Subgroup hl = subgroup_closure(g, {2, 1});
  ASSERT_EQ(hl.order(), 4u);
  Scenario s = make(g, hk, PData{{hl, 1}});
  Verdict v = br1_verdict(s);
  EXPECT_EQ(v.claim, Claim::UnramifiedQuotientZero);
  EXPECT_TRUE(v.reasons[0].holds);
}

TEST(Br1, DisjointFactorNeedsMultiplicityOne) {
  auto g = z({2, 2, 2});
  Subgroup hl = subgroup_closure(g, {1});
  Scenario squared = make(g, trivial_subgroup(g), PData{{hl, 1}, {whole_group(g), 2}});
  // j_P on the split factor is multiplication by 2, which kills the 2-torsion Sha
  EXPECT_FALSE(sha2_omega_P(squared.hk, squared.factors).sha_p.is_trivial());
  Verdict v = br1_verdict(squared);
  EXPECT_EQ(v.claim, Claim::Inconclusive);
  EXPECT_EQ(v.reasons.back().id, "br1.factor2.multiplicity-1");
  Scenario simple = make(g, trivial_subgroup(g), PData{{hl, 1}, {whole_group(g), 1}});
  EXPECT_TRUE(sha2_omega_P(simple.hk, simple.factors).sha_p.is_trivial());
  Verdict w = br1_verdict(simple);
  EXPECT_TRUE(w.reasons[1].holds);
  // several factors: the left end is reported as computed
  EXPECT_EQ(w.claim, h1_defect(simple.hk, simple.factors).is_trivial() ? Claim::UnramifiedQuotientZero : Claim::StructureKnown);
}

TEST(ShaTPrime, CyclicAndJoinInstances) {
  auto g = z({6});
  for (Elem x : {0u, 2u, 3u}) {
    Verdict v = sha_t_prime_verdict(make(g, subgroup_closure(g, {x}), PData{{trivial_subgroup(g), 1}}));
    EXPECT_TRUE(v.structure->is_trivial());
  }
  auto k4 = z({2, 2, 2});
  Verdict remark = sha_t_prime_verdict(make(k4, trivial_subgroup(k4), PData{{subgroup_closure(k4, {1}), 1}}));
  EXPECT_TRUE(remark.reasons[0].holds);
  EXPECT_FALSE(remark.reasons[1].holds || remark.reasons[2].holds);
}

TEST(EqualX, ConditionExamples) {
  auto z4 = z({4});
  Verdict v1 = equal_x_conditions(make(z4, trivial_subgroup(z4), PData{{subgroup_closure(z4, {2}), 1}}));
  EXPECT_EQ(v1.claim, Claim::EqualXGuaranteed);
  EXPECT_TRUE(v1.reasons[0].holds);

  // (Z/2)^4, element (a,b,c,d) has index 8a + 4b + 2c + d
  auto g = z({2, 2, 2, 2});
  Subgroup hk = subgroup_closure(g, {2, 1});
  Subgroup hl = subgroup_closure(g, {8, 4, 2});
  Verdict v3 = equal_x_conditions(make(g, hk, PData{{hl, 1}}));
  EXPECT_TRUE(v3.reasons[2].holds);
  EXPECT_EQ(v3.claim, Claim::EqualXGuaranteed);

  // (Z/6)^2, element (a,b) has index 6a + b; H_L = <(1,0), (0,3)> has index 3
  auto g6 = z({6, 6});
  Subgroup hl6 = subgroup_closure(g6, {6, 3});
  ASSERT_EQ(hl6.index(), 3u);
  Verdict v2 = equal_x_conditions(make(g6, trivial_subgroup(g6), PData{{hl6, 1}}));
  EXPECT_TRUE(v2.reasons[1].holds);
  EXPECT_EQ(v2.claim, Claim::EqualXGuaranteed);
}

TEST(EqualX, PropQ1EvenCaseGivesOnlyTheBound) {
  auto g = z({2, 2});
  Verdict v = equal_x_conditions(make(g, trivial_subgroup(g), PData{{subgroup_closure(g, {1}), 1}}));
  EXPECT_EQ(v.claim, Claim::TwoTorsionBoundOnly);
  for (std::size_t i = 0; i < 5; ++i) EXPECT_FALSE(v.reasons[i].holds);
}

TEST(EqualX, MonotoneInEnabledConditions) {
  auto g = z({2, 4});
  for (Elem x = 0; x < g->order(); ++x)
    for (Elem y = 0; y < g->order(); ++y) {
      Scenario s = make(g, subgroup_closure(g, {x}), PData{{subgroup_closure(g, {y}), 1}});
      const Claim full = equal_x_conditions(s).claim;
      for (unsigned m = 0; m < 32; ++m) {
        EqualXMask mask{(m & 1) != 0, (m & 2) != 0, (m & 4) != 0, (m & 8) != 0, (m & 16) != 0};
        if (equal_x_conditions(s, mask).claim == Claim::EqualXGuaranteed) {
          EXPECT_EQ(full, Claim::EqualXGuaranteed);
        }
      }
    }
}

TEST(EqualX, Hypotheses) {
  auto s3 = build_group(GroupSpec::symmetric(3));
  EXPECT_THROW(equal_x_conditions(make(s3, subgroup_closure(s3, {1}), PData{{whole_group(s3), 1}})), HypothesisViolated);
  EXPECT_THROW(equal_x_conditions(make(s3, trivial_subgroup(s3), PData{{whole_group(s3), 1}})), HypothesisViolated);
  auto g = z({4});
  EXPECT_THROW(equal_x_conditions(make(g, trivial_subgroup(g), PData{{whole_group(g), 1}, {whole_group(g), 2}})),
               HypothesisViolated);
}

TEST(PropQ1, ComputedAndRefined) {
  const char* refined[] = {"", "", "0", "Z/3", "Z/2"};
  for (unsigned n = 2; n <= 4; ++n) {
    PropQ1 r = prop_q1(n);
    EXPECT_EQ(r.computed.str(), "Z/" + std::to_string(n));
    EXPECT_EQ(r.computed, kunneth_oracle(n, n, 3));
    EXPECT_EQ(r.paper_refined.str(), refined[n]);
  }
  EXPECT_THROW(prop_q1(5), ComplexityLimitExceeded);
}

TEST(BrauerSplit, Examples) {
  EXPECT_TRUE(brauer_split(2, 2).is_trivial());
  EXPECT_EQ(brauer_split(3, 3).str(), "Z/3");
  EXPECT_EQ(brauer_split(5, 5).str(), "Z/5");
  EXPECT_EQ(brauer_split(2, 4).str(), kBrauerSplit24Anchor);
  EXPECT_EQ(brauer_split(3, 6).str(), kBrauerSplit36Anchor);
  EXPECT_THROW(brauer_split(2, 3), HypothesisViolated);
}

TEST(Scenario, Validation) {
  auto g = z({2});
  EXPECT_THROW(make(g, trivial_subgroup(g), PData{}).validate(), ValidationError);
  EXPECT_THROW(make(g, trivial_subgroup(g), PData{{whole_group(g), 0}}).validate(), ValidationError);
  auto other = z({2});
  EXPECT_THROW(make(g, trivial_subgroup(other), PData{{whole_group(g), 1}}).validate(), ValidationError);
}
