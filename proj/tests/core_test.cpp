#include <cmath>
#include <numeric>

#include <gtest/gtest.h>

#include "hcube/core.hpp"
#include "oracles.hpp"

using namespace hcube;

TEST(Exponent, TwoIsExactlyTwo) {
  const auto params = exponent(2);
  EXPECT_EQ(params.p, 2.0);
  EXPECT_EQ(params.r, 1.0);
  EXPECT_EQ(params.c, 1.0);
}

TEST(Exponent, ThreeGivesCountingExponentNear1725) {
  EXPECT_NEAR(exponent(3).c, 1.725, 2e-3);
}

TEST(Exponent, FourMatchesHighPrecisionValue) {
  // ln(256/27)/ln 4 = 1.62255624891826572781939... (mpmath, 30 digits)
  EXPECT_NEAR(exponent(4).p, 1.622556248918, 5e-13);
  EXPECT_NEAR(exponent(4).p, std::log(256.0 / 27.0) / std::log(4.0), 1e-15);
}

TEST(Exponent, RejectsNBelowTwo) {
  EXPECT_THROW(exponent(1), DomainError);
  EXPECT_THROW(exponent(0), DomainError);
  EXPECT_THROW(exponent(-3), DomainError);
}

TEST(Exponent, StrictlyDecreasingInsideOneTwo) {
  double prev = 3.0;
  for (int n = 2; n <= 64; ++n) {
    const auto params = exponent(n);
    EXPECT_LT(params.p, prev) << n;
    EXPECT_GT(params.p, 1.0);
    EXPECT_LE(params.p, 2.0);
    EXPECT_GT(params.r, 0.0);
    EXPECT_DOUBLE_EQ(params.c, n / params.p);
    const double lhs = params.p * std::log(n);
    const double rhs = n * std::log(n) - (n - 1) * std::log(n - 1.0);
    EXPECT_NEAR(lhs, rhs, 1e-13 * std::abs(rhs));
    EXPECT_NEAR(params.p, static_cast<double>(oracle::exponent_reference(n)), 1e-14 * params.p);
    prev = params.p;
  }
}

TEST(LpNorm, SmallTables) {
  EXPECT_DOUBLE_EQ(lp_norm(RealFunction(1, {1.0, 1.0}), 2.0), std::sqrt(2.0));
  EXPECT_DOUBLE_EQ(lp_norm(RealFunction(1, {3.0, 4.0}), 2.0), 5.0);
  EXPECT_DOUBLE_EQ(lp_norm(RealFunction(2, {1.0, 2.0, 3.0, 4.0}), 1.0), 10.0);
  EXPECT_DOUBLE_EQ(lp_norm(RealFunction(2, {1.0, -2.0, 3.0, -4.0}), 1.0), 10.0);
  EXPECT_EQ(lp_norm(RealFunction(3), 1.5), 0.0);
}

TEST(LpNorm, RejectsPBelowOne) {
  EXPECT_THROW(lp_norm(RealFunction(1, {1.0, 1.0}), 0.5), DomainError);
  EXPECT_THROW(lp_norm(RealFunction(1, {1.0, 1.0}), std::nan("")), DomainError);
}

TEST(LpNorm, ScaleInvariantForHugeValues) {
  const RealFunction f(1, {3e200, 4e200});
  EXPECT_NEAR(lp_norm(f, 2.0) / 5e200, 1.0, 1e-15);
}

TEST(SubsetMask, BitOperations) {
  const SubsetMask a(0b01, 2), b(0b10, 2);
  EXPECT_TRUE(is_disjoint(a, b));
  EXPECT_EQ(set_union(a, b), SubsetMask(0b11, 2));
  EXPECT_EQ(popcount(SubsetMask(0b1011, 4)), 3);
  EXPECT_FALSE(is_disjoint(SubsetMask(0b11, 2), a));
  EXPECT_EQ(a.complement(), b);
  EXPECT_TRUE(a.contains(1));
  EXPECT_FALSE(a.contains(2));
}

TEST(SubsetMask, MismatchedGroundIsUsageError) {
  EXPECT_THROW(is_disjoint(SubsetMask(1, 2), SubsetMask(1, 3)), UsageError);
  EXPECT_THROW(set_union(SubsetMask(1, 2), SubsetMask(1, 3)), UsageError);
  EXPECT_THROW(SubsetMask(0b100, 2), UsageError);
}

TEST(CubeFunction, DenseCaps) {
  EXPECT_THROW(RealFunction(kMaxDenseRealM + 1), GuardError);
  EXPECT_THROW(ExactFunction(kMaxDenseExactM + 1), GuardError);
  EXPECT_THROW(RealFunction(2, {1.0, 2.0}), UsageError);
  EXPECT_EQ(RealFunction(3).size(), 8U);
}

TEST(SetFamily, SortsAndRejectsDuplicates) {
  const SetFamily x(3, {5, 1, 0});
  EXPECT_EQ(x.members(), (std::vector<std::uint64_t>{0, 1, 5}));
  EXPECT_THROW(SetFamily(3, {1, 1}), UsageError);
  EXPECT_THROW(SetFamily(2, {4}), UsageError);
  EXPECT_THROW(SetFamily(65), GuardError);
}

TEST(FamilyToFunctions, EmptySetOnly) {
  const auto fs = family_to_functions(SetFamily(1, {0}), 2);
  ASSERT_EQ(fs.size(), 2U);
  EXPECT_EQ(fs[0].values(), (std::vector<Exact>{1, 0}));
  EXPECT_EQ(fs[1].values(), (std::vector<Exact>{0, 1}));
}

TEST(FamilyToFunctions, PowerSetGivesAllOnes) {
  const auto fs = family_to_functions(SetFamily(2, {0, 1, 2, 3}), 3);
  ASSERT_EQ(fs.size(), 3U);
  for (const auto& f : fs) EXPECT_EQ(f.values(), (std::vector<Exact>{1, 1, 1, 1}));
}

TEST(FamilyToFunctions, ComplementRule) {
  // X = {{1}} over {1,2}: complement of {2} is {1}.
  const auto fs = family_to_functions(SetFamily(2, {0b01}), 2);
  EXPECT_EQ(fs[0].values(), (std::vector<Exact>{0, 1, 0, 0}));
  EXPECT_EQ(fs[1].values(), (std::vector<Exact>{0, 0, 1, 0}));
}

TEST(FamilyToFunctions, MassEqualsFamilySize) {
  TrialStream rng(7, 0);
  for (int trial = 0; trial < 50; ++trial) {
    const int m = 1 + static_cast<int>(rng.below(8));
    const int n = 2 + static_cast<int>(rng.below(4));
    const auto family = oracle::random_family(rng, m, rng.uniform());
    for (const auto& f : family_to_functions(family, n))
      EXPECT_EQ(std::accumulate(f.values().begin(), f.values().end(), Exact(0)), Exact(family.size()));
  }
  EXPECT_THROW(family_to_functions(SetFamily(1), 1), DomainError);
}
