#include <cmath>
#include <vector>

#include <gtest/gtest.h>

#include "hcube/lemma_lab.hpp"
#include "hcube/verifier.hpp"
#include "oracles.hpp"

using namespace hcube;

TEST(LogDualGap, Examples) {
  EXPECT_EQ(log_dual_gap(1.0, 0.0), 0.0);
  EXPECT_NEAR(log_dual_gap(std::exp(1.0), 1.0), 0.0, 1e-16);
  // 1 - ln 2 = 0.30685281944005469058 (mpmath)
  EXPECT_NEAR(log_dual_gap(2.0, 0.0), 0.30685281944005469, 1e-15);
  EXPECT_THROW(log_dual_gap(0.0, 1.0), DomainError);
  EXPECT_THROW(log_dual_gap(-1.0, 1.0), DomainError);
}

TEST(LogDualGap, NonnegativeWithMinimizerAtLogX) {
  TrialStream rng(51, 0);
  for (int i = 0; i < 200; ++i) {
    const double x = std::exp(rng.uniform(-10.0, 10.0));
    const double b = rng.uniform(-20.0, 20.0);
    EXPECT_GE(log_dual_gap(x, b), 0.0);
    const double argmin = oracle::golden_section_min([&](double bb) { return log_dual_gap(x, bb); }, -30.0, 30.0);
    EXPECT_NEAR(argmin, std::log(x), 1e-8);
  }
}

TEST(DualObjective, TightAtOptimalB) {
  TrialStream rng(52, 0);
  for (int n = 2; n <= 6; ++n) {
    const auto params = exponent(n);
    std::vector<double> x(static_cast<std::size_t>(n)), b(static_cast<std::size_t>(n));
    double lemma_gap = 0.0, sum = 0.0;
    for (int i = 0; i < n; ++i) {
      x[static_cast<std::size_t>(i)] = rng.uniform(0.1, 3.0);
      b[static_cast<std::size_t>(i)] = std::log1p(std::pow(x[static_cast<std::size_t>(i)], params.p));
      lemma_gap += b[static_cast<std::size_t>(i)];
      sum += x[static_cast<std::size_t>(i)];
    }
    lemma_gap -= params.p * std::log(sum);
    EXPECT_NEAR(dual_objective(x, b, params), lemma_gap, 1e-12);
  }
}

TEST(DualObjective, VanishesAtEqualityConfiguration) {
  for (int n = 2; n <= 10; ++n) {
    const auto params = exponent(n);
    // x_i^p = 1/(n-1), b_i = ln(1 + x_i^p).
    const std::vector<double> x(static_cast<std::size_t>(n), std::pow(1.0 / (n - 1), 1.0 / params.p));
    const std::vector<double> b(static_cast<std::size_t>(n), std::log1p(1.0 / (n - 1)));
    EXPECT_NEAR(dual_objective(x, b, params), 0.0, 1e-10) << n;
  }
}

TEST(DualObjective, NonnegativeOnRandomPoints) {
  TrialStream rng(53, 0);
  for (int i = 0; i < 20000; ++i) {
    const int n = 2 + static_cast<int>(rng.below(5));
    const auto params = exponent(n);
    std::vector<double> x(static_cast<std::size_t>(n)), b(static_cast<std::size_t>(n));
    for (auto& xi : x) xi = std::exp(rng.uniform(-4.0, 4.0));
    for (auto& bi : b) bi = rng.uniform(-5.0, 5.0);
    ASSERT_GE(dual_objective(x, b, params), -1e-10);
  }
}

TEST(CriticalX, SymmetricCase) {
  const auto params = exponent(3);
  const auto crit = critical_x(std::vector<double>(3, 0.0), params);
  for (double xi : crit.x) EXPECT_NEAR(xi, std::pow(3.0, -1.0 / params.p), 1e-15);
  EXPECT_NEAR(crit.sum, crit.sum_closed_form, 1e-14);
}

TEST(CriticalX, TwoCoordinateValues) {
  // p_2 = 2: x* = (e, 1) / sqrt(e + 1) = (1.4096890613993713, 0.5185956241330957) (mpmath)
  const auto crit = critical_x(std::vector<double>{1.0, 0.0}, exponent(2));
  EXPECT_NEAR(crit.x[0], 1.4096890613993713, 1e-12);
  EXPECT_NEAR(crit.x[1], 0.5185956241330957, 1e-12);
  EXPECT_NEAR(crit.sum_closed_form, 1.9282846855324670, 1e-12);
}

TEST(CriticalX, GradientOfDualVanishes) {
  TrialStream rng(54, 0);
  for (int i = 0; i < 200; ++i) {
    const int n = 2 + static_cast<int>(rng.below(5));
    const auto params = exponent(n);
    std::vector<double> b(static_cast<std::size_t>(n));
    for (auto& bi : b) bi = rng.uniform(-2.0, 2.0);
    const auto crit = critical_x(b, params);
    EXPECT_NEAR(crit.sum, crit.sum_closed_form, 1e-12 * crit.sum);
    const double h = 1e-6;
    for (int k = 0; k < n; ++k) {
      auto xp = crit.x, xm = crit.x;
      xp[static_cast<std::size_t>(k)] += h;
      xm[static_cast<std::size_t>(k)] -= h;
      const double grad = (dual_objective(xp, b, params) - dual_objective(xm, b, params)) / (2 * h);
      EXPECT_LT(std::abs(grad), 1e-6) << "n=" << n << " k=" << k;
    }
  }
}

TEST(CriticalX, GuardsExtremeB) {
  const auto params = exponent(3);
  EXPECT_THROW(critical_x(std::vector<double>{501.0, 0.0, 0.0}, params), DomainError);
  const auto crit = critical_x(std::vector<double>{500.0, -500.0, 0.0}, params);
  for (double xi : crit.x) EXPECT_TRUE(std::isfinite(xi));
}

TEST(FReduced, DiagonalValues) {
  // 1 - r ln 3 at n = 3: 0.18906978378367124 (mpmath)
  EXPECT_NEAR(f_reduced(std::vector<double>(3, 1.0), exponent(3)), 0.18906978378367124, 1e-14);
  EXPECT_NEAR(f_reduced(std::vector<double>{1.0, 1.0}, exponent(2)), 1.0 - std::log(2.0), 1e-15);
  for (int n = 2; n <= 40; ++n) EXPECT_GT(f_reduced(std::vector<double>(static_cast<std::size_t>(n), 1.0), exponent(n)), 0.0);
  EXPECT_THROW(f_reduced(std::vector<double>{1.0, 0.0}, exponent(2)), DomainError);
}

TEST(FReduced, NonnegativeOnRandomPoints) {
  TrialStream rng(55, 0);
  for (int i = 0; i < 20000; ++i) {
    const int n = 2 + static_cast<int>(rng.below(5));
    std::vector<double> y(static_cast<std::size_t>(n));
    for (auto& yi : y) yi = rng.uniform(0.1, 10.0);
    ASSERT_GE(f_reduced(y, exponent(n)), -1e-9);
  }
}

TEST(CritResidual, DiagonalCriticalPoint) {
  // On the diagonal, (1/y)(1 - y^{-r}) = 1/(n y) gives y^{-r} = (n-1)/n.
  for (int n = 2; n <= 8; ++n) {
    const auto params = exponent(n);
    const double y = std::pow(static_cast<double>(n - 1) / n, -1.0 / params.r);
    const auto res = crit_residual(std::vector<double>(static_cast<std::size_t>(n), y), params);
    EXPECT_LT(res.max_residual, 1e-14);
    EXPECT_LT(res.identity_gap, 1e-12);
  }
}

TEST(CritResidual, SmallResidualImpliesIdentity) {
  for (int n = 3; n <= 10; ++n) {
    const auto params = exponent(n);
    const auto rep = solve_critical_system(n, 1, params);
    ASSERT_TRUE(rep.valid());
    const auto res = crit_residual(rep.point(), params);
    EXPECT_LT(res.max_residual, 1e-9);
    EXPECT_LT(res.identity_gap, 1e-7);
  }
}

TEST(SolveCriticalSystem, DegenerateNTwo) {
  const auto params = exponent(2);
  const auto rep = solve_critical_system(2, 1, params);
  ASSERT_TRUE(rep.valid());
  EXPECT_TRUE(rep.degenerate);
  EXPECT_DOUBLE_EQ(rep.z, 2.0);
  EXPECT_DOUBLE_EQ(rep.u, 2.0);
  EXPECT_DOUBLE_EQ(rep.v, 2.0);
  EXPECT_DOUBLE_EQ(rep.v_closed, 2.0);
  EXPECT_LT(rep.residual_eq1, 1e-15);
}

TEST(SolveCriticalSystem, NThreeKOneRegression) {
  // Baseline from a 30-digit mpmath solve of the z-equation:
  // z* = 5.851485053273878, u = 10.951108472776504, v = 1.1286346708814943,
  // last value = 0.04030738915394284.
  const auto params = exponent(3);
  const auto rep = solve_critical_system(3, 1, params);
  ASSERT_TRUE(rep.valid());
  EXPECT_NEAR(rep.z, 5.851485053273878, 1e-10);
  EXPECT_NEAR(rep.u, 10.951108472776504, 1e-9);
  EXPECT_NEAR(rep.v, 1.1286346708814943, 1e-10);
  EXPECT_NEAR(rep.v, rep.v_closed, 1e-9);
  EXPECT_LT(rep.residual_eq1, 1e-9);
  EXPECT_NEAR(rep.last_value, 0.04030738915394284, 1e-10);
  EXPECT_EQ(rep.additional_roots, 0);
}

TEST(SolveCriticalSystem, NThreeKTwoIsInadmissible) {
  const auto rep = solve_critical_system(3, 2, exponent(3));
  EXPECT_EQ(rep.status, CriticalStatus::domain_violation);
  EXPECT_DOUBLE_EQ(rep.z_upper, 2.0 * (1.0 - 1e-12));
}

TEST(SolveCriticalSystem, ValidReportsSatisfyTheReduction) {
  for (int n = 3; n <= 20; ++n) {
    const auto params = exponent(n);
    for (int k = 1; k < n; ++k) {
      const auto rep = solve_critical_system(n, k, params);
      if (!rep.valid()) {
        EXPECT_NE(rep.detail, "");
        continue;
      }
      const double threshold = std::pow(1.0 + params.r, 1.0 / params.r);
      EXPECT_GE(rep.u, threshold);
      EXPECT_LE(rep.v, threshold);
      EXPECT_GT(rep.v, 0.0);
      EXPECT_GE(rep.v_numerator, 0.0);
      EXPECT_LT(rep.residual_eq1, 1e-9);
      EXPECT_LT(rep.identity_gap, 1e-7);
      EXPECT_GE(rep.f_value, -1e-9);
      EXPECT_GE(rep.last_value, -1e-9);
      // At a critical point f(y) = r (sum ln y - ln sum y), which is the final value.
      EXPECT_NEAR(rep.f_value, params.r * rep.log_gap, 1e-9);
      EXPECT_NEAR(rep.last_value, params.r * rep.log_gap, 1e-9);
    }
  }
}

TEST(SolveCriticalSystem, Errors) {
  EXPECT_THROW(solve_critical_system(3, 3, exponent(3)), DomainError);
  EXPECT_THROW(solve_critical_system(3, 0, exponent(3)), DomainError);
  EXPECT_THROW(solve_critical_system(3, 1, exponent(4)), UsageError);
}

TEST(LastValue, GrowsForLargeZ) {
  for (int n = 3; n <= 10; ++n)
    for (int k = 1; k < n; ++k) EXPECT_GT(last_value(n, k, 1e6, exponent(n)), 0.0);
}

TEST(LastValue, NonnegativeAtLowerEnd) {
  const auto params = exponent(3);
  EXPECT_GE(last_value(3, 1, 1.0 + params.r, params), 0.0);
  EXPECT_THROW(last_value(3, 1, 1.0, params), DomainError);
  EXPECT_THROW(last_value(3, 3, 2.0, params), DomainError);
  EXPECT_THROW(last_value(4, 3, 0.9, exponent(4)), DomainError);
}

TEST(LastValue, GridScanMinimumNonnegative) {
  for (int n = 3; n <= 10; ++n) {
    const auto scan = scan_last_value(exponent(n), 10000);
    EXPECT_GE(scan.min_value, -1e-9) << n;
    EXPECT_GE(scan.argmin_k, 1);
  }
}

TEST(Monotonicity, KTerm) {
  EXPECT_TRUE(k_monotonicity_check(3, 2.0));
  EXPECT_TRUE(k_monotonicity_check(10, 1.2));
  EXPECT_TRUE(k_monotonicity_check(2, 3.0));
  EXPECT_THROW(k_monotonicity_check(3, 1.5), DomainError);
}

TEST(Monotonicity, ZRatio) {
  EXPECT_TRUE(z_ratio_monotonicity_check(3, 1.5, 2.0));
  EXPECT_TRUE(z_ratio_monotonicity_check(3, 1.5, 1.5000001));
  EXPECT_TRUE(z_ratio_monotonicity_check(2, 2.0, 7.0));
  EXPECT_NEAR(z_ratio(2, 3.3), 1.0, 1e-15);
  EXPECT_THROW(z_ratio_monotonicity_check(3, 1.4, 2.0), DomainError);
  EXPECT_THROW(z_ratio_monotonicity_check(3, 2.0, 2.0), DomainError);
}
