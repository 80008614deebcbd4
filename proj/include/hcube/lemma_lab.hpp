#pragma once

// Numerical walkthrough of the one-dimensional lemma
//   (sum_i x_i^{1/p_n})^{p_n} <= prod_i (1 + x_i)
// through its dual form B(x, b), the reduced function f(y), the two-value
// critical system in (u, v, k) and the scalar z-equation, and the final
// logarithmic inequality in z.

#include <algorithm>
#include <cmath>
#include <limits>
#include <numeric>
#include <span>
#include <string>
#include <vector>

#include "hcube/core.hpp"

namespace hcube {

/// (b + e^{-b} x - 1) - ln x; nonnegative with equality exactly at b = ln x.
inline double log_dual_gap(double x, double b) {
  if (!(x > 0.0)) throw DomainError("log_dual_gap requires x > 0");
  // expm1 keeps the cancellation near the minimizer accurate.
  const double t = std::log(x) - b;
  return std::expm1(t) - t;
}

/// B(x, b) = sum_i (b_i + (1 + x_i^p) e^{-b_i} - 1) - p ln(sum_i x_i).
inline double dual_objective(std::span<const double> x, std::span<const double> b, const HoelderParams& params) {
  if (x.size() != b.size()) throw UsageError("dual_objective: x and b differ in length");
  double acc = 0.0;
  double sum_x = 0.0;
  for (std::size_t i = 0; i < x.size(); ++i) {
    if (!(x[i] > 0.0)) throw DomainError("dual_objective requires x_i > 0");
    acc += b[i] + (1.0 + std::pow(x[i], params.p)) * std::exp(-b[i]) - 1.0;
    sum_x += x[i];
  }
  return acc - params.p * std::log(sum_x);
}

/// Minimizer of B(., b) in x, with sum_i x*_i evaluated both directly and in closed form.
struct CriticalX {
  std::vector<double> x;
  double sum = 0.0;
  double sum_closed_form = 0.0;
};

inline constexpr double kMaxDualB = 500.0;

/// x*_k = e^{b_k/(p-1)} / (sum_i e^{b_i/(p-1)})^{1/p}, evaluated through log-sum-exp.
inline CriticalX critical_x(std::span<const double> b, const HoelderParams& params) {
  if (b.empty()) throw UsageError("critical_x needs at least one coordinate");
  for (double bi : b)
    if (!(std::abs(bi) <= kMaxDualB)) throw DomainError("critical_x: b_i outside [-500, 500]");
  const double r = params.r;
  double top = -std::numeric_limits<double>::infinity();
  for (double bi : b) top = std::max(top, bi / r);
  double acc = 0.0;
  for (double bi : b) acc += std::exp(bi / r - top);
  const double log_sum = top + std::log(acc);

  CriticalX out;
  out.x.reserve(b.size());
  for (double bi : b) out.x.push_back(std::exp(bi / r - log_sum / params.p));
  out.sum = std::accumulate(out.x.begin(), out.x.end(), 0.0);
  out.sum_closed_form = std::exp(log_sum * r / params.p);
  return out;
}

/// f(y) = 1 - n + sum ln y_i^r + sum y_i^{-r} - r ln(sum y_i).
inline double f_reduced(std::span<const double> y, const HoelderParams& params) {
  const double r = params.r;
  double acc = 1.0 - static_cast<double>(y.size());
  double sum_y = 0.0;
  for (double yi : y) {
    if (!(yi > 0.0)) throw DomainError("f_reduced requires y_i > 0");
    acc += r * std::log(yi) + std::pow(yi, -r);
    sum_y += yi;
  }
  return acc - r * std::log(sum_y);
}

struct CritResidual {
  double max_residual = 0.0;  ///< max_i |(1/y_i - 1/y_i^{r+1}) - 1/sum y|
  double identity_gap = 0.0;  ///< |sum_i y_i^{-r} - (n-1)|
};

inline double critical_slope(double s, double r) { return 1.0 / s - std::pow(s, -(r + 1.0)); }

inline CritResidual crit_residual(std::span<const double> y, const HoelderParams& params) {
  const double sum_y = std::accumulate(y.begin(), y.end(), 0.0);
  CritResidual out;
  double inv_pow_sum = 0.0;
  for (double yi : y) {
    if (!(yi > 0.0)) throw DomainError("crit_residual requires y_i > 0");
    out.max_residual = std::max(out.max_residual, std::abs(critical_slope(yi, params.r) - 1.0 / sum_y));
    inv_pow_sum += std::pow(yi, -params.r);
  }
  out.identity_gap = std::abs(inv_pow_sum - static_cast<double>(y.size() - 1));
  return out;
}

/// (n-1) ln z + (n-k) ln((n-k)/((n-1)z - k)) - r ln(z/(z-1)).
inline double last_value(int n, int k, double z, const HoelderParams& params) {
  if (k < 1 || k > n - 1) throw DomainError("last_value requires 1 <= k <= n-1");
  const double inner = (n - 1) * z - k;
  if (!(z > 1.0) || !(inner > 0.0)) throw DomainError("last_value: nonpositive logarithm argument");
  return (n - 1) * std::log(z) + (n - k) * std::log((n - k) / inner) - params.r * std::log(z / (z - 1.0));
}

// ---------------------------------------------------------------------------
// Two-value critical system

enum class CriticalStatus { valid, no_root, domain_violation };

inline const char* to_string(CriticalStatus s) {
  switch (s) {
    case CriticalStatus::valid: return "valid";
    case CriticalStatus::no_root: return "no_root";
    case CriticalStatus::domain_violation: return "domain_violation";
  }
  return "?";
}

/// k coordinates equal to u = z^{1/r} and n-k equal to v, solving
///   1/u - 1/u^{r+1} = 1/v - 1/v^{r+1} = 1/(k u + (n-k) v).
struct CriticalPointReport {
  int n = 0;
  int k = 0;
  double r = 0.0;
  CriticalStatus status = CriticalStatus::no_root;
  std::string detail;
  double z_lower = 0.0;  ///< 1 + r
  double z_upper = 0.0;  ///< end of the admissible search interval
  double z = std::numeric_limits<double>::quiet_NaN();
  double u = std::numeric_limits<double>::quiet_NaN();
  double v = std::numeric_limits<double>::quiet_NaN();          ///< from the u-expression for v
  double v_closed = std::numeric_limits<double>::quiet_NaN();   ///< from v^r = z(n-k)/((n-1)z-k)
  double v_numerator = std::numeric_limits<double>::quiet_NaN();
  double residual_eq1 = std::numeric_limits<double>::quiet_NaN();
  double identity_gap = std::numeric_limits<double>::quiet_NaN();
  double log_gap = std::numeric_limits<double>::quiet_NaN();    ///< sum ln y - ln sum y
  double f_value = std::numeric_limits<double>::quiet_NaN();    ///< f_reduced(y)
  double last_value = std::numeric_limits<double>::quiet_NaN();
  int additional_roots = 0;  ///< further sign changes seen past the returned root
  bool degenerate = false;   ///< the z-equation vanished at every sample

  bool valid() const { return status == CriticalStatus::valid; }

  std::vector<double> point() const {
    std::vector<double> y(static_cast<std::size_t>(k), u);
    y.insert(y.end(), static_cast<std::size_t>(n - k), v);
    return y;
  }
};

/// (z-1)^r (n-k)^{r+1} / (z(1-k)+k)^r - ((n-1)z - k).
inline double z_equation(int n, int k, double z, double r) {
  const double den = z * (1 - k) + k;
  return std::pow(z - 1.0, r) * std::pow(n - k, r + 1.0) / std::pow(den, r) - ((n - 1) * z - k);
}

inline constexpr double kBisectionTol = 1e-12;
inline constexpr int kBracketDoublings = 40;
inline constexpr int kBracketSubdivisions = 64;

inline CriticalPointReport solve_critical_system(int n, int k, const HoelderParams& params) {
  if (params.n != n) throw UsageError("solve_critical_system: params built for a different n");
  if (k < 1 || k > n - 1) throw DomainError("solve_critical_system requires 1 <= k <= n-1");
  const double r = params.r;
  CriticalPointReport rep;
  rep.n = n;
  rep.k = k;
  rep.r = r;
  rep.z_lower = 1.0 + r;

  // v stays positive only while z(1-k) + k >= 0; the equation's denominator needs it strict.
  const double z_limit = k == 1 ? std::numeric_limits<double>::infinity() : static_cast<double>(k) / (k - 1);
  const double z_cap = std::ldexp(rep.z_lower, kBracketDoublings);
  if (rep.z_lower >= z_limit) {
    rep.status = CriticalStatus::domain_violation;
    rep.detail = "numerator of v is negative for every z >= 1 + r";
    rep.z_upper = z_limit;
    return rep;
  }
  const bool clipped = z_limit < z_cap;
  rep.z_upper = clipped ? z_limit * (1.0 - 1e-12) : z_cap;

  auto eq = [&](double z) { return z_equation(n, k, z, r); };

  // Geometric brackets [a, 2a] from 1 + r, each sampled on a uniform sub-grid.
  struct Bracket {
    double lo, hi;
  };
  std::vector<Bracket> brackets;
  bool all_zero = true;
  double prev_z = rep.z_lower;
  double prev_f = eq(prev_z);
  if (prev_f == 0.0) brackets.push_back({prev_z, prev_z});
  all_zero = prev_f == 0.0;
  for (double a = rep.z_lower; a < rep.z_upper; a *= 2.0) {
    const double b = std::min(2.0 * a, rep.z_upper);
    for (int i = 1; i <= kBracketSubdivisions; ++i) {
      const double z = i == kBracketSubdivisions ? b : a + (b - a) * i / kBracketSubdivisions;
      const double fz = eq(z);
      all_zero = all_zero && fz == 0.0;
      if (fz == 0.0)
        brackets.push_back({z, z});
      else if (prev_f != 0.0 && std::signbit(fz) != std::signbit(prev_f))
        brackets.push_back({prev_z, z});
      prev_z = z;
      prev_f = fz;
    }
  }
  rep.degenerate = all_zero;

  if (brackets.empty()) {
    if (clipped) {
      rep.status = CriticalStatus::domain_violation;
      rep.detail = "no sign change on [1 + r, k/(k-1)); beyond it the numerator of v is negative";
    } else {
      rep.status = CriticalStatus::no_root;
      rep.detail = "no sign change up to 2^40 (1 + r)";
    }
    return rep;
  }
  rep.additional_roots = static_cast<int>(brackets.size()) - 1;

  double lo = brackets.front().lo;
  double hi = brackets.front().hi;
  double f_lo = eq(lo);
  while (hi - lo > kBisectionTol) {
    const double mid = 0.5 * (lo + hi);
    if (mid <= lo || mid >= hi) break;
    const double f_mid = eq(mid);
    if (f_mid == 0.0) {
      lo = hi = mid;
      break;
    }
    if (std::signbit(f_mid) == std::signbit(f_lo)) {
      lo = mid;
      f_lo = f_mid;
    } else {
      hi = mid;
    }
  }
  const double z = 0.5 * (lo + hi);
  rep.z = z;
  rep.u = std::pow(z, 1.0 / r);
  // u^{r+1}(1-k) + k u = u (z(1-k) + k) and u^r - 1 = z - 1.
  rep.v_numerator = rep.u * (z * (1 - k) + k);
  if (rep.v_numerator < 0.0) {
    rep.status = CriticalStatus::domain_violation;
    rep.detail = "numerator of v is negative at the root";
    return rep;
  }
  rep.v = rep.v_numerator / ((z - 1.0) * (n - k));
  rep.v_closed = std::pow(z * (n - k) / ((n - 1) * z - k), 1.0 / r);

  const double sum = k * rep.u + (n - k) * rep.v;
  const double gu = critical_slope(rep.u, r);
  const double gv = critical_slope(rep.v, r);
  rep.residual_eq1 = std::max({std::abs(gu - gv), std::abs(gu - 1.0 / sum), std::abs(gv - 1.0 / sum)});

  const auto y = rep.point();
  rep.identity_gap = crit_residual(y, params).identity_gap;
  double log_sum = 0.0;
  for (double yi : y) log_sum += std::log(yi);
  rep.log_gap = log_sum - std::log(sum);
  rep.f_value = f_reduced(y, params);
  rep.last_value = last_value(n, k, z, params);
  rep.status = CriticalStatus::valid;
  if (std::abs(rep.v - rep.v_closed) > 1e-9 * std::max(1.0, rep.v)) rep.detail = "v cross-check exceeds 1e-9";
  return rep;
}

// ---------------------------------------------------------------------------
// Scans and monotonicity claims

struct LastValueScan {
  int n = 0;
  int grid = 0;
  double z_lo = 0.0;
  double z_hi = 0.0;
  double min_value = std::numeric_limits<double>::infinity();
  int argmin_k = 0;
  double argmin_z = 0.0;
};

inline constexpr double kScanZMax = 1e3;

/// Minimum of last_value over k = 1..n-1 and a log-spaced grid of `grid` points
/// on [max(1 + r, n/(n-1) + 1e-6), 1e3].
inline LastValueScan scan_last_value(const HoelderParams& params, int grid) {
  if (grid < 2) throw DomainError("scan grid needs at least 2 points");
  const int n = params.n;
  LastValueScan out;
  out.n = n;
  out.grid = grid;
  out.z_lo = std::max(1.0 + params.r, static_cast<double>(n) / (n - 1) + 1e-6);
  out.z_hi = kScanZMax;
  const double log_lo = std::log(out.z_lo);
  const double step = (std::log(out.z_hi) - log_lo) / (grid - 1);
  for (int k = 1; k <= n - 1; ++k)
    for (int i = 0; i < grid; ++i) {
      const double z = i == 0 ? out.z_lo : (i == grid - 1 ? out.z_hi : std::exp(log_lo + step * i));
      const double value = last_value(n, k, z, params);
      if (value < out.min_value) {
        out.min_value = value;
        out.argmin_k = k;
        out.argmin_z = z;
      }
    }
  return out;
}

/// (n-k) ln((n-k)/((n-1)z - k)).
inline double k_term(int n, int k, double z) { return (n - k) * std::log((n - k) / ((n - 1) * z - k)); }

/// k -> (n-k) ln((n-k)/((n-1)z-k)) is nondecreasing on k = 1..n-1 (steps >= -1e-12).
inline bool k_monotonicity_check(int n, double z) {
  if (n < 2) throw DomainError("k_monotonicity_check requires n >= 2");
  if (!(z > static_cast<double>(n) / (n - 1))) throw DomainError("k_monotonicity_check requires z > n/(n-1)");
  for (int k = 1; k + 1 <= n - 1; ++k)
    if (k_term(n, k + 1, z) - k_term(n, k, z) < -1e-12) return false;
  return true;
}

/// ln(1 + 1/(z(n-1) - 1)) / ln(1 + 1/(z - 1)).
inline double z_ratio(int n, double z) {
  return std::log1p(1.0 / (z * (n - 1) - 1.0)) / std::log1p(1.0 / (z - 1.0));
}

/// z_ratio(n, z1) <= z_ratio(n, z2) + 1e-12 for n/(n-1) <= z1 < z2.
inline bool z_ratio_monotonicity_check(int n, double z1, double z2) {
  if (n < 2) throw DomainError("z_ratio_monotonicity_check requires n >= 2");
  if (!(z1 >= static_cast<double>(n) / (n - 1)) || !(z1 < z2))
    throw DomainError("z_ratio_monotonicity_check requires n/(n-1) <= z1 < z2");
  return z_ratio(n, z1) <= z_ratio(n, z2) + 1e-12;
}

}  // namespace hcube
