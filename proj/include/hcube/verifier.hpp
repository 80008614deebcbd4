#pragma once

// Randomized and structured checks of the corner-convolution inequality
//   f_1 * ... * f_n (1^m) <= prod_j ||f_j||_{p_n}
// together with its one-dimensional forms and the sharpness witness.

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <cstdlib>
#include <limits>
#include <optional>
#include <span>
#include <string>
#include <thread>
#include <vector>

#include "hcube/core.hpp"
#include "hcube/random.hpp"
#include "hcube/transform.hpp"

namespace hcube {

inline constexpr double kRelTol = 1e-9;
inline constexpr double kAbsTol = 1e-12;

/// lhs <= rhs (1 + 1e-9) + 1e-12.
inline bool within_bound(double lhs, double rhs) { return lhs <= rhs * (1.0 + kRelTol) + kAbsTol; }

struct InequalityCheck {
  double lhs = 0.0;
  double rhs = 0.0;
  std::optional<double> ratio;  ///< lhs / rhs when rhs > 0
  bool pass = true;
};

namespace detail {
inline InequalityCheck make_check(double lhs, double rhs) {
  InequalityCheck out{lhs, rhs, std::nullopt, within_bound(lhs, rhs)};
  if (rhs > 0.0) out.ratio = lhs / rhs;
  return out;
}

inline void require_arity(std::size_t count, const HoelderParams& params) {
  if (count != static_cast<std::size_t>(params.n))
    throw UsageError("expected " + std::to_string(params.n) + " entries, got " + std::to_string(count));
}
}  // namespace detail

/// B_n(y) = prod_j y_j^{1/p} for nonnegative y.
struct HoelderProduct {
  std::vector<double> values;
  double p;

  double value() const {
    double out = 1.0;
    for (double y : values) {
      if (y < 0.0) throw DomainError("HoelderProduct needs nonnegative values");
      out *= std::pow(y, 1.0 / p);
    }
    return out;
  }
};

inline InequalityCheck check_main_inequality(const std::vector<RealFunction>& fs, const HoelderParams& params) {
  detail::require_arity(fs.size(), params);
  const double lhs = corner_convolution(fs, Method::fast);
  double rhs = 1.0;
  for (const auto& f : fs) rhs *= lp_norm(f, params.p);
  return detail::make_check(lhs, rhs);
}

/// m = 1 form: sum_j u_j prod_{i != j} v_i <= prod_j (|u_j|^p + |v_j|^p)^{1/p}.
/// The left side is the corner convolution of f_j with f_j(0) = v_j, f_j(1) = u_j.
inline InequalityCheck check_two_point(std::span<const double> u, std::span<const double> v,
                                       const HoelderParams& params) {
  detail::require_arity(u.size(), params);
  detail::require_arity(v.size(), params);
  const std::size_t n = u.size();
  double lhs = 0.0;
  for (std::size_t j = 0; j < n; ++j) {
    double term = u[j];
    for (std::size_t i = 0; i < n; ++i)
      if (i != j) term *= v[i];
    lhs += term;
  }
  double rhs = 1.0;
  for (std::size_t j = 0; j < n; ++j)
    rhs *= std::pow(std::pow(std::abs(u[j]), params.p) + std::pow(std::abs(v[j]), params.p), 1.0 / params.p);
  return detail::make_check(lhs, rhs);
}

/// (sum_i x_i^{1/p})^p.
inline double power_sum(std::span<const double> x, double p) {
  double acc = 0.0;
  for (double xi : x) {
    if (xi < 0.0) throw DomainError("power_sum needs nonnegative entries");
    acc += std::pow(xi, 1.0 / p);
  }
  return std::pow(acc, p);
}

/// (sum_i x_i^{1/p_n})^{p_n} <= prod_i (1 + x_i).
inline InequalityCheck check_lemma_mine(std::span<const double> x, const HoelderParams& params) {
  detail::require_arity(x.size(), params);
  double rhs = 1.0;
  for (double xi : x) {
    if (xi < 0.0) throw DomainError("check_lemma_mine needs x_i >= 0");
    rhs *= 1.0 + xi;
  }
  return detail::make_check(power_sum(x, params.p), rhs);
}

/// p -> (sum x^{1/p})^p is nondecreasing: value at p_low <= value at p_high (1 + 1e-9).
inline bool check_p_monotonicity(std::span<const double> x, double p_low, double p_high) {
  if (!(p_low >= 1.0) || !(p_low <= p_high)) throw DomainError("need 1 <= p_low <= p_high");
  return power_sum(x, p_low) <= power_sum(x, p_high) * (1.0 + kRelTol);
}

/// Tensor lift of the two-point extremizer g(0) = 1, g(1) = (1/(n-1))^{1/p_n}:
/// f_j(x) = prod_i g(x_i) for every j. In the two-point form this is
/// u_j / v_j = (1/(n-1))^{1/p_n}, i.e. x_j = 1/(n-1) in the lemma.
inline std::vector<RealFunction> equality_witness(int n, int m) {
  const HoelderParams params = exponent(n);
  if (m < 1) throw DomainError("equality_witness requires m >= 1");
  const double g1 = std::pow(1.0 / (n - 1), 1.0 / params.p);
  RealFunction f(m);
  for (std::uint64_t s = 0; s < f.size(); ++s) f[s] = std::pow(g1, std::popcount(s));
  return std::vector<RealFunction>(static_cast<std::size_t>(n), f);
}

// ---------------------------------------------------------------------------
// One step of the induction on the cube dimension, evaluated numerically:
//   full      = sum over the (m)-dim corner of B(g_1(x_1), ..., g_n(x_n))
//   collapsed = sum over the last-coordinate corner of B(g~_1, ..., g~_n)
//   total     = B(sum g_1, ..., sum g_n)
// with g_j = |f_j|^p and g~_j the sum of g_j over the first m-1 coordinates.
// The induction asserts full <= collapsed <= total.

struct TensorizationChain {
  double full = 0.0;
  double collapsed = 0.0;
  double total = 0.0;

  bool holds() const { return within_bound(full, collapsed) && within_bound(collapsed, total); }
};

inline TensorizationChain tensorization_chain(const std::vector<RealFunction>& fs, const HoelderParams& params) {
  detail::require_arity(fs.size(), params);
  require_same_ground(fs);
  const int m = fs.front().m();
  if (m < 1) throw DomainError("tensorization_chain requires m >= 1");
  const std::uint64_t last = std::uint64_t{1} << (m - 1);
  std::vector<RealFunction> abs_fs;
  std::vector<RealFunction> collapsed;
  HoelderProduct sums{{}, params.p};
  for (const auto& f : fs) {
    RealFunction a(m);
    double low = 0.0;
    double high = 0.0;
    for (std::uint64_t s = 0; s < f.size(); ++s) {
      a[s] = std::abs(f[s]);
      (s & last ? high : low) += std::pow(a[s], params.p);
    }
    abs_fs.push_back(std::move(a));
    collapsed.emplace_back(1, std::vector<double>{std::pow(low, 1.0 / params.p), std::pow(high, 1.0 / params.p)});
    sums.values.push_back(low + high);
  }
  return {corner_convolution(abs_fs), corner_convolution(collapsed), sums.value()};
}

// ---------------------------------------------------------------------------
// Randomized trials

enum class Distribution { uniform, exponential, sparse };

inline const char* to_string(Distribution d) {
  switch (d) {
    case Distribution::uniform: return "uniform";
    case Distribution::exponential: return "exponential";
    case Distribution::sparse: return "sparse";
  }
  return "?";
}

inline std::optional<Distribution> parse_distribution(const std::string& name) {
  if (name == "uniform") return Distribution::uniform;
  if (name == "exponential") return Distribution::exponential;
  if (name == "sparse") return Distribution::sparse;
  return std::nullopt;
}

inline constexpr int kMaxVerifyM = 12;

struct TrialConfig {
  int n = 3;
  int m = 4;
  std::int64_t trials = 1000;
  std::uint64_t seed = 0;
  Distribution distribution = Distribution::uniform;
  double density = 0.5;  ///< sparse only: probability a value is nonzero
  bool signed_values = false;

  void validate() const {
    if (n < 2) throw DomainError("TrialConfig: n must be >= 2");
    if (m < 1 || m > kMaxVerifyM) throw DomainError("TrialConfig: m must be in [1, 12]");
    if (trials < 1) throw DomainError("TrialConfig: trials must be >= 1");
    if (!(density > 0.0 && density <= 1.0)) throw DomainError("TrialConfig: density must be in (0, 1]");
  }
};

struct VerifyReport {
  TrialConfig config;
  std::int64_t trials = 0;
  double max_ratio = 0.0;
  std::int64_t worst_trial = -1;  ///< smallest trial index attaining max_ratio
  std::int64_t failures = 0;
};

/// The n functions of trial `index`, drawn from its own stream.
inline std::vector<RealFunction> draw_trial(const TrialConfig& config, std::uint64_t index) {
  TrialStream rng(config.seed, index);
  std::vector<RealFunction> fs;
  fs.reserve(static_cast<std::size_t>(config.n));
  for (int j = 0; j < config.n; ++j) {
    RealFunction f(config.m);
    for (auto& value : f.values()) {
      switch (config.distribution) {
        case Distribution::uniform: value = rng.uniform(); break;
        case Distribution::exponential: value = rng.exponential(); break;
        case Distribution::sparse: value = rng.bernoulli(config.density) ? rng.exponential() : 0.0; break;
      }
      if (config.signed_values && (rng.next_u64() & 1U)) value = -value;
    }
    fs.push_back(std::move(f));
  }
  return fs;
}

namespace detail {

inline void merge(VerifyReport& into, double ratio, std::int64_t index) {
  if (ratio > into.max_ratio || (ratio == into.max_ratio && (into.worst_trial < 0 || index < into.worst_trial))) {
    into.max_ratio = ratio;
    into.worst_trial = index;
  }
}

inline unsigned thread_count() {
  if (const char* env = std::getenv("HCUBE_THREADS")) {
    const long v = std::strtol(env, nullptr, 10);
    if (v >= 1 && v <= 256) return static_cast<unsigned>(v);
  }
  return 1;
}

}  // namespace detail

/// Runs config.trials independent trials. Aggregation is by max and count, so
/// the report does not depend on the number of worker threads (HCUBE_THREADS).
inline VerifyReport run_trials(const TrialConfig& config) {
  config.validate();
  const HoelderParams params = exponent(config.n);
  const unsigned workers = std::min<unsigned>(detail::thread_count(), static_cast<unsigned>(std::min<std::int64_t>(config.trials, 256)));
  std::vector<VerifyReport> partial(workers, VerifyReport{config});
  auto work = [&](unsigned w) {
    VerifyReport& rep = partial[w];
    for (std::int64_t i = w; i < config.trials; i += workers) {
      const auto check = check_main_inequality(draw_trial(config, static_cast<std::uint64_t>(i)), params);
      ++rep.trials;
      if (!check.pass) ++rep.failures;
      if (check.ratio) detail::merge(rep, *check.ratio, i);
    }
  };
  if (workers == 1) {
    work(0);
  } else {
    std::vector<std::jthread> pool;
    for (unsigned w = 0; w < workers; ++w) pool.emplace_back(work, w);
  }
  VerifyReport out{config};
  for (const auto& rep : partial) {
    out.trials += rep.trials;
    out.failures += rep.failures;
    if (rep.worst_trial >= 0) detail::merge(out, rep.max_ratio, rep.worst_trial);
  }
  return out;
}

/// Single-trial report for the equality witness of (n, m).
inline VerifyReport run_witness(int n, int m) {
  const auto check = check_main_inequality(equality_witness(n, m), exponent(n));
  VerifyReport out;
  out.config.n = n;
  out.config.m = m;
  out.config.trials = 1;
  out.trials = 1;
  out.failures = check.pass ? 0 : 1;
  if (check.ratio) detail::merge(out, *check.ratio, 0);
  return out;
}

}  // namespace hcube
