#pragma once

// Exact counting of tuples (A_1, ..., A_{n-1}, A) in X^n with A the disjoint
// union of the A_j, compared against the bound |X|^{n/p_n}.

#include <cmath>
#include <cstdint>
#include <limits>
#include <optional>
#include <vector>

#include "hcube/core.hpp"
#include "hcube/transform.hpp"

namespace hcube {

struct CountReport {
  int n = 0;
  std::size_t family_size = 0;
  Exact count = 0;
  double log_count = 0.0;
  double bound_log = 0.0;
  std::optional<double> ratio;  ///< ln(count) / ln|X|; empty when |X| <= 1 or count == 0
  double exponent = 0.0;        ///< c(n) = n / p_n
  bool holds = true;
};

inline constexpr double kBoundSlack = 1e-9;

namespace detail {

inline std::uint64_t count_brute(const SetFamily& family, int n) {
  const auto& xs = family.members();
  const int slots = n - 1;
  if (std::pow(static_cast<double>(xs.size()), slots) > kBruteBudget)
    throw GuardError("brute-force count exceeds 1e8 tuples");
  if (xs.empty()) return 0;
  std::uint64_t total = 0;
  // Depth-first over (n-1)-tuples, pruning as soon as two members overlap.
  std::vector<std::uint64_t> unions(static_cast<std::size_t>(slots) + 1, 0);
  auto recurse = [&](auto&& self, int depth) -> void {
    if (depth == slots) {
      total += family.contains(unions[static_cast<std::size_t>(depth)]) ? 1 : 0;
      return;
    }
    const std::uint64_t so_far = unions[static_cast<std::size_t>(depth)];
    for (std::uint64_t a : xs) {
      if (a & so_far) continue;
      unions[static_cast<std::size_t>(depth) + 1] = so_far | a;
      self(self, depth + 1);
    }
  };
  recurse(recurse, 0);
  return total;
}

}  // namespace detail

/// |{(A_1, ..., A_{n-1}, A) in X^n : A = A_1 u ... u A_{n-1}, A_i pairwise disjoint}|.
/// The fast method is the corner convolution of family_to_functions(X, n).
inline Exact count_disjoint_tuples(const SetFamily& family, int n, Method method = Method::fast) {
  if (n < 2) throw DomainError("count_disjoint_tuples requires n >= 2");
  if (method == Method::brute) return Exact(detail::count_brute(family, n));
  if (family.m() > kMaxDenseExactM)
    throw GuardError("fast count needs m <= " + std::to_string(kMaxDenseExactM));
  return corner_convolution(family_to_functions(family, n), Method::fast);
}

inline CountReport make_count_report(const SetFamily& family, int n, Exact count) {
  const HoelderParams params = exponent(n);
  CountReport rep;
  rep.n = n;
  rep.family_size = family.size();
  rep.count = std::move(count);
  rep.exponent = params.c;
  const double size = static_cast<double>(family.size());
  rep.bound_log = family.empty() ? -std::numeric_limits<double>::infinity() : params.c * std::log(size);
  if (rep.count == 0) {
    rep.log_count = -std::numeric_limits<double>::infinity();
    rep.holds = true;
    return rep;
  }
  rep.log_count = std::log(rep.count.convert_to<double>());
  if (family.size() >= 2) rep.ratio = rep.log_count / std::log(size);
  rep.holds = rep.log_count <= rep.bound_log + kBoundSlack;
  return rep;
}

inline CountReport bound_report(const SetFamily& family, int n, Method method = Method::fast) {
  return make_count_report(family, n, count_disjoint_tuples(family, n, method));
}

/// All subsets of size t and of size (n-1)t in a ground set of size n t.
inline SetFamily extremal_family(int n, int t) {
  if (n < 2) throw DomainError("extremal_family requires n >= 2");
  if (t < 1) throw DomainError("extremal_family requires t >= 1");
  const int m = n * t;
  if (m > kMaxDenseRealM) throw GuardError("extremal_family needs n*t <= " + std::to_string(kMaxDenseRealM));
  const std::uint64_t size = std::uint64_t{1} << m;
  std::vector<std::uint64_t> members;
  for (std::uint64_t s = 0; s < size; ++s) {
    const int k = std::popcount(s);
    if (k == t || k == (n - 1) * t) members.push_back(s);
  }
  return SetFamily(m, std::move(members));
}

}  // namespace hcube
