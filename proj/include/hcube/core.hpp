#pragma once

// Domain types for functions on the Hamming cube {0,1}^m, set families over
// {1..m}, and the sharp exponent p_n = ln(n^n / (n-1)^(n-1)) / ln n.

#include <algorithm>
#include <bit>
#include <cmath>
#include <cstdint>
#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

#include <boost/multiprecision/cpp_int.hpp>

namespace hcube {

/// Arbitrary-precision integer used by the exact flavor of every operation.
using Exact = boost::multiprecision::cpp_int;

/// Argument outside the mathematical domain of an operation (n < 2, p < 1, x <= 0, ...).
struct DomainError : std::domain_error {
  using std::domain_error::domain_error;
};

/// Inconsistent arguments: mismatched ground sizes, bad indices, ...
struct UsageError : std::invalid_argument {
  using std::invalid_argument::invalid_argument;
};

/// A size guard (dense cap, brute-force budget) was exceeded.
struct GuardError : std::length_error {
  using std::length_error::length_error;
};

inline constexpr int kMaxWordBits = 64;
inline constexpr int kMaxDenseRealM = 24;
// Exact tables use word-sized wrapping kernels with (m+1)-wide ranks; 22 keeps
// two ranked tables under 2 GB.
inline constexpr int kMaxDenseExactM = 22;

template <class T>
inline constexpr bool is_exact_v = std::is_same_v<T, Exact>;

template <class T>
constexpr int dense_cap() {
  return is_exact_v<T> ? kMaxDenseExactM : kMaxDenseRealM;
}

// ---------------------------------------------------------------------------
// SubsetMask

/// A subset of {1..m} (equivalently a point of {0,1}^m). Element i maps to bit i-1.
class SubsetMask {
public:
  SubsetMask(std::uint64_t bits, int m) : bits_(bits), m_(m) {
    if (m < 0 || m > kMaxWordBits) throw UsageError("ground size m must be in [0,64]");
    if (m < kMaxWordBits && (bits >> m) != 0)
      throw UsageError("mask has bits at or above position m");
  }

  static SubsetMask full(int m) {
    return {m == kMaxWordBits ? ~std::uint64_t{0} : (std::uint64_t{1} << m) - 1, m};
  }

  std::uint64_t bits() const { return bits_; }
  int m() const { return m_; }
  int popcount() const { return std::popcount(bits_); }
  bool contains(int element) const { return element >= 1 && element <= m_ && ((bits_ >> (element - 1)) & 1U); }
  SubsetMask complement() const { return {full(m_).bits_ & ~bits_, m_}; }

  friend bool operator==(const SubsetMask&, const SubsetMask&) = default;

private:
  std::uint64_t bits_;
  int m_;
};

namespace detail {
inline void require_same_ground(const SubsetMask& a, const SubsetMask& b) {
  if (a.m() != b.m()) throw UsageError("subset masks over different ground sizes");
}
}  // namespace detail

inline int popcount(const SubsetMask& a) { return a.popcount(); }

inline bool is_disjoint(const SubsetMask& a, const SubsetMask& b) {
  detail::require_same_ground(a, b);
  return (a.bits() & b.bits()) == 0;
}

inline SubsetMask set_union(const SubsetMask& a, const SubsetMask& b) {
  detail::require_same_ground(a, b);
  return {a.bits() | b.bits(), a.m()};
}

// ---------------------------------------------------------------------------
// CubeFunction

/// Dense table of f : {0,1}^m -> T, indexed by SubsetMask bits.
/// T = double is the real flavor, T = Exact the exact-integer flavor.
template <class T>
class CubeFunction {
public:
  using value_type = T;

  explicit CubeFunction(int m) : m_(check_m(m)), values_(std::size_t{1} << m) {}

  CubeFunction(int m, std::vector<T> values) : m_(check_m(m)), values_(std::move(values)) {
    if (values_.size() != (std::size_t{1} << m)) throw UsageError("CubeFunction needs exactly 2^m values");
  }

  static CubeFunction constant(int m, const T& value) {
    return CubeFunction(m, std::vector<T>(std::size_t{1} << check_m(m), value));
  }

  int m() const { return m_; }
  std::size_t size() const { return values_.size(); }

  const T& operator[](std::uint64_t mask) const { return values_[mask]; }
  T& operator[](std::uint64_t mask) { return values_[mask]; }
  const T& at(const SubsetMask& x) const {
    if (x.m() != m_) throw UsageError("mask ground size differs from function");
    return values_[x.bits()];
  }

  const std::vector<T>& values() const { return values_; }
  std::vector<T>& values() { return values_; }

  friend bool operator==(const CubeFunction&, const CubeFunction&) = default;

private:
  static int check_m(int m) {
    if (m < 0) throw UsageError("ground size must be nonnegative");
    if (m > dense_cap<T>())
      throw GuardError("dense cube function cap exceeded (m=" + std::to_string(m) + ", cap=" +
                       std::to_string(dense_cap<T>()) + ")");
    return m;
  }

  int m_;
  std::vector<T> values_;
};

using RealFunction = CubeFunction<double>;
using ExactFunction = CubeFunction<Exact>;

template <class T>
void require_same_ground(const std::vector<CubeFunction<T>>& fs) {
  for (const auto& f : fs)
    if (f.m() != fs.front().m()) throw UsageError("cube functions over different ground sizes");
}

/// (sum_x |f(x)|^p)^(1/p).
inline double lp_norm(const RealFunction& f, double p) {
  if (!(p >= 1.0)) throw DomainError("lp_norm requires p >= 1");
  // Scale by the sup norm so large or tiny tables do not over/underflow.
  double scale = 0.0;
  for (double v : f.values()) scale = std::max(scale, std::abs(v));
  if (scale == 0.0) return 0.0;
  double acc = 0.0;
  for (double v : f.values()) acc += std::pow(std::abs(v) / scale, p);
  return scale * std::pow(acc, 1.0 / p);
}

// ---------------------------------------------------------------------------
// SetFamily

/// Deduplicated family X of subsets of {1..m}, stored as strictly increasing masks.
class SetFamily {
public:
  explicit SetFamily(int m) : m_(check_m(m)) {}

  /// Sorts and validates; duplicates are rejected.
  SetFamily(int m, std::vector<std::uint64_t> members) : m_(check_m(m)), members_(std::move(members)) {
    std::sort(members_.begin(), members_.end());
    if (std::adjacent_find(members_.begin(), members_.end()) != members_.end())
      throw UsageError("duplicate set in family");
    if (!members_.empty() && m_ < kMaxWordBits && (members_.back() >> m_) != 0)
      throw UsageError("family member outside the ground set");
  }

  int m() const { return m_; }
  std::size_t size() const { return members_.size(); }
  bool empty() const { return members_.empty(); }
  const std::vector<std::uint64_t>& members() const { return members_; }

  bool contains(std::uint64_t bits) const { return std::binary_search(members_.begin(), members_.end(), bits); }

  friend bool operator==(const SetFamily&, const SetFamily&) = default;

private:
  static int check_m(int m) {
    if (m < 0 || m > kMaxWordBits) throw GuardError("family ground size must fit one machine word");
    return m;
  }

  int m_;
  std::vector<std::uint64_t> members_;
};

// ---------------------------------------------------------------------------
// Sharp exponent

/// n, p_n, r = p_n - 1 and the counting exponent c(n) = n / p_n.
struct HoelderParams {
  int n;
  double p;
  double r;
  double c;
};

/// p_n evaluated as [n ln n - (n-1) ln(n-1)] / ln n, cross-checked against the
/// form 1 + (n-1) ln(n/(n-1)) / ln n to 1e-13 relative.
inline HoelderParams exponent(int n) {
  if (n < 2) throw DomainError("exponent requires n >= 2 (p_1 is 0/0)");
  const double dn = n;
  const double ln_n = std::log(dn);
  const double p = (dn * ln_n - (dn - 1.0) * std::log(dn - 1.0)) / ln_n;
  const double alt = 1.0 + (dn - 1.0) * std::log1p(1.0 / (dn - 1.0)) / ln_n;
  if (std::abs(p - alt) > 1e-13 * p) throw std::logic_error("exponent self-consistency check failed");
  return {n, p, p - 1.0, dn / p};
}

// ---------------------------------------------------------------------------
// Corollary encoding

/// f_1 = ... = f_{n-1} = 1_X and f_n(S) = 1_X(complement S), as exact functions on {0,1}^m.
inline std::vector<ExactFunction> family_to_functions(const SetFamily& family, int n) {
  if (n < 2) throw DomainError("family_to_functions requires n >= 2");
  const int m = family.m();
  ExactFunction member(m);
  ExactFunction co_member(m);
  const std::uint64_t full = SubsetMask::full(m).bits();
  for (std::uint64_t a : family.members()) {
    member[a] = 1;
    co_member[full & ~a] = 1;
  }
  std::vector<ExactFunction> fs(static_cast<std::size_t>(n - 1), member);
  fs.push_back(std::move(co_member));
  return fs;
}

}  // namespace hcube
