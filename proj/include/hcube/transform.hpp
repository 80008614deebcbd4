#pragma once

// Zeta/Moebius transforms over the subset lattice and fast disjoint-union
// (subset) convolution by ranked transforms.

#include <algorithm>
#include <bit>
#include <cmath>
#include <cstdint>
#include <string>
#include <vector>

#include "hcube/core.hpp"

namespace hcube {

enum class Method { fast, brute };

/// g(S) = sum_{T subset of S} f(T), in O(m 2^m).
template <class T>
CubeFunction<T> zeta(CubeFunction<T> f) {
  const std::uint64_t size = f.size();
  for (std::uint64_t bit = 1; bit < size; bit <<= 1)
    for (std::uint64_t s = 0; s < size; ++s)
      if (s & bit) f[s] += f[s ^ bit];
  return f;
}

/// Inverse of zeta: f(S) = sum_{T subset of S} (-1)^{|S \ T|} g(T).
template <class T>
CubeFunction<T> moebius(CubeFunction<T> g) {
  const std::uint64_t size = g.size();
  for (std::uint64_t bit = 1; bit < size; bit <<= 1)
    for (std::uint64_t s = 0; s < size; ++s)
      if (s & bit) g[s] -= g[s ^ bit];
  return g;
}

/// (m+1) x 2^m table of rank-split transform coefficients. Stored mask-major so
/// that the rank polynomial of one mask is contiguous.
template <class T>
class RankedTable {
public:
  explicit RankedTable(int m) : m_(m), data_((std::size_t{1} << m) * static_cast<std::size_t>(m + 1)) {}

  int m() const { return m_; }
  std::size_t width() const { return static_cast<std::size_t>(m_) + 1; }

  const T& coeff(int rank, std::uint64_t mask) const { return data_[mask * width() + static_cast<std::size_t>(rank)]; }
  T& coeff(int rank, std::uint64_t mask) { return data_[mask * width() + static_cast<std::size_t>(rank)]; }

  T* row(std::uint64_t mask) { return data_.data() + mask * width(); }
  const T* row(std::uint64_t mask) const { return data_.data() + mask * width(); }

private:
  int m_;
  std::vector<T> data_;
};

namespace detail {

// Zeta on every rank layer at once. The row of S' = S ^ bit only has nonzero
// ranks up to popcount(S') at this point, so shorter row adds suffice.
template <class W>
void ranked_zeta_inplace(RankedTable<W>& table) {
  const std::uint64_t size = std::uint64_t{1} << table.m();
  for (std::uint64_t bit = 1; bit < size; bit <<= 1)
    for (std::uint64_t s = 0; s < size; ++s) {
      if (!(s & bit)) continue;
      const std::uint64_t src = s ^ bit;
      const int top = std::popcount(src);
      W* dst_row = table.row(s);
      const W* src_row = table.row(src);
      for (int k = 0; k <= top; ++k) dst_row[k] += src_row[k];
    }
}

template <class W>
void ranked_moebius_inplace(RankedTable<W>& table) {
  const std::uint64_t size = std::uint64_t{1} << table.m();
  const int width = table.m() + 1;
  for (std::uint64_t bit = 1; bit < size; bit <<= 1)
    for (std::uint64_t s = 0; s < size; ++s) {
      if (!(s & bit)) continue;
      W* dst_row = table.row(s);
      const W* src_row = table.row(s ^ bit);
      for (int k = 0; k < width; ++k) dst_row[k] -= src_row[k];
    }
}

template <class W>
RankedTable<W> ranked_lift(const std::vector<W>& f, int m) {
  RankedTable<W> table(m);
  for (std::uint64_t s = 0; s < f.size(); ++s) table.coeff(std::popcount(s), s) = f[s];
  ranked_zeta_inplace(table);
  return table;
}

// Rank-polynomial product at every mask, written into lhs, truncated at degree m.
template <class W>
void ranked_multiply_into(RankedTable<W>& lhs, const RankedTable<W>& rhs) {
  const std::uint64_t size = std::uint64_t{1} << lhs.m();
  const int m = lhs.m();
  std::vector<W> tmp(static_cast<std::size_t>(m) + 1);
  for (std::uint64_t s = 0; s < size; ++s) {
    W* a = lhs.row(s);
    const W* b = rhs.row(s);
    const int top = std::popcount(s);
    for (int k = 0; k <= m; ++k) {
      W acc{};
      // a[i] and b[j] vanish above popcount(s).
      const int lo = k > top ? k - top : 0;
      const int hi = k < top ? k : top;
      for (int i = lo; i <= hi; ++i) acc += a[i] * b[k - i];
      tmp[static_cast<std::size_t>(k)] = acc;
    }
    for (int k = 0; k <= m; ++k) a[k] = tmp[static_cast<std::size_t>(k)];
  }
}

template <class W>
std::vector<W> convolve_words(const std::vector<W>& f, const std::vector<W>& g, int m) {
  auto fh = ranked_lift(f, m);
  {
    const auto gh = ranked_lift(g, m);
    ranked_multiply_into(fh, gh);
  }
  ranked_moebius_inplace(fh);
  std::vector<W> h(f.size());
  for (std::uint64_t s = 0; s < h.size(); ++s) h[s] = fh.coeff(std::popcount(s), s);
  return h;
}

// Only the full-mask entry of f * g: the Moebius transform at one point is the
// signed sum of the top-rank product coefficient.
template <class W>
W convolve_words_at_full(const std::vector<W>& f, const std::vector<W>& g, int m) {
  const auto fh = ranked_lift(f, m);
  const auto gh = ranked_lift(g, m);
  W plus{};
  W minus{};
  for (std::uint64_t s = 0; s < f.size(); ++s) {
    const int top = std::popcount(s);
    if (2 * top < m) continue;
    W acc{};
    for (int i = m - top; i <= top; ++i) acc += fh.coeff(i, s) * gh.coeff(m - i, s);
    if ((m - top) % 2 == 0)
      plus += acc;
    else
      minus += acc;
  }
  return plus - minus;
}

// Exact values are carried through wrapping machine words whenever the result
// magnitude is provably below half the word range. Arithmetic mod 2^w is a ring
// homomorphism, so intermediate wrap-around does not affect the final residue.
using u128 = unsigned __int128;

inline std::size_t bit_length(const Exact& v) { return v == 0 ? 0 : boost::multiprecision::msb(abs(v)) + 1; }

inline std::size_t max_bit_length(const ExactFunction& f) {
  std::size_t bits = 0;
  for (const auto& v : f.values()) bits = std::max(bits, bit_length(v));
  return bits;
}

template <class W>
W to_word(const Exact& v) {
  const Exact mag = abs(v);
  W w;
  if constexpr (std::is_same_v<W, std::uint64_t>) {
    w = static_cast<std::uint64_t>(mag);
  } else {
    const auto lo = static_cast<std::uint64_t>(mag & Exact(~std::uint64_t{0}));
    const auto hi = static_cast<std::uint64_t>(mag >> 64);
    w = (static_cast<u128>(hi) << 64) | lo;
  }
  return v < 0 ? W{0} - w : w;
}

template <class W>
Exact from_word(W w) {
  constexpr W top_bit = W{1} << (sizeof(W) * 8 - 1);
  const bool negative = (w & top_bit) != 0;
  const W mag = negative ? W{0} - w : w;
  Exact out;
  if constexpr (std::is_same_v<W, std::uint64_t>) {
    out = mag;
  } else {
    out = Exact(static_cast<std::uint64_t>(mag >> 64));
    out <<= 64;
    out |= static_cast<std::uint64_t>(mag);
  }
  return negative ? Exact(-out) : out;
}

template <class W>
std::vector<W> to_words(const ExactFunction& f) {
  std::vector<W> out(f.size());
  for (std::size_t i = 0; i < out.size(); ++i) out[i] = to_word<W>(f[i]);
  return out;
}

template <class W>
ExactFunction from_words(const std::vector<W>& h, int m) {
  ExactFunction out(m);
  for (std::size_t i = 0; i < h.size(); ++i) out[i] = from_word(h[i]);
  return out;
}

template <class T>
void require_same_m(const CubeFunction<T>& f, const CubeFunction<T>& g) {
  if (f.m() != g.m()) throw UsageError("subset_convolve: ground sizes differ");
}

// |(f*g)(S)| <= max|f| max|g| 2^m, so this many bits bound every output entry.
inline std::size_t product_bits(const ExactFunction& f, const ExactFunction& g) {
  return max_bit_length(f) + max_bit_length(g) + static_cast<std::size_t>(f.m());
}

}  // namespace detail

/// Rank-split zeta transform: coeff(k, S) = sum over T subset of S with |T| = k of f(T).
template <class T>
RankedTable<T> ranked_zeta(const CubeFunction<T>& f) {
  return detail::ranked_lift(f.values(), f.m());
}

/// Inverse of ranked_zeta applied layer by layer.
template <class T>
RankedTable<T> ranked_moebius(RankedTable<T> table) {
  detail::ranked_moebius_inplace(table);
  return table;
}

/// h(S) = sum over disjoint A, B with A u B = S of f(A) g(B).
inline RealFunction subset_convolve(const RealFunction& f, const RealFunction& g) {
  detail::require_same_m(f, g);
  return RealFunction(f.m(), detail::convolve_words(f.values(), g.values(), f.m()));
}

inline ExactFunction subset_convolve(const ExactFunction& f, const ExactFunction& g) {
  detail::require_same_m(f, g);
  const int m = f.m();
  const std::size_t bits = detail::product_bits(f, g);
  if (bits <= 62) {
    auto h = detail::convolve_words(detail::to_words<std::uint64_t>(f), detail::to_words<std::uint64_t>(g), m);
    return detail::from_words(h, m);
  }
  if (bits <= 126) {
    auto h = detail::convolve_words(detail::to_words<detail::u128>(f), detail::to_words<detail::u128>(g), m);
    return detail::from_words(h, m);
  }
  return ExactFunction(m, detail::convolve_words(f.values(), g.values(), m));
}

namespace detail {

inline double convolve_at_full(const RealFunction& f, const RealFunction& g) {
  return convolve_words_at_full(f.values(), g.values(), f.m());
}

inline Exact convolve_at_full(const ExactFunction& f, const ExactFunction& g) {
  const int m = f.m();
  const std::size_t bits = product_bits(f, g);
  if (bits <= 62)
    return from_word(convolve_words_at_full(to_words<std::uint64_t>(f), to_words<std::uint64_t>(g), m));
  if (bits <= 126) return from_word(convolve_words_at_full(to_words<u128>(f), to_words<u128>(g), m));
  return convolve_words_at_full(f.values(), g.values(), m);
}

inline constexpr double kBruteBudget = 1e8;

// Every coordinate goes to exactly one of the n blocks: n^m labelled partitions.
template <class T>
T corner_brute(const std::vector<CubeFunction<T>>& fs) {
  const int n = static_cast<int>(fs.size());
  const int m = fs.front().m();
  if (std::pow(static_cast<double>(n), m) > kBruteBudget)
    throw GuardError("brute-force corner convolution exceeds 1e8 terms");
  std::vector<int> label(static_cast<std::size_t>(m), 0);
  std::vector<std::uint64_t> masks(static_cast<std::size_t>(n), 0);
  masks[0] = SubsetMask::full(m).bits();
  T total{};
  while (true) {
    T term = fs[0][masks[0]];
    for (int j = 1; j < n; ++j) term *= fs[static_cast<std::size_t>(j)][masks[static_cast<std::size_t>(j)]];
    total += term;
    // Odometer over labels, moving coordinate i between blocks.
    int i = 0;
    for (; i < m; ++i) {
      const auto idx = static_cast<std::size_t>(i);
      const std::uint64_t bit = std::uint64_t{1} << i;
      masks[static_cast<std::size_t>(label[idx])] &= ~bit;
      if (++label[idx] < n) {
        masks[static_cast<std::size_t>(label[idx])] |= bit;
        break;
      }
      label[idx] = 0;
      masks[0] |= bit;
    }
    if (i == m) break;
  }
  return total;
}

}  // namespace detail

/// f_1 * ... * f_n evaluated at the corner 1^m: the sum over x_1 + ... + x_n = 1^m
/// of prod_j f_j(x_j). The fast method folds subset_convolve left to right.
template <class T>
T corner_convolution(const std::vector<CubeFunction<T>>& fs, Method method = Method::fast) {
  if (fs.empty()) throw UsageError("corner_convolution needs at least one function");
  require_same_ground(fs);
  if (method == Method::brute) return detail::corner_brute(fs);
  if (fs.size() == 1) return fs.front()[SubsetMask::full(fs.front().m()).bits()];
  CubeFunction<T> acc = fs.front();
  for (std::size_t j = 1; j + 1 < fs.size(); ++j) acc = subset_convolve(acc, fs[j]);
  return detail::convolve_at_full(acc, fs.back());
}

}  // namespace hcube
