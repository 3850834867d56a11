#pragma once

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <functional>
#include <limits>
#include <numeric>
#include <span>
#include <utility>
#include <vector>

#include "ecr/bigint.hpp"
#include "ecr/error.hpp"
#include "ecr/log_sum.hpp"

namespace ecr {

/// Squared Schmidt coefficients of a bipartite pure state, sorted
/// non-increasing, strictly positive, summing to one.
class SchmidtVector {
 public:
  SchmidtVector() = default;

  const std::vector<double>& probs() const noexcept { return probs_; }
  std::size_t rank() const noexcept { return probs_.size(); }
  double operator[](std::size_t i) const { return probs_[i]; }

  /// Qubit state sqrt(p)|00> + sqrt(1-p)|11>, 0 <= p <= 1.
  static SchmidtVector qubit(double p);

 private:
  friend SchmidtVector make_schmidt(std::span<const double> probs);
  std::vector<double> probs_;
};

/// Validates, sorts and (for tiny drift only) renormalizes a probability list.
inline SchmidtVector make_schmidt(std::span<const double> probs) {
  if (probs.empty()) throw Error(ErrorCode::EmptyInput, "Schmidt vector has no entries");
  double total = 0.0;
  for (double p : probs) {
    if (!(p >= 0.0) || !std::isfinite(p)) throw Error(ErrorCode::NegativeEntry, "negative or non-finite Schmidt probability");
    total += p;
  }
  if (total <= 0.0) throw Error(ErrorCode::EmptyInput, "Schmidt vector has no positive entry");
  if (std::abs(total - 1.0) > 1e-9) throw Error(ErrorCode::NotNormalized, "Schmidt probabilities sum to " + std::to_string(total));

  SchmidtVector sv;
  for (double p : probs)
    if (p > 0.0) sv.probs_.push_back(p);
  std::sort(sv.probs_.begin(), sv.probs_.end(), std::greater<>());
  if (total != 1.0)
    for (double& p : sv.probs_) p /= total;
  return sv;
}

inline SchmidtVector make_schmidt(std::initializer_list<double> probs) {
  return make_schmidt(std::span<const double>(probs.begin(), probs.size()));
}

inline SchmidtVector SchmidtVector::qubit(double p) {
  const double both[] = {p, 1.0 - p};
  return make_schmidt(both);
}

/// Smallest k with 2^k >= r.
inline std::uint64_t ceil_log2(std::uint64_t r) {
  std::uint64_t k = 0;
  while ((std::uint64_t{1} << k) < r) ++k;
  return k;
}

/// A block of equal eigenvalues in a sorted tensor-power spectrum.
struct Level {
  double log2_eigenvalue = 0.0;
  BigInt multiplicity;
  BigInt cumulative_count;
  /// Exponents against the distinct base probabilities (descending values).
  std::vector<std::uint32_t> exponents;
};

/// Default cap on the number of levels a spectrum may hold.
inline constexpr std::size_t kDefaultLevelLimit = 5'000'000;

/// Level-compressed sorted spectrum of (Tr_B psi)^{(x)n}.
///
/// Levels are sorted by eigenvalue, largest first. Counts are exact; masses
/// are stored as base-2 logarithms of prefix and suffix sums so that both the
/// head and the tail of the spectrum can be read without cancellation.
/// Immutable after construction.
class LeveledSpectrum {
 public:
  const SchmidtVector& base() const noexcept { return base_; }
  std::uint64_t copies() const noexcept { return copies_; }
  const std::vector<Level>& levels() const noexcept { return levels_; }
  std::size_t size() const noexcept { return levels_.size(); }
  const BigInt& total_count() const { return levels_.back().cumulative_count; }

  /// log2 of the mass of levels [0, i], i.e. up to and including level i.
  const std::vector<double>& prefix_log2_mass() const noexcept { return prefix_log2_mass_; }
  /// log2 of sum of multiplicity * sqrt(eigenvalue) over levels [0, i].
  const std::vector<double>& prefix_log2_sqrt_mass() const noexcept { return prefix_log2_sqrt_mass_; }
  /// log2 of the mass of levels [i, end).
  const std::vector<double>& suffix_log2_mass() const noexcept { return suffix_log2_mass_; }

  /// Index of the level holding the count-th entry (1-based), i.e. the first
  /// level whose cumulative count reaches `count`. Requires 1 <= count <= total.
  std::size_t level_of(const BigInt& count) const {
    auto it = std::lower_bound(levels_.begin(), levels_.end(), count,
                               [](const Level& lv, const BigInt& c) { return lv.cumulative_count < c; });
    return static_cast<std::size_t>(it - levels_.begin());
  }

  /// Number of entries in levels before `i`.
  BigInt count_before(std::size_t i) const { return i == 0 ? BigInt(0) : levels_[i - 1].cumulative_count; }

  /// log2 of the sum of the largest min(count, total) eigenvalues.
  double log2_prefix_mass(const BigInt& count) const {
    constexpr double neg_inf = -std::numeric_limits<double>::infinity();
    if (count <= 0) return neg_inf;
    if (count >= total_count()) return prefix_log2_mass_.back();
    const std::size_t i = level_of(count);
    Log2Sum s;
    if (i > 0) s.add(prefix_log2_mass_[i - 1]);
    s.add(log2_exact(count - count_before(i)) + levels_[i].log2_eigenvalue);
    return s.log2();
  }

  /// log2 of the sum of all eigenvalues after the largest `count` ones.
  double log2_tail_mass(const BigInt& count) const {
    constexpr double neg_inf = -std::numeric_limits<double>::infinity();
    if (count >= total_count()) return neg_inf;
    if (count <= 0) return suffix_log2_mass_.front();
    const std::size_t i = level_of(count);
    Log2Sum s;
    // count is strictly inside or at the end of level i.
    s.add(log2_exact(levels_[i].cumulative_count - count) + levels_[i].log2_eigenvalue);
    if (i + 1 < levels_.size()) s.add(suffix_log2_mass_[i + 1]);
    return s.log2();
  }

  /// log2 of the sum of sqrt(eigenvalue) over the largest `count` entries.
  double log2_prefix_sqrt_mass(const BigInt& count) const {
    constexpr double neg_inf = -std::numeric_limits<double>::infinity();
    if (count <= 0) return neg_inf;
    if (count > total_count()) throw Error(ErrorCode::CountExceedsTotal, "prefix count exceeds spectrum size");
    const std::size_t i = level_of(count);
    Log2Sum s;
    if (i > 0) s.add(prefix_log2_sqrt_mass_[i - 1]);
    s.add(log2_exact(count - count_before(i)) + 0.5 * levels_[i].log2_eigenvalue);
    return s.log2();
  }

 private:
  friend LeveledSpectrum power_spectrum(const SchmidtVector& sv, std::uint64_t n, std::size_t level_limit);

  SchmidtVector base_;
  std::uint64_t copies_ = 0;
  std::vector<Level> levels_;
  std::vector<double> prefix_log2_mass_;
  std::vector<double> prefix_log2_sqrt_mass_;
  std::vector<double> suffix_log2_mass_;
};

namespace detail {

struct DistinctValue {
  double value;
  std::uint32_t count;
};

inline std::vector<DistinctValue> distinct_values(const SchmidtVector& sv) {
  std::vector<DistinctValue> out;
  for (double p : sv.probs()) {
    if (!out.empty() && out.back().value == p)
      ++out.back().count;
    else
      out.push_back({p, 1});
  }
  return out;
}

// Number of compositions of n into k non-negative parts, saturating at cap + 1.
inline std::uint64_t composition_count(std::uint64_t n, std::uint64_t k, std::uint64_t cap) {
  if (k <= 1) return 1;
  // C(n + k - 1, k - 1) computed incrementally with saturation.
  BigInt c = 1;
  for (std::uint64_t i = 1; i < k; ++i) {
    c = c * (n + i) / i;
    if (c > cap) return cap + 1;
  }
  return static_cast<std::uint64_t>(c);
}

inline std::vector<BigInt> integer_powers(std::uint32_t base, std::uint64_t n) {
  std::vector<BigInt> out(n + 1);
  out[0] = 1;
  for (std::uint64_t i = 1; i <= n; ++i) out[i] = out[i - 1] * base;
  return out;
}

}  // namespace detail

/// Sorted, level-compressed spectrum of the n-fold tensor power of the
/// reduced state with Schmidt probabilities `sv`.
///
/// Entries equal to each other in `sv` are treated as one distinct value
/// with a degeneracy; a level is one exponent pattern over the distinct
/// values, with multiplicity n!/prod(e_j!) * prod(c_j^e_j). Patterns that
/// happen to give the same floating eigenvalue stay separate levels, ordered
/// by exponent vector.
inline LeveledSpectrum power_spectrum(const SchmidtVector& sv, std::uint64_t n,
                                      std::size_t level_limit = kDefaultLevelLimit) {
  if (sv.rank() == 0) throw Error(ErrorCode::EmptyInput, "empty Schmidt vector");
  const auto distinct = detail::distinct_values(sv);
  const std::size_t d = distinct.size();
  const std::uint64_t n_levels = detail::composition_count(n, d, level_limit);
  if (n_levels > level_limit)
    throw Error(ErrorCode::RankTooLargeForN, "tensor power has more than " + std::to_string(level_limit) + " levels");

  std::vector<double> log2_values(d);
  for (std::size_t j = 0; j < d; ++j) log2_values[j] = std::log2(distinct[j].value);

  std::vector<std::vector<BigInt>> degeneracy_powers(d);
  for (std::size_t j = 0; j < d; ++j)
    if (distinct[j].count > 1) degeneracy_powers[j] = detail::integer_powers(distinct[j].count, n);

  LeveledSpectrum ls;
  ls.base_ = sv;
  ls.copies_ = n;
  ls.levels_.reserve(static_cast<std::size_t>(n_levels));

  auto eigen_log2 = [&](const std::vector<std::uint32_t>& e) {
    double acc = 0.0;
    for (std::size_t j = 0; j < d; ++j)
      if (e[j] != 0) acc += static_cast<double>(e[j]) * log2_values[j];
    return acc;
  };
  auto degeneracy = [&](const std::vector<std::uint32_t>& e, BigInt& mult) {
    for (std::size_t j = 0; j < d; ++j)
      if (distinct[j].count > 1) mult *= degeneracy_powers[j][e[j]];
  };

  if (d == 1) {
    Level lv;
    lv.exponents = {static_cast<std::uint32_t>(n)};
    lv.multiplicity = 1;
    degeneracy(lv.exponents, lv.multiplicity);
    lv.log2_eigenvalue = eigen_log2(lv.exponents);
    ls.levels_.push_back(std::move(lv));
  } else if (d == 2) {
    // Binomial fast path: C(n, k+1) = C(n, k) (n - k) / (k + 1).
    BigInt binom = 1;
    for (std::uint64_t k = 0; k <= n; ++k) {
      Level lv;
      lv.exponents = {static_cast<std::uint32_t>(n - k), static_cast<std::uint32_t>(k)};
      lv.multiplicity = binom;
      degeneracy(lv.exponents, lv.multiplicity);
      lv.log2_eigenvalue = eigen_log2(lv.exponents);
      ls.levels_.push_back(std::move(lv));
      if (k < n) binom = binom * (n - k) / (k + 1);
    }
  } else {
    std::vector<BigInt> factorial(n + 1);
    factorial[0] = 1;
    for (std::uint64_t i = 1; i <= n; ++i) factorial[i] = factorial[i - 1] * i;

    std::vector<std::uint32_t> e(d, 0);
    // Enumerate compositions recursively; the last part takes the remainder.
    std::function<void(std::size_t, std::uint64_t, const BigInt&)> visit =
        [&](std::size_t j, std::uint64_t remaining, const BigInt& denom) {
          if (j + 1 == d) {
            e[j] = static_cast<std::uint32_t>(remaining);
            Level lv;
            lv.exponents = e;
            lv.multiplicity = factorial[n] / (denom * factorial[remaining]);
            degeneracy(lv.exponents, lv.multiplicity);
            lv.log2_eigenvalue = eigen_log2(lv.exponents);
            ls.levels_.push_back(std::move(lv));
            return;
          }
          for (std::uint64_t k = remaining + 1; k-- > 0;) {
            e[j] = static_cast<std::uint32_t>(k);
            visit(j + 1, remaining - k, denom * factorial[k]);
          }
        };
    visit(0, n, BigInt(1));
  }

  std::stable_sort(ls.levels_.begin(), ls.levels_.end(), [](const Level& a, const Level& b) {
    if (a.log2_eigenvalue != b.log2_eigenvalue) return a.log2_eigenvalue > b.log2_eigenvalue;
    return a.exponents > b.exponents;
  });

  const std::size_t count = ls.levels_.size();
  ls.prefix_log2_mass_.resize(count);
  ls.prefix_log2_sqrt_mass_.resize(count);
  ls.suffix_log2_mass_.resize(count);
  BigInt running = 0;
  Log2Sum mass;
  Log2Sum sqrt_mass;
  std::vector<double> log2_mult(count);
  for (std::size_t i = 0; i < count; ++i) {
    Level& lv = ls.levels_[i];
    running += lv.multiplicity;
    lv.cumulative_count = running;
    log2_mult[i] = log2_exact(lv.multiplicity);
    mass.add(log2_mult[i] + lv.log2_eigenvalue);
    sqrt_mass.add(log2_mult[i] + 0.5 * lv.log2_eigenvalue);
    ls.prefix_log2_mass_[i] = mass.log2();
    ls.prefix_log2_sqrt_mass_[i] = sqrt_mass.log2();
  }
  Log2Sum tail;
  for (std::size_t i = count; i-- > 0;) {
    tail.add(log2_mult[i] + ls.levels_[i].log2_eigenvalue);
    ls.suffix_log2_mass_[i] = tail.log2();
  }
  return ls;
}

/// Sum of the largest min(count, total) eigenvalues.
inline double prefix_mass(const LeveledSpectrum& ls, const BigInt& count) {
  return std::exp2(ls.log2_prefix_mass(count));
}

/// Sum of the eigenvalues after the largest `count`; equals 1 - prefix_mass
/// without the cancellation.
inline double tail_mass(const LeveledSpectrum& ls, const BigInt& count) {
  return std::exp2(ls.log2_tail_mass(count));
}

/// Sum of sqrt(eigenvalue) over the largest `count` entries.
inline double prefix_sqrt_mass(const LeveledSpectrum& ls, const BigInt& count) {
  return std::exp2(ls.log2_prefix_sqrt_mass(count));
}

/// A cut position in the sorted spectrum and the log2 eigenvalue of the
/// first entry after the cut (-inf past the end).
struct Boundary {
  BigInt cumulative_count;
  double log2_eigenvalue;
};

/// Candidate cut positions: 0 followed by each level's cumulative count.
inline std::vector<Boundary> level_boundaries(const LeveledSpectrum& ls) {
  std::vector<Boundary> out;
  out.reserve(ls.size() + 1);
  out.push_back({BigInt(0), ls.levels().front().log2_eigenvalue});
  for (std::size_t i = 0; i < ls.size(); ++i) {
    const double next = i + 1 < ls.size() ? ls.levels()[i + 1].log2_eigenvalue
                                          : -std::numeric_limits<double>::infinity();
    out.push_back({ls.levels()[i].cumulative_count, next});
  }
  return out;
}

}  // namespace ecr
