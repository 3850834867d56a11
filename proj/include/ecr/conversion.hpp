#pragma once

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <limits>
#include <optional>
#include <random>
#include <span>
#include <vector>

#include "ecr/bigint.hpp"
#include "ecr/error.hpp"
#include "ecr/spectrum.hpp"

namespace ecr {

enum class Direction { concentration, dilution };

/// Optimal fidelity of one LOCC conversion between a tensor power of psi and
/// a maximally entangled state of dimension L.
struct ConversionResult {
  double fidelity = 0.0;
  double error = 0.0;  // 1 - fidelity^2
  std::optional<BigInt> flatten_index_J;
  BigInt target_dimension_L;
  Direction direction = Direction::concentration;
};

namespace detail {

// Slack on the log2 comparison in the flatten condition. At an exact tie the
// kept value equals the flat value, so either side of the tie gives the same
// fidelity.
inline constexpr double kFlattenSlack = 1e-12;

inline double clamp_fidelity(double f) {
  if (f < -1e-12 || f > 1.0 + 1e-12 || !std::isfinite(f))
    throw Error(ErrorCode::InternalConsistency, "fidelity out of range: " + std::to_string(f));
  return std::clamp(f, 0.0, 1.0);
}

// Whether the tail beyond `cut` spread over L - cut slots reaches the first
// entry after the cut.
inline bool flatten_condition(const LeveledSpectrum& ls, std::size_t boundary_index, const BigInt& cut,
                              const BigInt& L) {
  if (boundary_index == ls.size()) return true;  // nothing left: tail and threshold are both zero
  const double tail = ls.suffix_log2_mass()[boundary_index];
  const double threshold = ls.levels()[boundary_index].log2_eigenvalue;
  const double average = tail - log2_exact(L - cut);
  return average >= threshold - kFlattenSlack * std::max(1.0, std::abs(threshold));
}

}  // namespace detail

/// Length J of the kept prefix in the flattest vector of length L that
/// majorizes the sorted spectrum: the smallest j in [0, L-1] with
/// (sum_{i>j} p_i) / (L - j) >= p_{j+1}.
///
/// The condition is monotone in j and can only first hold at a level
/// boundary, so a binary search over boundaries below L suffices.
inline BigInt flatten_index(const LeveledSpectrum& ls, const BigInt& L) {
  if (L < 1) throw Error(ErrorCode::InvalidDimension, "target dimension must be >= 1");
  // Boundary k sits at count_before(k); boundaries 0..last are those below L.
  std::size_t last = 0;
  {
    std::size_t lo = 0;
    std::size_t hi = ls.size();  // boundary index ls.size() is the total count
    while (lo < hi) {
      const std::size_t mid = lo + (hi - lo + 1) / 2;
      if (ls.count_before(mid) < L)
        lo = mid;
      else
        hi = mid - 1;
    }
    last = lo;
  }
  std::size_t lo = 0;
  std::size_t hi = last;
  while (lo < hi) {
    const std::size_t mid = lo + (hi - lo) / 2;
    if (detail::flatten_condition(ls, mid, ls.count_before(mid), L))
      hi = mid;
    else
      lo = mid + 1;
  }
  return ls.count_before(lo);
}

/// Best fidelity of converting the state with spectrum `ls` into a maximally
/// entangled state of dimension L:
///   F = L^{-1/2} sum_{i<=J} sqrt(p_i) + sqrt((1 - J/L) sum_{i>J} p_i).
inline ConversionResult concentration_fidelity(const LeveledSpectrum& ls, const BigInt& L) {
  const BigInt J = flatten_index(ls, L);
  const double log2_L = log2_exact(L);
  double f = 0.0;
  if (J > 0) f += std::exp2(ls.log2_prefix_sqrt_mass(J) - 0.5 * log2_L);
  const double log2_tail = ls.log2_tail_mass(J);
  if (!std::isinf(log2_tail)) f += std::exp2(0.5 * (log2_exact(L - J) - log2_L + log2_tail));
  ConversionResult r;
  r.fidelity = detail::clamp_fidelity(f);
  r.error = std::clamp(1.0 - r.fidelity * r.fidelity, 0.0, 1.0);
  r.flatten_index_J = J;
  r.target_dimension_L = L;
  r.direction = Direction::concentration;
  return r;
}

/// Best fidelity of producing the state with spectrum `target` from a
/// maximally entangled state of dimension L: F = sqrt(sum_{i<=L} p_i).
inline ConversionResult dilution_fidelity(const LeveledSpectrum& target, const BigInt& L) {
  if (L < 1) throw Error(ErrorCode::InvalidDimension, "source dimension must be >= 1");
  ConversionResult r;
  r.error = std::clamp(tail_mass(target, L), 0.0, 1.0);
  r.fidelity = detail::clamp_fidelity(std::sqrt(1.0 - r.error));
  r.target_dimension_L = L;
  r.direction = Direction::dilution;
  return r;
}

/// d(psi^{(x)n} -> Phi^{(x)m}) on a precomputed source spectrum.
inline double concentration_error(const LeveledSpectrum& source, std::uint64_t m) {
  return concentration_fidelity(source, pow2(m)).error;
}

/// d(Phi^{(x)m} -> psi^{(x)N}) on a precomputed target spectrum.
inline double dilution_error(const LeveledSpectrum& target, std::uint64_t m) {
  return dilution_fidelity(target, pow2(m)).error;
}

inline double concentration_error(const SchmidtVector& sv, std::uint64_t n, std::uint64_t m) {
  if (m < 1) throw Error(ErrorCode::InvalidDimension, "EPR count must be >= 1");
  return concentration_error(power_spectrum(sv, n), m);
}

inline double dilution_error(const SchmidtVector& sv, std::uint64_t N, std::uint64_t m) {
  if (m < 1) throw Error(ErrorCode::InvalidDimension, "EPR count must be >= 1");
  return dilution_error(power_spectrum(sv, N), m);
}

// ---------------------------------------------------------------------------
// Brute-force oracle for the concentration fidelity on small dimensions.
// Works directly on dense vectors and never calls flatten_index.

struct FidelityOracleReport {
  double value = 0.0;               // best objective found by any route
  double constructed_value = 0.0;   // best feasible keep-then-flatten vector
  double best_competitor = 0.0;     // best perturbation / random / grid point
  bool constructed_feasible = false;
  std::size_t competitors_checked = 0;
};

namespace detail {

inline constexpr double kOracleTol = 1e-12;

inline double oracle_objective(std::span<const double> q) {
  double s = 0.0;
  for (double x : q) s += std::sqrt(std::max(x, 0.0));
  return s / std::sqrt(static_cast<double>(q.size()));
}

// q sorted, non-negative, sums to one, and majorizes p (prefix sums dominate).
inline bool oracle_feasible(std::span<const double> q, std::span<const double> p) {
  double sum = 0.0;
  for (std::size_t i = 0; i < q.size(); ++i) {
    if (q[i] < -kOracleTol) return false;
    if (i + 1 < q.size() && q[i] + kOracleTol < q[i + 1]) return false;
    sum += q[i];
  }
  if (std::abs(sum - 1.0) > 1e-9) return false;
  double sq = 0.0;
  double sp = 0.0;
  const std::size_t len = std::max(q.size(), p.size());
  for (std::size_t k = 0; k < len; ++k) {
    sq += k < q.size() ? q[k] : 0.0;
    sp += k < p.size() ? p[k] : 0.0;
    if (sq + 1e-11 < sp) return false;
  }
  return true;
}

}  // namespace detail

/// Independent check of the concentration fidelity for L <= 8 and at most
/// 8 Schmidt coefficients.
///
/// Maximizes sum_i sqrt(q_i / L) over sorted q majorizing p by combining:
///   - every keep-then-flatten candidate (first j entries of p, rest flat),
///     filtered for feasibility;
///   - hill climbing from the best candidate with pairwise and
///     point-to-block mass transfers of size 1e-6;
///   - seeded random feasible points (convex mixes toward (1,0,...,0));
///   - an exhaustive 1e-3 grid when L <= 3.
/// The objective is concave and the feasible set a polytope, so a point with
/// no improving local move is the global maximum.
inline FidelityOracleReport brute_force_report(std::span<const double> probs, std::size_t L,
                                               std::uint64_t seed = 12345) {
  if (L < 1) throw Error(ErrorCode::InvalidDimension, "oracle dimension must be >= 1");
  if (L > 8 || probs.size() > 8) throw Error(ErrorCode::DimensionTooLargeForOracle, "oracle supports L <= 8, rank <= 8");
  std::vector<double> p(probs.begin(), probs.end());
  std::sort(p.begin(), p.end(), std::greater<>());
  const std::size_t M = p.size();

  FidelityOracleReport rep;
  std::vector<double> best;

  for (std::size_t j = 0; j <= L; ++j) {
    std::vector<double> q(L, 0.0);
    double tail = 0.0;
    for (std::size_t i = 0; i < M; ++i) {
      if (i < j)
        q[i] = p[i];
      else
        tail += p[i];
    }
    if (j < L) {
      for (std::size_t i = j; i < L; ++i) q[i] = tail / static_cast<double>(L - j);
    } else if (tail > detail::kOracleTol) {
      continue;
    }
    if (!detail::oracle_feasible(q, p)) continue;
    const double v = detail::oracle_objective(q);
    if (!rep.constructed_feasible || v > rep.constructed_value) {
      rep.constructed_value = v;
      best = q;
    }
    rep.constructed_feasible = true;
  }
  if (!rep.constructed_feasible) {
    best.assign(L, 0.0);
    best[0] = 1.0;
    rep.constructed_value = detail::oracle_objective(best);
  }

  double best_value = rep.constructed_value;
  auto consider = [&](const std::vector<double>& q) {
    ++rep.competitors_checked;
    if (!detail::oracle_feasible(q, p)) return false;
    const double v = detail::oracle_objective(q);
    rep.best_competitor = std::max(rep.best_competitor, v);
    if (v > best_value + 1e-15) {
      best_value = v;
      best = q;
      return true;
    }
    return false;
  };

  // Local moves: point-to-point and point-to/from-contiguous-block transfers.
  constexpr double step = 1e-6;
  for (int round = 0; round < 200; ++round) {
    bool improved = false;
    const std::vector<double> base = best;
    for (std::size_t i = 0; i < L && !improved; ++i) {
      for (std::size_t a = 0; a < L && !improved; ++a) {
        for (std::size_t b = a; b < L && !improved; ++b) {
          if (i >= a && i <= b) continue;
          const double share = step / static_cast<double>(b - a + 1);
          std::vector<double> out = base;
          out[i] -= step;
          for (std::size_t k = a; k <= b; ++k) out[k] += share;
          improved = consider(out);
          if (improved) break;
          std::vector<double> in = base;
          in[i] += step;
          for (std::size_t k = a; k <= b; ++k) in[k] -= share;
          improved = consider(in);
        }
      }
    }
    if (!improved) break;
  }

  // Random feasible competitors.
  std::mt19937_64 rng(seed);
  std::gamma_distribution<double> gamma(1.0, 1.0);
  std::vector<double> corner(L, 0.0);
  corner[0] = 1.0;
  for (int s = 0; s < 2000; ++s) {
    std::vector<double> r(L);
    double total = 0.0;
    for (double& x : r) total += (x = gamma(rng));
    for (double& x : r) x /= total;
    std::sort(r.begin(), r.end(), std::greater<>());
    // Mix toward a feasible anchor until feasible.
    const std::vector<double>& anchor = (s % 2 == 0) ? corner : best;
    for (double lambda = 1.0; lambda > 1e-4; lambda *= 0.5) {
      std::vector<double> z(L);
      for (std::size_t k = 0; k < L; ++k) z[k] = lambda * r[k] + (1.0 - lambda) * anchor[k];
      if (detail::oracle_feasible(z, p)) {
        consider(z);
        break;
      }
    }
  }

  if (L <= 3) {
    constexpr int grid = 1000;
    std::vector<double> q(L);
    for (int a = 0; a <= grid; ++a) {
      if (L == 1) {
        if (a != grid) continue;
        q[0] = 1.0;
        consider(q);
        continue;
      }
      for (int b = 0; b <= a; ++b) {
        const int c = grid - a - b;
        if (L == 2) {
          if (c != 0) continue;
          q[0] = a / double(grid);
          q[1] = b / double(grid);
          consider(q);
          continue;
        }
        if (c < 0 || c > b) continue;
        q[0] = a / double(grid);
        q[1] = b / double(grid);
        q[2] = c / double(grid);
        consider(q);
      }
    }
  }

  rep.value = best_value;
  return rep;
}

/// Best concentration fidelity found by the brute-force oracle.
inline double brute_force_fidelity(std::span<const double> probs, std::size_t L) {
  return brute_force_report(probs, L).value;
}

}  // namespace ecr
