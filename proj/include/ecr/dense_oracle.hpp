#pragma once

// Dense reference computations on fully expanded spectra. Small sizes only;
// shares no code with the leveled path beyond the Schmidt vector type.

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <functional>
#include <span>
#include <vector>

#include "ecr/error.hpp"

namespace ecr::dense {

inline constexpr std::size_t kMaxDenseEntries = std::size_t{1} << 22;

/// All r^n products of the probabilities, sorted non-increasing.
inline std::vector<double> spectrum(std::span<const double> probs, std::uint64_t n) {
  std::vector<double> out{1.0};
  for (std::uint64_t c = 0; c < n; ++c) {
    if (out.size() * probs.size() > kMaxDenseEntries)
      throw Error(ErrorCode::RankTooLargeForN, "dense spectrum too large");
    std::vector<double> next;
    next.reserve(out.size() * probs.size());
    for (double x : out)
      for (double p : probs) next.push_back(x * p);
    out = std::move(next);
  }
  std::sort(out.begin(), out.end(), std::greater<>());
  return out;
}

/// Per-index scan for the flatten index on a dense sorted spectrum.
inline std::size_t flatten_index(std::span<const double> p, std::size_t L) {
  auto at = [&](std::size_t i) { return i < p.size() ? p[i] : 0.0; };
  double total = 0.0;
  for (double x : p) total += x;
  double head = 0.0;
  for (std::size_t j = 0; j < L; ++j) {
    const double tail = std::max(total - head, 0.0);
    if (tail / static_cast<double>(L - j) >= at(j) * (1.0 - 1e-12)) return j;
    head += at(j);
  }
  return L - 1;
}

inline double concentration_fidelity(std::span<const double> p, std::size_t L) {
  const std::size_t J = flatten_index(p, L);
  double kept = 0.0;
  double tail = 0.0;
  for (std::size_t i = 0; i < p.size(); ++i) {
    if (i < J)
      kept += std::sqrt(p[i]);
    else
      tail += p[i];
  }
  const double Ld = static_cast<double>(L);
  return kept / std::sqrt(Ld) + std::sqrt((1.0 - static_cast<double>(J) / Ld) * tail);
}

inline double concentration_error(std::span<const double> p, std::size_t L) {
  const double f = concentration_fidelity(p, L);
  return 1.0 - f * f;
}

inline double dilution_error(std::span<const double> p, std::size_t L) {
  double tail = 0.0;
  for (std::size_t i = L; i < p.size(); ++i) tail += p[i];
  return tail;
}

/// min over m in [1, max(1, N ceil(log2 r))] of the two dense errors.
inline double generalized_mcre(std::span<const double> probs, std::uint64_t n, std::uint64_t N) {
  const auto source = spectrum(probs, n);
  const auto target = spectrum(probs, N);
  std::uint64_t bits = 0;
  while ((std::uint64_t{1} << bits) < probs.size()) ++bits;
  const std::uint64_t m_max = std::max<std::uint64_t>(1, N * bits);
  double best = 2.0;
  for (std::uint64_t m = 1; m <= m_max; ++m) {
    const std::size_t L = std::size_t{1} << m;
    best = std::min(best, concentration_error(source, L) + dilution_error(target, L));
  }
  return best;
}

}  // namespace ecr::dense
