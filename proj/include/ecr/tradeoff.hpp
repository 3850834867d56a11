#pragma once

#include <algorithm>
#include <atomic>
#include <exception>
#include <cstdint>
#include <optional>
#include <span>
#include <thread>
#include <utility>
#include <vector>

#include "ecr/conversion.hpp"
#include "ecr/error.hpp"
#include "ecr/spectrum.hpp"

namespace ecr {

/// One point of the concentration/recovery trade-off.
struct TradeoffResult {
  double delta = 0.0;
  std::uint64_t optimal_m = 1;
  double concentration_error = 0.0;
  double recovery_error = 0.0;
  std::uint64_t n = 0;
  std::uint64_t N = 0;
};

/// Upper end of the EPR-count scan: N * ceil(log2 rank), at least 1.
/// At that m the recovery term is already exact.
inline std::uint64_t max_epr_count(const SchmidtVector& sv, std::uint64_t N) {
  return std::max<std::uint64_t>(1, N * ceil_log2(sv.rank()));
}

/// Concentration side of the trade-off for a fixed n. Caches
/// d(psi^{(x)n} -> Phi^{(x)m}) per m so that repeated queries with different
/// recovery targets N reuse it.
class RecoveryScan {
 public:
  RecoveryScan(const SchmidtVector& sv, std::uint64_t n) : sv_(sv), n_(n), source_(power_spectrum(sv, n)) {}

  const SchmidtVector& state() const noexcept { return sv_; }
  std::uint64_t n() const noexcept { return n_; }
  const LeveledSpectrum& source() const noexcept { return source_; }

  double concentration_error(std::uint64_t m) {
    if (cache_.size() <= m) cache_.resize(m + 1);
    if (!cache_[m]) cache_[m] = ecr::concentration_error(source_, m);
    return *cache_[m];
  }

  /// delta_n(N|psi) = min_m d(psi^n -> Phi^m) + d(Phi^m -> psi^N), scanning
  /// every m in [1, N ceil(log2 r)] and keeping the smallest minimizer.
  TradeoffResult generalized(std::uint64_t N) {
    if (N < 1 || N > n_) throw Error(ErrorCode::InvalidRange, "recovered copies N must satisfy 1 <= N <= n");
    const LeveledSpectrum target = power_spectrum(sv_, N);
    TradeoffResult best;
    best.n = n_;
    best.N = N;
    bool first = true;
    const std::uint64_t m_max = max_epr_count(sv_, N);
    for (std::uint64_t m = 1; m <= m_max; ++m) {
      const double conc = concentration_error(m);
      const double dil = dilution_error(target, m);
      const double delta = conc + dil;
      if (first || delta < best.delta) {
        best.delta = delta;
        best.optimal_m = m;
        best.concentration_error = conc;
        best.recovery_error = dil;
        first = false;
      }
    }
    return best;
  }

  /// Largest N in [0, n] with delta_n(N|psi) <= eps; delta_n(0|psi) is 0.
  /// Binary search relies on delta being non-decreasing in N; with
  /// `verify_monotone` a full scan checks that assumption and is used instead.
  std::uint64_t max_recoverable(double eps, bool verify_monotone = false) {
    if (!(eps > 0.0) || eps > 1.0) throw Error(ErrorCode::InvalidEpsilon, "epsilon must lie in (0, 1]");
    if (verify_monotone) {
      std::uint64_t answer = 0;
      double previous = 0.0;
      for (std::uint64_t N = 1; N <= n_; ++N) {
        const double d = generalized(N).delta;
        if (d + 1e-12 < previous)
          throw Error(ErrorCode::InternalConsistency, "delta_n(N) decreased at N=" + std::to_string(N));
        previous = d;
        if (d <= eps) answer = N;
      }
      return answer;
    }
    std::uint64_t lo = 0;  // delta(lo) <= eps
    std::uint64_t hi = n_ + 1;  // delta(hi) > eps, sentinel
    while (hi - lo > 1) {
      const std::uint64_t mid = lo + (hi - lo) / 2;
      if (generalized(mid).delta <= eps)
        lo = mid;
      else
        hi = mid;
    }
    return lo;
  }

 private:
  SchmidtVector sv_;
  std::uint64_t n_;
  LeveledSpectrum source_;
  std::vector<std::optional<double>> cache_;
};

/// Generalized MCRE delta_n(N|psi) for 1 <= N <= n.
inline TradeoffResult generalized_mcre(const SchmidtVector& sv, std::uint64_t n, std::uint64_t N) {
  if (N < 1 || N > n) throw Error(ErrorCode::InvalidRange, "recovered copies N must satisfy 1 <= N <= n");
  RecoveryScan scan(sv, n);
  return scan.generalized(N);
}

/// MCRE delta_n(psi) = delta_n(n|psi).
inline TradeoffResult mcre(const SchmidtVector& sv, std::uint64_t n) {
  if (n < 1) throw Error(ErrorCode::InvalidRange, "n must be >= 1");
  return generalized_mcre(sv, n, n);
}

/// N_n(eps|psi) = max{N : delta_n(N|psi) <= eps}.
inline std::uint64_t max_recoverable(const SchmidtVector& sv, std::uint64_t n, double eps,
                                     bool verify_monotone = false) {
  if (n < 1) throw Error(ErrorCode::InvalidRange, "n must be >= 1");
  if (!(eps > 0.0) || eps > 1.0) throw Error(ErrorCode::InvalidEpsilon, "epsilon must lie in (0, 1]");
  RecoveryScan scan(sv, n);
  return scan.max_recoverable(eps, verify_monotone);
}

/// Runs body(i) for i in [0, count) on up to `threads` workers. Each index is
/// handled exactly once; callers write results by index.
template <class Body>
void parallel_for(std::size_t count, unsigned threads, Body&& body) {
  threads = std::max(1u, std::min<unsigned>(threads, static_cast<unsigned>(std::max<std::size_t>(count, 1))));
  if (threads == 1) {
    for (std::size_t i = 0; i < count; ++i) body(i);
    return;
  }
  std::atomic<std::size_t> next{0};
  std::exception_ptr failure;
  std::atomic<bool> failed{false};
  std::vector<std::jthread> pool;
  for (unsigned t = 0; t < threads; ++t) {
    pool.emplace_back([&] {
      for (std::size_t i = next++; i < count; i = next++) {
        if (failed) return;
        try {
          body(i);
        } catch (...) {
          if (!failed.exchange(true)) failure = std::current_exception();
          return;
        }
      }
    });
  }
  pool.clear();
  if (failure) std::rethrow_exception(failure);
}

/// (n, delta_n(psi)) for each requested n, in input order.
inline std::vector<std::pair<std::uint64_t, double>> delta_curve(const SchmidtVector& sv,
                                                                 std::span<const std::uint64_t> n_values,
                                                                 unsigned threads = 1) {
  std::vector<std::pair<std::uint64_t, double>> out(n_values.size());
  parallel_for(n_values.size(), threads, [&](std::size_t i) { out[i] = {n_values[i], mcre(sv, n_values[i]).delta}; });
  return out;
}

}  // namespace ecr
