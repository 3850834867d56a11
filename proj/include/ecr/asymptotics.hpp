#pragma once

#include <cmath>
#include <cstdint>
#include <numbers>
#include <optional>
#include <utility>

#include "ecr/error.hpp"
#include "ecr/spectrum.hpp"

namespace ecr {

/// First- and second-order rate parameters of a state, in bits.
struct AsymptoticProfile {
  double entropy_S = 0.0;   // bits per copy
  double variance_V = 0.0;  // bits^2 per copy
  double sqrt_V = 0.0;
  /// 2 sqrt(V) / S; absent for product states (S = 0).
  std::optional<double> loss_scale;

  bool degenerate_variance() const noexcept { return variance_V <= 0.0; }
};

inline AsymptoticProfile profile(const SchmidtVector& sv) {
  AsymptoticProfile pr;
  for (double p : sv.probs()) pr.entropy_S -= p * std::log2(p);
  for (double p : sv.probs()) {
    const double dev = -std::log2(p) - pr.entropy_S;
    pr.variance_V += p * dev * dev;
  }
  // Equal probabilities give an exactly zero variance only up to rounding.
  if (sv.probs().front() == sv.probs().back()) pr.variance_V = 0.0;
  pr.sqrt_V = std::sqrt(pr.variance_V);
  if (pr.entropy_S > 0.0) pr.loss_scale = 2.0 * pr.sqrt_V / pr.entropy_S;
  return pr;
}

/// Standard normal CDF.
inline double normal_cdf(double x) { return 0.5 * std::erfc(-x / std::numbers::sqrt2); }

/// Standard normal quantile: Acklam's rational approximation polished by
/// Halley steps against normal_cdf.
inline double normal_quantile(double u) {
  if (!(u > 0.0 && u < 1.0)) throw Error(ErrorCode::OutOfDomain, "quantile argument must lie in (0, 1)");
  if (u == 0.5) return 0.0;
  static constexpr double a[] = {-3.969683028665376e+01, 2.209460984245205e+02, -2.759285104469687e+02,
                                 1.383577518672690e+02,  -3.066479806614716e+01, 2.506628277459239e+00};
  static constexpr double b[] = {-5.447609879822406e+01, 1.615858368580409e+02, -1.556989798598866e+02,
                                 6.680131188771972e+01,  -1.328068155288572e+01};
  static constexpr double c[] = {-7.784894002430293e-03, -3.223964580411365e-01, -2.400758277161838e+00,
                                 -2.549732539343734e+00, 4.374664141464968e+00,  2.938163982698783e+00};
  static constexpr double d[] = {7.784695709041462e-03, 3.224671290700398e-01, 2.445134137142996e+00,
                                 3.754408661907416e+00};
  constexpr double low = 0.02425;
  double x;
  if (u < low) {
    const double q = std::sqrt(-2.0 * std::log(u));
    x = (((((c[0] * q + c[1]) * q + c[2]) * q + c[3]) * q + c[4]) * q + c[5]) /
        ((((d[0] * q + d[1]) * q + d[2]) * q + d[3]) * q + 1.0);
  } else if (u <= 1.0 - low) {
    const double q = u - 0.5;
    const double r = q * q;
    x = (((((a[0] * r + a[1]) * r + a[2]) * r + a[3]) * r + a[4]) * r + a[5]) * q /
        (((((b[0] * r + b[1]) * r + b[2]) * r + b[3]) * r + b[4]) * r + 1.0);
  } else {
    const double q = std::sqrt(-2.0 * std::log1p(-u));
    x = -(((((c[0] * q + c[1]) * q + c[2]) * q + c[3]) * q + c[4]) * q + c[5]) /
        ((((d[0] * q + d[1]) * q + d[2]) * q + d[3]) * q + 1.0);
  }
  const double inv_sqrt_2pi = 1.0 / std::sqrt(2.0 * std::numbers::pi);
  for (int it = 0; it < 3; ++it) {
    // G(x) - u, evaluated on the smaller tail so the residual stays accurate near u = 1.
    const double residual = (x <= 0.0) ? normal_cdf(x) - u : (1.0 - u) - 0.5 * std::erfc(x / std::numbers::sqrt2);
    const double pdf = inv_sqrt_2pi * std::exp(-0.5 * x * x);
    if (pdf == 0.0) break;
    const double step = residual / pdf;
    x -= step / (1.0 + 0.5 * x * step);
  }
  return x;
}

/// K(b, b'|psi) = G((b - S b') / sqrt(V)).
inline double K(const SchmidtVector& sv, double b, double b_prime) {
  const auto pr = profile(sv);
  if (pr.degenerate_variance()) throw Error(ErrorCode::DegenerateVariance, "K needs V > 0");
  return normal_cdf((b - pr.entropy_S * b_prime) / pr.sqrt_V);
}

struct LimitPair {
  double concentration = 0.0;
  double dilution = 0.0;
};

/// Limits of d(psi^n -> Phi^{an+b sqrt n}) and d(Phi^{an+b sqrt n} -> psi^n).
/// The middle branch is selected only when `a` equals profile(sv).entropy_S
/// exactly.
inline LimitPair second_order_limits(const SchmidtVector& sv, double a, double b) {
  const auto pr = profile(sv);
  LimitPair out;
  if (a < pr.entropy_S) {
    out.concentration = 0.0;
  } else if (a > pr.entropy_S) {
    out.concentration = 1.0;
  } else {
    if (pr.degenerate_variance()) throw Error(ErrorCode::DegenerateVariance, "middle branch needs V > 0");
    out.concentration = normal_cdf(b / pr.sqrt_V);
  }
  out.dilution = 1.0 - out.concentration;
  return out;
}

/// lim delta_n(n + b' sqrt n | psi): 2 G(S b' / (2 sqrt V)) for b' < 0, else 1.
inline double mcre_limit(const SchmidtVector& sv, double b_prime) {
  const auto pr = profile(sv);
  if (pr.degenerate_variance()) throw Error(ErrorCode::DegenerateVariance, "mcre_limit needs V > 0");
  if (b_prime >= 0.0) return 1.0;
  return 2.0 * normal_cdf(pr.entropy_S * b_prime / (2.0 * pr.sqrt_V));
}

/// Coefficient of sqrt(n) in the asymptotic loss for a given loss scale
/// 2 sqrt(V) / S.
inline double loss_coefficient(double loss_scale, double eps) {
  if (!(eps > 0.0 && eps < 1.0)) throw Error(ErrorCode::InvalidEpsilon, "epsilon must lie in (0, 1)");
  return loss_scale * normal_quantile(1.0 - eps / 2.0);
}

inline double loss_coefficient(const SchmidtVector& sv, double eps) {
  const auto pr = profile(sv);
  if (!(eps > 0.0 && eps < 1.0)) throw Error(ErrorCode::InvalidEpsilon, "epsilon must lie in (0, 1)");
  if (pr.degenerate_variance() || !pr.loss_scale)
    throw Error(ErrorCode::DegenerateVariance, "loss coefficient needs V > 0 and S > 0");
  return loss_coefficient(*pr.loss_scale, eps);
}

/// n - (2 sqrt(V)/S) G^{-1}(1 - eps/2) sqrt(n), real-valued.
inline double nmax_approx(const SchmidtVector& sv, std::uint64_t n, double eps) {
  const double coeff = loss_coefficient(sv, eps);
  const double nd = static_cast<double>(n);
  return nd - coeff * std::sqrt(nd);
}

}  // namespace ecr
