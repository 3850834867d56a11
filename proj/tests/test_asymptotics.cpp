#include <gtest/gtest.h>

#include <cmath>
#include <vector>

#include "ecr/asymptotics.hpp"
#include "ecr/tradeoff.hpp"

namespace {

// Reference values from a 50-digit computation.
constexpr double kS = 0.46899559358928122;
constexpr double kV = 0.90435820632921396;
constexpr double kSqrtV = 0.95097750043269371;
constexpr double kLossScale = 4.0553792548656818;

// Taylor series of erf, adequate for |x| <= 3.
double series_cdf(double x) {
  const double z = x / std::sqrt(2.0);
  double term = z;
  double sum = z;
  for (int k = 1; k < 200; ++k) {
    term *= -z * z / k;
    sum += term / (2 * k + 1);
  }
  return 0.5 + sum / std::sqrt(std::acos(-1.0));
}

}  // namespace

TEST(Profile, Examples) {
  const auto pr = ecr::profile(ecr::SchmidtVector::qubit(0.1));
  EXPECT_NEAR(pr.entropy_S, kS, 1e-14);
  EXPECT_NEAR(pr.variance_V, kV, 1e-13);
  EXPECT_NEAR(pr.sqrt_V, kSqrtV, 1e-13);
  ASSERT_TRUE(pr.loss_scale.has_value());
  EXPECT_NEAR(*pr.loss_scale, kLossScale, 1e-12);

  const auto bell = ecr::profile(ecr::make_schmidt({0.5, 0.5}));
  EXPECT_DOUBLE_EQ(bell.entropy_S, 1.0);
  EXPECT_EQ(bell.variance_V, 0.0);
  EXPECT_TRUE(bell.degenerate_variance());

  const auto prod = ecr::profile(ecr::make_schmidt({1.0}));
  EXPECT_EQ(prod.entropy_S, 0.0);
  EXPECT_FALSE(prod.loss_scale.has_value());
}

TEST(NormalCdf, Examples) {
  EXPECT_EQ(ecr::normal_cdf(0.0), 0.5);
  EXPECT_NEAR(ecr::normal_cdf(1.0), 0.84134474606854295, 1e-15);
  for (double x = -3.0; x <= 3.0; x += 0.125) EXPECT_NEAR(ecr::normal_cdf(x), series_cdf(x), 1e-13) << x;
  for (double x = 0.0; x <= 8.0; x += 0.0625)
    EXPECT_LE(std::abs(ecr::normal_cdf(x) + ecr::normal_cdf(-x) - 1.0), 1e-14) << x;
}

TEST(NormalQuantile, Examples) {
  EXPECT_NEAR(ecr::normal_quantile(0.95), 1.6448536269514727, 1e-13);
  EXPECT_EQ(ecr::normal_quantile(0.5), 0.0);
  EXPECT_NEAR(ecr::normal_quantile(1.0 - 0.317311 / 2.0), 1.0, 1e-5);
  EXPECT_THROW(ecr::normal_quantile(0.0), ecr::Error);
  EXPECT_THROW(ecr::normal_quantile(1.0), ecr::Error);
  EXPECT_THROW(ecr::normal_quantile(-0.5), ecr::Error);
}

TEST(NormalQuantile, RoundTrip) {
  double worst = 0.0;
  for (int i = 0; i <= 100000; ++i) {
    const double u = 1e-6 + (1.0 - 2e-6) * i / 100000.0;
    worst = std::max(worst, std::abs(ecr::normal_cdf(ecr::normal_quantile(u)) - u));
  }
  for (double u : {1e-6, 1e-5, 0.02425, 0.97575, 1.0 - 1e-5, 1.0 - 1e-6})
    worst = std::max(worst, std::abs(ecr::normal_cdf(ecr::normal_quantile(u)) - u));
  EXPECT_LE(worst, 1e-10);
  for (double x = -4.5; x <= 4.5; x += 0.25) EXPECT_NEAR(ecr::normal_quantile(ecr::normal_cdf(x)), x, 1e-9);
}

TEST(KFunction, Examples) {
  const auto sv = ecr::SchmidtVector::qubit(0.1);
  EXPECT_NEAR(ecr::K(sv, 0.0, -1.0), 0.68905451355430166, 1e-13);
  EXPECT_NEAR(ecr::K(sv, 0.0, 0.0), 0.5, 1e-15);
  EXPECT_NEAR(ecr::K(sv, kSqrtV, 0.0), 0.84134474606854295, 1e-12);
  EXPECT_THROW(ecr::K(ecr::make_schmidt({0.5, 0.5}), 0.0, 0.0), ecr::Error);
}

TEST(SecondOrderLimits, BranchesAndExactSum) {
  const auto sv = ecr::SchmidtVector::qubit(0.1);
  const auto pr = ecr::profile(sv);
  const auto lo = ecr::second_order_limits(sv, 0.3, 1.0);
  EXPECT_EQ(lo.concentration, 0.0);
  EXPECT_EQ(lo.dilution, 1.0);
  const auto hi = ecr::second_order_limits(sv, 0.6, -5.0);
  EXPECT_EQ(hi.concentration, 1.0);
  EXPECT_EQ(hi.dilution, 0.0);
  const auto mid = ecr::second_order_limits(sv, pr.entropy_S, 1.0);
  EXPECT_NEAR(mid.concentration, ecr::normal_cdf(1.0 / kSqrtV), 1e-15);
  for (double b = -3.0; b <= 3.0; b += 0.1) {
    const auto l = ecr::second_order_limits(sv, pr.entropy_S, b);
    EXPECT_EQ(l.concentration + l.dilution, 1.0) << b;
  }
  EXPECT_THROW(ecr::second_order_limits(ecr::make_schmidt({0.5, 0.5}), 1.0, 0.0), ecr::Error);
  EXPECT_NO_THROW(ecr::second_order_limits(ecr::make_schmidt({0.5, 0.5}), 0.5, 0.0));
}

TEST(McreLimit, Examples) {
  const auto sv = ecr::SchmidtVector::qubit(0.1);
  EXPECT_EQ(ecr::mcre_limit(sv, 0.0), 1.0);
  EXPECT_EQ(ecr::mcre_limit(sv, 3.0), 1.0);
  // b' = -2 sqrt(V)/S puts the argument at -1.
  EXPECT_NEAR(ecr::mcre_limit(sv, -2.0 * kSqrtV / kS), 0.31731050786291410, 1e-12);
  double prev = 0.0;
  for (double b = -10.0; b < 0.0; b += 0.25) {
    const double v = ecr::mcre_limit(sv, b);
    EXPECT_GT(v, prev);
    EXPECT_LT(v, 1.0);
    prev = v;
  }
  EXPECT_THROW(ecr::mcre_limit(ecr::make_schmidt({0.5, 0.5}), -1.0), ecr::Error);
}

TEST(McreLimit, MinimizingSplitIdentity) {
  // min over b of K(b,0) + 1 - K(b,b') is attained at b = S b'/2.
  const auto sv = ecr::SchmidtVector::qubit(0.1);
  for (double bp : {-3.0, -1.0, -0.2}) {
    double best = 2.0;
    for (double b = -10.0; b <= 10.0; b += 1e-3)
      best = std::min(best, ecr::K(sv, b, 0.0) + 1.0 - ecr::K(sv, b, bp));
    EXPECT_NEAR(best, ecr::mcre_limit(sv, bp), 1e-6) << bp;
  }
}

TEST(LossCoefficient, ExamplesAndShape) {
  const auto sv = ecr::SchmidtVector::qubit(0.1);
  EXPECT_NEAR(ecr::loss_coefficient(sv, 0.1), 6.6705052760295776, 1e-11);
  EXPECT_NEAR(ecr::loss_coefficient(1.0, 0.1), 1.6448536269514727, 1e-13);
  EXPECT_NEAR(ecr::nmax_approx(sv, 3000, 0.1), 2634.6413790361376, 1e-8);
  double prev = INFINITY;
  for (int i = 1; i <= 99; ++i) {
    const double c = ecr::loss_coefficient(1.0, 0.01 * i);
    EXPECT_LT(c, prev);
    EXPECT_GT(c, 0.0);
    prev = c;
  }
  EXPECT_GT(ecr::loss_coefficient(1.0, 1e-12), 7.0);
  EXPECT_LT(ecr::loss_coefficient(1.0, 1.0 - 1e-9), 1e-8);
  EXPECT_THROW(ecr::loss_coefficient(1.0, 0.0), ecr::Error);
  EXPECT_THROW(ecr::loss_coefficient(1.0, 1.0), ecr::Error);
  EXPECT_THROW(ecr::loss_coefficient(ecr::make_schmidt({0.5, 0.5}), 0.1), ecr::Error);
  EXPECT_THROW(ecr::nmax_approx(ecr::make_schmidt({1.0}), 10, 0.1), ecr::Error);
}

TEST(FiniteN, ComponentsNearGaussianLimit) {
  const auto sv = ecr::SchmidtVector::qubit(0.1);
  const auto pr = ecr::profile(sv);
  const std::uint64_t n = 3000;
  const auto ls = ecr::power_spectrum(sv, n);
  for (double b : {-1.0, 0.0, 1.0}) {
    const auto m = static_cast<std::uint64_t>(std::floor(pr.entropy_S * n + b * std::sqrt(double(n))));
    const auto lim = ecr::second_order_limits(sv, pr.entropy_S, b);
    EXPECT_NEAR(ecr::concentration_error(ls, m), lim.concentration, 0.05) << b;
    EXPECT_NEAR(ecr::dilution_error(ls, m), lim.dilution, 0.05) << b;
  }
}
