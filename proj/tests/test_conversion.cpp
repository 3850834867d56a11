#include <gtest/gtest.h>

#include <cmath>
#include <random>
#include <vector>

#include "ecr/conversion.hpp"
#include "ecr/dense_oracle.hpp"
#include "ecr/validate.hpp"

using ecr::BigInt;

namespace {

ecr::LeveledSpectrum single(std::initializer_list<double> p) { return ecr::power_spectrum(ecr::make_schmidt(p), 1); }

// Does the uniform vector of length L majorize p (zero-padded)?
bool uniform_majorizes(const std::vector<double>& p, std::size_t L) {
  double sp = 0.0;
  for (std::size_t k = 0; k < p.size(); ++k) {
    sp += p[k];
    const double su = std::min(1.0, double(k + 1) / double(L));
    if (su + 1e-12 < sp) return false;
  }
  return true;
}

}  // namespace

TEST(FlattenIndex, Examples) {
  EXPECT_EQ(ecr::flatten_index(single({0.9, 0.1}), 2), 1);
  EXPECT_EQ(ecr::flatten_index(single({0.5, 0.5}), 2), 0);
  EXPECT_EQ(ecr::flatten_index(single({0.4, 0.3, 0.3}), 2), 0);
  EXPECT_EQ(ecr::flatten_index(single({0.9, 0.1}), 4), 2);
}

TEST(FlattenIndex, InvalidDimension) {
  EXPECT_THROW(ecr::flatten_index(single({0.9, 0.1}), 0), ecr::Error);
  EXPECT_THROW(ecr::concentration_fidelity(single({0.9, 0.1}), 0), ecr::Error);
  EXPECT_THROW(ecr::dilution_fidelity(single({0.9, 0.1}), 0), ecr::Error);
}

TEST(FlattenIndex, LevelBoundariesMatchDenseScan) {
  for (const auto& sv : {ecr::SchmidtVector::qubit(0.1), ecr::SchmidtVector::qubit(0.35),
                         ecr::make_schmidt({0.6, 0.3, 0.1}), ecr::make_schmidt({0.4, 0.3, 0.3}),
                         ecr::make_schmidt({0.5, 0.25, 0.25})}) {
    const unsigned n_max = sv.rank() == 2 ? 12 : 7;
    for (unsigned n = 0; n <= n_max; ++n) {
      const auto ls = ecr::power_spectrum(sv, n);
      const auto dense = ecr::dense::spectrum(sv.probs(), n);
      for (std::size_t L = 1; L <= dense.size() + 3; ++L)
        ASSERT_EQ(ecr::flatten_index(ls, BigInt(L)), ecr::dense::flatten_index(dense, L)) << "n=" << n << " L=" << L;
    }
  }
}

TEST(ConcentrationFidelity, Examples) {
  const auto r = ecr::concentration_fidelity(single({0.9, 0.1}), 2);
  EXPECT_NEAR(r.fidelity, 0.8944271909999159, 1e-12);
  EXPECT_NEAR(r.error, 0.2, 1e-12);
  EXPECT_EQ(*r.flatten_index_J, 1);
  EXPECT_EQ(r.target_dimension_L, 2);
  EXPECT_EQ(r.direction, ecr::Direction::concentration);

  const auto exact = ecr::concentration_fidelity(single({0.4, 0.3, 0.3}), 2);
  EXPECT_NEAR(exact.fidelity, 1.0, 1e-12);
  EXPECT_NEAR(exact.error, 0.0, 1e-12);

  const auto wide = ecr::concentration_fidelity(single({0.9, 0.1}), 4);
  EXPECT_NEAR(wide.fidelity, 0.6324555320336759, 1e-12);
  EXPECT_NEAR(wide.error, 0.6, 1e-12);
}

TEST(ConcentrationFidelity, IdentityOnUniformSpectra) {
  for (unsigned n = 1; n <= 6; ++n) {
    const auto ls = ecr::power_spectrum(ecr::make_schmidt({0.5, 0.5}), n);
    EXPECT_NEAR(ecr::concentration_fidelity(ls, ecr::pow2(n)).fidelity, 1.0, 1e-12);
  }
  const auto quart = single({0.25, 0.25, 0.25, 0.25});
  EXPECT_NEAR(ecr::concentration_fidelity(quart, 4).fidelity, 1.0, 1e-12);
}

TEST(ConcentrationFidelity, ProductState) {
  const auto ls = ecr::power_spectrum(ecr::make_schmidt({1.0}), 3);
  const auto r = ecr::concentration_fidelity(ls, 2);
  EXPECT_NEAR(r.fidelity, std::sqrt(0.5), 1e-15);
  EXPECT_EQ(*r.flatten_index_J, 1);
}

TEST(DilutionFidelity, Examples) {
  const auto two = ecr::power_spectrum(ecr::make_schmidt({0.9, 0.1}), 2);
  const auto r = ecr::dilution_fidelity(two, 2);
  EXPECT_NEAR(r.fidelity, 0.9486832980505138, 1e-12);
  EXPECT_NEAR(r.error, 0.10, 1e-12);
  EXPECT_FALSE(r.flatten_index_J.has_value());
  EXPECT_EQ(r.direction, ecr::Direction::dilution);

  EXPECT_EQ(ecr::dilution_fidelity(two, 4).error, 0.0);
  EXPECT_EQ(ecr::dilution_fidelity(two, 1000).fidelity, 1.0);
  const auto one = ecr::dilution_fidelity(single({0.9, 0.1}), 1);
  EXPECT_NEAR(one.fidelity, std::sqrt(0.9), 1e-12);
  EXPECT_NEAR(one.error, 0.1, 1e-12);
}

TEST(ConversionErrors, Examples) {
  const auto sv = ecr::make_schmidt({0.9, 0.1});
  EXPECT_NEAR(ecr::concentration_error(sv, 1, 1), 0.2, 1e-12);
  EXPECT_NEAR(ecr::concentration_error(sv, 1, 2), 0.6, 1e-12);
  for (unsigned k = 1; k <= 8; ++k) EXPECT_NEAR(ecr::concentration_error(ecr::make_schmidt({0.5, 0.5}), k, k), 0.0, 1e-12);

  EXPECT_NEAR(ecr::dilution_error(sv, 2, 1), 0.10, 1e-12);
  EXPECT_EQ(ecr::dilution_error(sv, 1, 1), 0.0);
  const auto qutrit = ecr::make_schmidt({0.5, 0.3, 0.2});
  for (unsigned N = 1; N <= 5; ++N) EXPECT_EQ(ecr::dilution_error(qutrit, N, N * 2), 0.0);
  EXPECT_THROW(ecr::concentration_error(sv, 1, 0), ecr::Error);
}

TEST(ConversionProperties, ErrorIdentityAndRange) {
  std::mt19937_64 rng(3);
  for (int t = 0; t < 40; ++t) {
    const auto sv = ecr::random_schmidt(rng, 4);
    const auto ls = ecr::power_spectrum(sv, 6);
    for (unsigned m = 1; m <= 14; ++m) {
      for (const auto& r : {ecr::concentration_fidelity(ls, ecr::pow2(m)), ecr::dilution_fidelity(ls, ecr::pow2(m))}) {
        EXPECT_GE(r.fidelity, 0.0);
        EXPECT_LE(r.fidelity, 1.0);
        EXPECT_GE(r.error, 0.0);
        EXPECT_LE(r.error, 1.0);
        EXPECT_NEAR(r.error, 1.0 - r.fidelity * r.fidelity, 1e-12);
        if (r.flatten_index_J) EXPECT_LT(*r.flatten_index_J, r.target_dimension_L);
      }
    }
  }
}

TEST(ConversionProperties, MonotoneInEprCount) {
  std::mt19937_64 rng(4);
  for (int t = 0; t < 30; ++t) {
    const auto sv = ecr::random_schmidt(rng, 3);
    for (unsigned n : {1u, 4u, 9u}) {
      const auto ls = ecr::power_spectrum(sv, n);
      double prev_c = 0.0;
      double prev_d = 1.0;
      for (unsigned m = 1; m <= 2 * n + 3; ++m) {
        const double c = ecr::concentration_error(ls, m);
        const double d = ecr::dilution_error(ls, m);
        EXPECT_GE(c, prev_c - 1e-12);
        EXPECT_LE(d, prev_d + 1e-12);
        prev_c = c;
        prev_d = d;
      }
    }
  }
}

TEST(ConversionProperties, ExactConversionCharacterization) {
  std::mt19937_64 rng(8);
  std::vector<ecr::SchmidtVector> states = {ecr::make_schmidt({0.4, 0.3, 0.3}), ecr::make_schmidt({0.5, 0.5}),
                                            ecr::make_schmidt({0.25, 0.25, 0.25, 0.25})};
  for (int t = 0; t < 20; ++t) states.push_back(ecr::random_schmidt(rng, 4));
  for (const auto& sv : states) {
    for (unsigned n = 1; n <= 3; ++n) {
      const auto ls = ecr::power_spectrum(sv, n);
      const auto dense = ecr::dense::spectrum(sv.probs(), n);
      for (std::size_t L = 1; L <= 70; ++L) {
        const double c = ecr::concentration_fidelity(ls, BigInt(L)).error;
        EXPECT_EQ(c < 1e-12, uniform_majorizes(dense, L)) << "L=" << L;
        const double d = ecr::dilution_fidelity(ls, BigInt(L)).error;
        EXPECT_EQ(d == 0.0, L >= dense.size()) << "L=" << L;
      }
    }
  }
}

TEST(ConversionProperties, TieSideIrrelevant) {
  // At a tie the kept value equals the flat value; forcing the other side of
  // the tie (one more kept entry) yields the same fidelity.
  const double kept_one = std::sqrt(0.5) / std::sqrt(2.0) + std::sqrt(0.5 * 0.5);
  EXPECT_NEAR(kept_one, ecr::concentration_fidelity(ecr::power_spectrum(ecr::make_schmidt({0.5, 0.5}), 1), 2).fidelity,
              1e-15);
  const auto ls = ecr::power_spectrum(ecr::make_schmidt({0.9, 0.1}), 1);
  // J=1 at L=2 is a tie (tail 0.1 equals p_2); keeping both entries gives the same value.
  const double kept_both = (std::sqrt(0.9) + std::sqrt(0.1)) / std::sqrt(2.0);
  EXPECT_NEAR(kept_both, ecr::concentration_fidelity(ls, 2).fidelity, 1e-15);
}

TEST(BruteForceFidelity, Examples) {
  const double a[] = {0.9, 0.1};
  EXPECT_NEAR(ecr::brute_force_fidelity(a, 2), 0.8944271909999159, 1e-9);
  const double b[] = {0.4, 0.3, 0.3};
  EXPECT_NEAR(ecr::brute_force_fidelity(b, 2), 1.0, 1e-9);
  const double c[] = {0.99, 0.01};
  EXPECT_NEAR(ecr::brute_force_fidelity(c, 4), 0.5474937185533100, 1e-9);
}

TEST(BruteForceFidelity, RejectsLargeDimensions) {
  const double a[] = {0.9, 0.1};
  EXPECT_THROW(ecr::brute_force_fidelity(a, 9), ecr::Error);
  const std::vector<double> nine(9, 1.0 / 9);
  EXPECT_THROW(ecr::brute_force_fidelity(nine, 2), ecr::Error);
}

TEST(BruteForceFidelity, AgreesWithFormulaOnRandomStates) {
  std::mt19937_64 rng(99);
  for (int t = 0; t < 40; ++t) {
    const auto sv = ecr::random_schmidt(rng, 4);
    const auto ls = ecr::power_spectrum(sv, 1);
    for (std::size_t L = 2; L <= 8; ++L) {
      const auto rep = ecr::brute_force_report(sv.probs(), L, t);
      const double formula = ecr::concentration_fidelity(ls, BigInt(L)).fidelity;
      EXPECT_TRUE(rep.constructed_feasible);
      EXPECT_NEAR(formula, rep.value, 1e-6);
      EXPECT_NEAR(formula, rep.constructed_value, 1e-6);
      EXPECT_LE(rep.best_competitor, formula + 1e-12);
    }
  }
}
