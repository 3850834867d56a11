#pragma once

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <random>
#include <string>
#include <string_view>
#include <vector>

#include "ecr/asymptotics.hpp"
#include "ecr/conversion.hpp"
#include "ecr/dense_oracle.hpp"
#include "ecr/error.hpp"
#include "ecr/report.hpp"
#include "ecr/spectrum.hpp"
#include "ecr/tradeoff.hpp"

namespace ecr {

enum class Suite { oracle, identities, asymptotic };

inline Suite parse_suite(std::string_view s) {
  if (s == "oracle") return Suite::oracle;
  if (s == "identities") return Suite::identities;
  if (s == "asymptotic") return Suite::asymptotic;
  throw Error(ErrorCode::ParamError, "unknown suite '" + std::string(s) + "'");
}

struct ValidationCheck {
  std::string name;
  double max_deviation = 0.0;
  double tolerance = 0.0;
  bool passed = true;
  bool informational = false;  // reported, never fails the suite
};

struct ValidationReport {
  std::vector<ValidationCheck> checks;

  bool passed() const {
    return std::all_of(checks.begin(), checks.end(), [](const auto& c) { return c.informational || c.passed; });
  }

  ValidationCheck& add(std::string name, double deviation, double tolerance, bool informational = false) {
    checks.push_back({std::move(name), deviation, tolerance, deviation <= tolerance, informational});
    return checks.back();
  }
};

/// Random Schmidt vector of rank in [1, max_rank] with Dirichlet(1) weights.
template <class Rng>
SchmidtVector random_schmidt(Rng& rng, std::size_t max_rank) {
  std::uniform_int_distribution<std::size_t> rank_dist(1, max_rank);
  std::gamma_distribution<double> gamma(1.0, 1.0);
  std::vector<double> w(rank_dist(rng));
  double total = 0.0;
  for (double& x : w) total += (x = gamma(rng) + 1e-12);
  for (double& x : w) x /= total;
  return make_schmidt(w);
}

namespace detail {

inline double rel_dev(double a, double b) { return std::abs(a - b) / std::max(std::abs(b), 1e-300); }

inline void oracle_suite(ValidationReport& rep, std::uint64_t seed) {
  // Leveled trade-off vs dense enumeration, qubit states.
  double dev = 0.0;
  for (int i = 1; i <= 9; ++i) {
    const auto sv = SchmidtVector::qubit(0.05 * i);
    for (std::uint64_t n = 1; n <= 12; ++n) {
      RecoveryScan scan(sv, n);
      for (std::uint64_t N = 1; N <= n; ++N)
        dev = std::max(dev, std::abs(scan.generalized(N).delta - dense::generalized_mcre(sv.probs(), n, N)));
    }
  }
  rep.add("dense generalized MCRE, qubit p=0.05..0.45, n<=12", dev, 1e-10);

  // Flatten index over level boundaries vs per-index scan.
  double mismatches = 0.0;
  for (const auto& sv : {SchmidtVector::qubit(0.1), SchmidtVector::qubit(0.3), make_schmidt({0.5, 0.3, 0.2}),
                         make_schmidt({0.4, 0.3, 0.3})}) {
    for (std::uint64_t n = 0; n <= (sv.rank() == 2 ? 12u : 7u); ++n) {
      const auto ls = power_spectrum(sv, n);
      const auto dense_p = dense::spectrum(sv.probs(), n);
      for (std::size_t L = 1; L <= 2 * dense_p.size() + 2; L = L < 16 ? L + 1 : L * 2)
        if (flatten_index(ls, BigInt(L)) != dense::flatten_index(dense_p, L)) mismatches += 1.0;
    }
  }
  rep.add("flatten index, level boundaries vs dense scan (mismatch count)", mismatches, 0.0);

  // Concentration formula vs brute-force maximizer.
  std::mt19937_64 rng(seed);
  double gap = 0.0;
  double excess = 0.0;
  std::size_t agreements = 0;
  constexpr std::size_t trials = 200;
  for (std::size_t s = 0; s < trials; ++s) {
    const auto sv = random_schmidt(rng, 4);
    const auto ls = power_spectrum(sv, 1);
    bool ok = true;
    for (std::size_t L = 2; L <= 8; ++L) {
      const double formula = concentration_fidelity(ls, BigInt(L)).fidelity;
      const auto oracle = brute_force_report(sv.probs(), L, seed + s);
      const double g = std::max(std::abs(formula - oracle.value), std::abs(formula - oracle.constructed_value));
      gap = std::max(gap, g);
      excess = std::max(excess, oracle.best_competitor - formula);
      if (g > 1e-6 || oracle.best_competitor > formula + 1e-12) ok = false;
    }
    if (ok) ++agreements;
  }
  rep.add("concentration fidelity vs brute force, max gap", gap, 1e-6);
  rep.add("best feasible competitor above formula", std::max(excess, 0.0), 1e-12);
  rep.add("random states agreeing (" + std::to_string(agreements) + "/" + std::to_string(trials) + "), misses",
          static_cast<double>(trials - agreements), 0.0);
}

inline void identities_suite(ValidationReport& rep) {
  const auto sv = SchmidtVector::qubit(0.1);
  double sum_sqrt = 0.0;
  for (double p : sv.probs()) sum_sqrt += std::sqrt(p);
  double mass_dev = 0.0;
  double sqrt_dev = 0.0;
  double m_monotone = 0.0;
  double range = 0.0;
  for (std::uint64_t n = 0; n <= 64; ++n) {
    const auto ls = power_spectrum(sv, n);
    mass_dev = std::max(mass_dev, std::abs(prefix_mass(ls, ls.total_count()) - 1.0));
    const double expect_log2 = static_cast<double>(n) * std::log2(sum_sqrt);
    sqrt_dev = std::max(sqrt_dev, std::abs(std::exp2(ls.log2_prefix_sqrt_mass(ls.total_count()) - expect_log2) - 1.0));
    double prev_c = 0.0;
    double prev_d = 1.0;
    for (std::uint64_t m = 1; m <= std::max<std::uint64_t>(n, 1) + 2; ++m) {
      const double c = concentration_error(ls, m);
      const double d = dilution_error(ls, m);
      m_monotone = std::max({m_monotone, prev_c - c, d - prev_d});
      range = std::max({range, -c, c - 1.0, -d, d - 1.0});
      prev_c = c;
      prev_d = d;
    }
  }
  rep.add("total mass - 1, n<=64", mass_dev, 1e-10);
  rep.add("sqrt-mass / (sum sqrt p)^n - 1, n<=64", sqrt_dev, 1e-9);
  rep.add("monotonicity in m violation", std::max(m_monotone, 0.0), 1e-12);
  rep.add("errors outside [0,1]", std::max(range, 0.0), 0.0);

  double n_monotone = 0.0;
  double bound = 0.0;
  for (std::uint64_t n : {8u, 16u, 32u, 64u}) {
    RecoveryScan scan(sv, n);
    double prev = 0.0;
    for (std::uint64_t N = 1; N <= n; ++N) {
      const auto r = scan.generalized(N);
      n_monotone = std::max(n_monotone, prev - r.delta);
      bound = std::max({bound, -r.delta, r.delta - 1.0});
      prev = r.delta;
    }
  }
  rep.add("delta_n(N) monotonicity in N violation, n<=64", std::max(n_monotone, 0.0), 1e-12);
  rep.add("delta outside [0,1]", std::max(bound, 0.0), 0.0);
}

inline void asymptotic_suite(ValidationReport& rep) {
  const auto sv = SchmidtVector::qubit(0.1);
  const auto pr = profile(sv);
  constexpr std::uint64_t n = 3000;
  const auto ls = power_spectrum(sv, n);
  double conc_dev = 0.0;
  double dil_dev = 0.0;
  double sum_dev = 0.0;
  for (double b : {-1.0, 0.0, 1.0}) {
    const auto m = static_cast<std::uint64_t>(std::floor(pr.entropy_S * n + b * std::sqrt(double(n))));
    const double g = normal_cdf(b / pr.sqrt_V);
    const double c = concentration_error(ls, m);
    const double d = dilution_error(ls, m);
    conc_dev = std::max(conc_dev, std::abs(c - g));
    dil_dev = std::max(dil_dev, std::abs(d - (1.0 - g)));
    sum_dev = std::max(sum_dev, std::abs(c + d - 1.0));
  }
  rep.add("n=3000 concentration error vs G(b/sqrt V), b in {-1,0,1}", conc_dev, 0.05);
  rep.add("n=3000 dilution error vs 1-G(b/sqrt V), b in {-1,0,1}", dil_dev, 0.05);
  rep.add("n=3000 conc+dil vs 1 (finite-n gap)", sum_dev, 0.05, true);
}

}  // namespace detail

inline ValidationReport run_validate(Suite suite, std::uint64_t seed = 2024) {
  ValidationReport rep;
  switch (suite) {
    case Suite::oracle: detail::oracle_suite(rep, seed); break;
    case Suite::identities: detail::identities_suite(rep); break;
    case Suite::asymptotic: detail::asymptotic_suite(rep); break;
  }
  return rep;
}

}  // namespace ecr
