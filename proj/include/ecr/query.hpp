#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <string_view>

#include "ecr/asymptotics.hpp"
#include "ecr/conversion.hpp"
#include "ecr/error.hpp"
#include "ecr/figures.hpp"
#include "ecr/report.hpp"
#include "ecr/tradeoff.hpp"
#include "ecr/version.hpp"

namespace ecr {

enum class QueryKind { mcre, gmcre, nmax, error_conc, error_dil, profile };

inline QueryKind parse_query_kind(std::string_view s) {
  if (s == "mcre") return QueryKind::mcre;
  if (s == "gmcre") return QueryKind::gmcre;
  if (s == "nmax") return QueryKind::nmax;
  if (s == "error-conc") return QueryKind::error_conc;
  if (s == "error-dil") return QueryKind::error_dil;
  if (s == "profile") return QueryKind::profile;
  throw Error(ErrorCode::ParamError, "unknown query kind '" + std::string(s) + "'");
}

struct QueryParams {
  SchmidtVector state = default_figure_state();
  std::optional<std::uint64_t> n;
  std::optional<std::uint64_t> N;
  std::optional<std::uint64_t> m;
  std::optional<double> eps;
};

namespace detail {

template <class T>
T require(const std::optional<T>& v, const char* name, std::string_view kind) {
  if (!v) throw Error(ErrorCode::ParamError, "query kind '" + std::string(kind) + "' needs --" + name);
  return *v;
}

inline void add_tradeoff(Table& t, const TradeoffResult& r) {
  t.columns = {"n", "N", "delta", "optimal_m", "concentration_error", "recovery_error"};
  t.add_row({format_number(r.n), format_number(r.N), format_number(r.delta), format_number(r.optimal_m),
             format_number(r.concentration_error), format_number(r.recovery_error)});
}

}  // namespace detail

/// Evaluates one core quantity and returns it as a single-row table.
inline Table run_query(QueryKind kind, const QueryParams& q) {
  Table t;
  t.metadata.emplace_back("state", schmidt_text(q.state));
  t.metadata.emplace_back("version", std::string(kVersion));
  switch (kind) {
    case QueryKind::mcre: {
      t.metadata.emplace_back("kind", "mcre");
      detail::add_tradeoff(t, mcre(q.state, detail::require(q.n, "n", "mcre")));
      break;
    }
    case QueryKind::gmcre: {
      t.metadata.emplace_back("kind", "gmcre");
      detail::add_tradeoff(t, generalized_mcre(q.state, detail::require(q.n, "n", "gmcre"),
                                               detail::require(q.N, "N", "gmcre")));
      break;
    }
    case QueryKind::nmax: {
      t.metadata.emplace_back("kind", "nmax");
      const auto n = detail::require(q.n, "n", "nmax");
      const auto eps = detail::require(q.eps, "eps", "nmax");
      const auto exact = max_recoverable(q.state, n, eps);
      t.columns = {"n", "epsilon", "N_exact"};
      std::vector<std::string> row{format_number(n), format_number(eps), format_number(exact)};
      const auto pr = profile(q.state);
      if (!pr.degenerate_variance() && pr.loss_scale && eps < 1.0) {
        t.columns.push_back("N_approx");
        row.push_back(format_number(nmax_approx(q.state, n, eps)));
      }
      t.add_row(std::move(row));
      break;
    }
    case QueryKind::error_conc: {
      t.metadata.emplace_back("kind", "error-conc");
      const auto n = detail::require(q.n, "n", "error-conc");
      const auto m = detail::require(q.m, "m", "error-conc");
      if (m < 1) throw Error(ErrorCode::ParamError, "--m must be >= 1");
      const auto r = concentration_fidelity(power_spectrum(q.state, n), pow2(m));
      t.columns = {"n", "m", "error", "fidelity", "J"};
      t.add_row({format_number(n), format_number(m), format_number(r.error), format_number(r.fidelity),
                 to_string(*r.flatten_index_J)});
      break;
    }
    case QueryKind::error_dil: {
      t.metadata.emplace_back("kind", "error-dil");
      const auto N = detail::require(q.N, "N", "error-dil");
      const auto m = detail::require(q.m, "m", "error-dil");
      if (m < 1) throw Error(ErrorCode::ParamError, "--m must be >= 1");
      const auto r = dilution_fidelity(power_spectrum(q.state, N), pow2(m));
      t.columns = {"N", "m", "error", "fidelity"};
      t.add_row({format_number(N), format_number(m), format_number(r.error), format_number(r.fidelity)});
      break;
    }
    case QueryKind::profile: {
      t.metadata.emplace_back("kind", "profile");
      const auto pr = profile(q.state);
      t.columns = {"S", "V", "sqrt_V"};
      std::vector<std::string> row{format_number(pr.entropy_S), format_number(pr.variance_V), format_number(pr.sqrt_V)};
      if (pr.loss_scale) {
        t.columns.push_back("loss_scale");
        row.push_back(format_number(*pr.loss_scale));
      }
      t.add_row(std::move(row));
      break;
    }
  }
  return t;
}

}  // namespace ecr
