#pragma once

#include <cmath>
#include <cstdint>
#include <fstream>
#include <optional>
#include <string>
#include <vector>

#include "ecr/asymptotics.hpp"
#include "ecr/error.hpp"
#include "ecr/report.hpp"
#include "ecr/spectrum.hpp"
#include "ecr/tradeoff.hpp"
#include "ecr/version.hpp"

namespace ecr {

enum class FigureId { fig2, fig3, fig4, fig5 };

inline std::string to_string(FigureId id) {
  switch (id) {
    case FigureId::fig2: return "fig2";
    case FigureId::fig3: return "fig3";
    case FigureId::fig4: return "fig4";
    case FigureId::fig5: return "fig5";
  }
  return "?";
}

/// Default state of the figures: sqrt(0.1)|00> + sqrt(0.9)|11>.
inline SchmidtVector default_figure_state() { return SchmidtVector::qubit(0.1); }

/// i * step + start for i in [0, count), computed without accumulation.
inline std::vector<double> linear_grid(double start, double step, std::size_t count) {
  std::vector<double> out(count);
  for (std::size_t i = 0; i < count; ++i) out[i] = start + step * static_cast<double>(i);
  return out;
}

struct FigureSpec {
  FigureId id = FigureId::fig2;
  SchmidtVector state = default_figure_state();
  std::optional<std::uint64_t> n;   // fig4: copies (default 3000)
  std::uint64_t kmax = 10;          // fig2: n = 2^1 .. 2^kmax
  std::vector<double> eps_grid;     // fig4/fig5; empty selects the default
  std::vector<double> b_grid;       // fig3; empty selects the default
  std::string output_path;
  Format format = Format::csv;
  unsigned threads = 1;
};

inline std::vector<double> default_eps_grid(FigureId id) {
  if (id == FigureId::fig4) return linear_grid(0.05, 0.05, 19);
  return linear_grid(0.01, 0.01, 99);
}

inline std::vector<double> default_b_grid() { return linear_grid(-3.0, 0.25, 25); }

inline void validate(const FigureSpec& spec) {
  auto bad = [](const std::string& why) { throw Error(ErrorCode::InvalidSpec, why); };
  for (double e : spec.eps_grid)
    if (!(e > 0.0 && e < 1.0)) bad("epsilon values must lie in (0, 1)");
  if (spec.n && *spec.n < 1) bad("n must be >= 1");
  if (spec.id == FigureId::fig2 && (spec.kmax < 1 || spec.kmax > 24)) bad("kmax must lie in [1, 24]");
  for (double b : spec.b_grid)
    if (!std::isfinite(b)) bad("b values must be finite");
  const bool needs_variance = spec.id == FigureId::fig3 || spec.id == FigureId::fig4;
  if (needs_variance && profile(spec.state).degenerate_variance())
    bad("this figure needs a state that is neither product nor maximally entangled");
}

inline std::string schmidt_text(const SchmidtVector& sv) {
  std::string out;
  for (std::size_t i = 0; i < sv.rank(); ++i) out += (i ? ";" : "") + format_number(sv[i]);
  return out;
}

/// Builds the data table of one figure. Grid points are evaluated on
/// `spec.threads` workers; rows keep input order.
inline Table compute_figure(const FigureSpec& spec) {
  validate(spec);
  Table t;
  t.metadata.emplace_back("figure", to_string(spec.id));
  t.metadata.emplace_back("state", schmidt_text(spec.state));
  t.metadata.emplace_back("version", std::string(kVersion));

  switch (spec.id) {
    case FigureId::fig2: {
      t.metadata.emplace_back("kmax", std::to_string(spec.kmax));
      t.metadata.emplace_back("units", "log2_n:bits,delta:error");
      t.columns = {"log2_n", "delta"};
      std::vector<std::uint64_t> ns;
      for (std::uint64_t k = 1; k <= spec.kmax; ++k) ns.push_back(std::uint64_t{1} << k);
      const auto curve = delta_curve(spec.state, ns, spec.threads);
      for (std::size_t k = 0; k < curve.size(); ++k)
        t.add_row({format_number(std::uint64_t{k + 1}), format_number(curve[k].second)});
      break;
    }
    case FigureId::fig3: {
      const auto pr = profile(spec.state);
      t.metadata.emplace_back("entropy_S", format_number(pr.entropy_S));
      t.metadata.emplace_back("variance_V", format_number(pr.variance_V));
      t.metadata.emplace_back("units", "b:bits/sqrt(copy),conc_limit:error,dil_limit:error");
      t.columns = {"b", "conc_limit", "dil_limit"};
      const auto grid = spec.b_grid.empty() ? default_b_grid() : spec.b_grid;
      for (double b : grid) {
        const auto lim = second_order_limits(spec.state, pr.entropy_S, b);
        t.add_row({format_number(b), format_number(lim.concentration), format_number(lim.dilution)});
      }
      break;
    }
    case FigureId::fig4: {
      const std::uint64_t n = spec.n.value_or(3000);
      t.metadata.emplace_back("n", std::to_string(n));
      t.metadata.emplace_back("units", "epsilon:error,N_exact:copies,N_approx:copies");
      t.columns = {"epsilon", "N_exact", "N_approx"};
      const auto grid = spec.eps_grid.empty() ? default_eps_grid(spec.id) : spec.eps_grid;
      std::vector<std::uint64_t> exact(grid.size());
      parallel_for(grid.size(), spec.threads, [&](std::size_t i) {
        RecoveryScan scan(spec.state, n);
        exact[i] = scan.max_recoverable(grid[i]);
      });
      for (std::size_t i = 0; i < grid.size(); ++i)
        t.add_row({format_number(grid[i]), format_number(exact[i]), format_number(nmax_approx(spec.state, n, grid[i]))});
      break;
    }
    case FigureId::fig5: {
      t.metadata.emplace_back("loss_scale", "1");
      t.metadata.emplace_back("units", "epsilon:error,coefficient:copies/sqrt(copy)");
      t.columns = {"epsilon", "coefficient"};
      const auto grid = spec.eps_grid.empty() ? default_eps_grid(spec.id) : spec.eps_grid;
      for (double e : grid) t.add_row({format_number(e), format_number(loss_coefficient(1.0, e))});
      break;
    }
  }
  return t;
}

/// Computes a figure and writes it to spec.output_path.
inline void run_figure(const FigureSpec& spec) {
  const Table t = compute_figure(spec);
  std::ofstream out(spec.output_path, std::ios::binary | std::ios::trunc);
  if (!out) throw Error(ErrorCode::IoFailure, "cannot open " + spec.output_path);
  out << render(t, spec.format);
  if (!out.flush()) throw Error(ErrorCode::IoFailure, "write failed: " + spec.output_path);
}

}  // namespace ecr
