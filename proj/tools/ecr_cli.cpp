// Command-line front end: figure data, single-point queries, validation.

#include <chrono>
#include <cstdio>
#include <iostream>
#include <optional>
#include <string>
#include <thread>
#include <vector>

#include "CLI11.hpp"
#include "ecr/ecr.hpp"

namespace {

constexpr int kExitValidation = 1;
constexpr int kExitUsage = 2;

struct StateOptions {
  std::optional<double> p;
  std::vector<double> schmidt;

  void attach(CLI::App& app) {
    auto* p_opt = app.add_option("--p", p, "qubit state sqrt(p)|00> + sqrt(1-p)|11>");
    auto* s_opt = app.add_option("--schmidt", schmidt, "full list of squared Schmidt coefficients")->delimiter(',');
    p_opt->excludes(s_opt);
  }

  ecr::SchmidtVector resolve() const {
    if (p) return ecr::SchmidtVector::qubit(*p);
    if (!schmidt.empty()) return ecr::make_schmidt(schmidt);
    return ecr::default_figure_state();
  }
};

ecr::Format parse_format(const std::string& s) {
  if (s == "csv") return ecr::Format::csv;
  if (s == "json") return ecr::Format::json;
  throw ecr::Error(ecr::ErrorCode::ParamError, "format must be csv or json");
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Concentration/recovery trade-off calculator for bipartite pure states"};
  app.require_subcommand(1);
  app.set_version_flag("--version", std::string(ecr::kVersion));

  // fig
  auto* fig = app.add_subcommand("fig", "write the data behind one figure");
  fig->set_config("--config", "", "key=value file with defaults for this subcommand");
  int fig_id = 0;
  StateOptions fig_state;
  std::optional<std::uint64_t> fig_n;
  std::uint64_t kmax = 10;
  std::vector<double> eps_grid;
  std::vector<double> b_grid;
  std::string out_path;
  std::string fig_format = "csv";
  unsigned threads = 1;
  fig->add_option("--id", fig_id, "figure number")->required()->check(CLI::IsMember({2, 3, 4, 5}));
  fig_state.attach(*fig);
  fig->add_option("--n", fig_n, "copies (fig4, default 3000)");
  fig->add_option("--kmax", kmax, "fig2 evaluates n = 2^1..2^kmax");
  fig->add_option("--eps-grid", eps_grid, "comma-separated epsilon values")->delimiter(',');
  fig->add_option("--b-grid", b_grid, "comma-separated second-order rates (fig3)")->delimiter(',');
  fig->add_option("--out", out_path, "output file")->required();
  fig->add_option("--format", fig_format, "csv or json")->check(CLI::IsMember({"csv", "json"}));
  fig->add_option("--threads", threads, "worker threads (0 = all cores)");

  // query
  auto* query = app.add_subcommand("query", "evaluate one quantity");
  query->set_config("--config", "", "key=value file with defaults for this subcommand");
  std::string kind;
  StateOptions query_state;
  ecr::QueryParams qp;
  std::string query_format = "json";
  query->add_option("--kind", kind, "mcre | gmcre | nmax | error-conc | error-dil | profile")->required();
  query_state.attach(*query);
  query->add_option("--n", qp.n, "source copies");
  query->add_option("--N", qp.N, "recovered / target copies");
  query->add_option("--m", qp.m, "EPR copies");
  query->add_option("--eps", qp.eps, "error budget");
  query->add_option("--format", query_format, "csv or json")->check(CLI::IsMember({"csv", "json"}));

  // validate
  auto* validate = app.add_subcommand("validate", "run a self-check suite");
  validate->set_config("--config", "", "key=value file with defaults for this subcommand");
  std::string suite;
  std::uint64_t seed = 2024;
  validate->add_option("--suite", suite, "oracle | identities | asymptotic")->required();
  validate->add_option("--seed", seed, "RNG seed for randomized checks");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int rc = app.exit(e);
    return rc == 0 ? 0 : kExitUsage;
  }

  try {
    if (fig->parsed()) {
      ecr::FigureSpec spec;
      spec.id = static_cast<ecr::FigureId>(fig_id - 2);
      spec.state = fig_state.resolve();
      spec.n = fig_n;
      spec.kmax = kmax;
      spec.eps_grid = eps_grid;
      spec.b_grid = b_grid;
      spec.output_path = out_path;
      spec.format = parse_format(fig_format);
      spec.threads = threads == 0 ? std::max(1u, std::thread::hardware_concurrency()) : threads;
      const auto start = std::chrono::steady_clock::now();
      ecr::run_figure(spec);
      const double secs = std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
      std::cerr << "wrote " << out_path << " in " << secs << " s\n";
      return 0;
    }
    if (query->parsed()) {
      qp.state = query_state.resolve();
      const auto table = ecr::run_query(ecr::parse_query_kind(kind), qp);
      std::cout << ecr::render(table, parse_format(query_format));
      return 0;
    }
    if (validate->parsed()) {
      const auto report = ecr::run_validate(ecr::parse_suite(suite), seed);
      for (const auto& c : report.checks) {
        const char* status = c.informational ? "INFO" : (c.passed ? "PASS" : "FAIL");
        std::printf("%-4s %-70s max_dev=%.3e tol=%.1e\n", status, c.name.c_str(), c.max_deviation, c.tolerance);
      }
      return report.passed() ? 0 : kExitValidation;
    }
  } catch (const ecr::Error& e) {
    std::cerr << "error: " << e.what() << "\n";
    switch (e.code()) {
      case ecr::ErrorCode::IoFailure:
      case ecr::ErrorCode::InternalConsistency: return kExitValidation;
      default: {
        const CLI::App* sub = fig->parsed() ? fig : query->parsed() ? query : validate;
        std::cerr << sub->help() << "\n";
        return kExitUsage;
      }
    }
  }
  return kExitUsage;
}
