// dicke-spectra: ground-state convergence studies of the finite Dicke model
// in the Fock and coherent bases.

#include <cmath>
#include <cstdio>
#include <fstream>
#include <iostream>
#include <sstream>

#include "CLI11.hpp"
#include "dicke/convergence.hpp"
#include "dicke/errors.hpp"
#include "dicke/harness.hpp"

namespace {

enum ExitCode : int { kOk = 0, kNotConverged = 2, kInvalid = 3, kSolverFailure = 4 };

struct Flags {
  double omega = 0, omega0 = 0, gamma = 0, j = 0, epsilon = 0;
  std::string basis, config, out, sweep, grid, range;
  int cutoff = 0, cutoff_limit = 0, workers = 0, level = 0;
  bool timing = false;
};

void add_common(CLI::App* cmd, Flags& f) {
  cmd->add_option("--omega", f.omega, "field frequency");
  cmd->add_option("--omega0", f.omega0, "atomic splitting");
  cmd->add_option("--gamma", f.gamma, "coupling strength");
  cmd->add_option("--j", f.j, "pseudospin length (N/2)");
  cmd->add_option("--epsilon", f.epsilon, "convergence tolerance");
  cmd->add_option("--basis", f.basis, "fock | coherent | both")
      ->check(CLI::IsMember({"fock", "coherent", "both"}));
  cmd->add_option("--cutoff", f.cutoff, "fixed bosonic cutoff (skips the scan)");
  cmd->add_option("--cutoff-limit", f.cutoff_limit, "largest cutoff a scan may probe");
  cmd->add_option("--config", f.config, "key = value configuration file");
  cmd->add_option("--out", f.out, "output CSV path (stdout if omitted)");
  cmd->add_option("--workers", f.workers, "worker threads for sweeps");
  cmd->add_option("--level", f.level, "level index (0 = ground state)");
  cmd->add_flag("--timing", f.timing, "fill the wall_ms column");
}

// Only flags given explicitly override the config file.
dicke::Settings resolve(const CLI::App* cmd, const Flags& f) {
  dicke::Settings base;
  if (cmd->count("--config")) base = dicke::Settings::from_config(dicke::load_config_file(f.config));
  dicke::Settings over;
  auto given = [&](const char* name) { return cmd->get_option_no_throw(name) && cmd->count(name) > 0; };
  if (given("--omega")) over.omega = f.omega;
  if (given("--omega0")) over.omega0 = f.omega0;
  if (given("--gamma")) over.gamma = f.gamma;
  if (given("--j")) over.j = f.j;
  if (given("--epsilon")) over.epsilon = f.epsilon;
  if (given("--basis")) over.basis = f.basis;
  if (given("--cutoff")) over.cutoff = f.cutoff;
  if (given("--cutoff-limit")) over.cutoff_limit = f.cutoff_limit;
  if (given("--out")) over.out = f.out;
  if (given("--workers")) over.workers = f.workers;
  if (given("--level")) over.level = f.level;
  if (given("--timing")) over.timing = f.timing;
  if (given("--sweep")) over.sweep = f.sweep;
  if (given("--grid")) over.grid = f.grid;
  if (given("--range")) over.range = f.range;
  return base.overlay(over);
}

// Writes to --out or stdout.
void emit(const dicke::Settings& s, const std::string& text) {
  if (s.out && !s.out->empty() && *s.out != "-") {
    std::ofstream file(*s.out);
    if (!file) throw dicke::InvalidParameter("cannot write '" + *s.out + "'");
    file << text;
  } else {
    std::cout << text;
  }
}

std::vector<std::string> header_comments(const dicke::Settings& s, std::string_view command) {
  std::ostringstream p;
  const auto params = s.params();
  p << "command=" << command << " omega=" << dicke::format_double(params.omega())
    << " omega0=" << dicke::format_double(params.omega0())
    << " gamma=" << dicke::format_double(params.gamma()) << " j=" << dicke::format_j(params.two_j())
    << " epsilon=" << dicke::format_double(params.epsilon());
  return {"generated " + dicke::utc_timestamp(), p.str()};
}

int cmd_gs(const dicke::Settings& s) {
  const auto params = s.params();
  int status = kOk;
  for (const auto kind : s.basis_kinds()) {
    dicke::PointRequest req{params, kind, s.level.value_or(0), s.cutoff, s.cutoff_limit, false};
    const auto result = dicke::run_point(req);
    if (!result.error.empty()) {
      std::cerr << "error (" << dicke::to_string(kind) << "): " << result.error << "\n";
      return result.invalid_input ? kInvalid : kSolverFailure;
    }
    const auto& r = result.record;
    std::printf("basis=%s j=%s level=%d energy=%.12f cutoff=%d delta_e=%.3e converged=%s\n",
                std::string(dicke::to_string(kind)).c_str(), dicke::format_j(r.two_j).c_str(),
                r.level, r.energy, r.min_cutoff, r.delta_e, r.converged ? "yes" : "no");
    // A fixed cutoff only reports its delta_e; a scan that hits the limit fails.
    if (!r.converged && result.report) {
      status = kNotConverged;
      std::cerr << "no convergence for " << dicke::to_string(kind) << " basis; trajectory:\n";
      for (const auto& t : result.report->delta_e_trajectory)
        std::cerr << "  cutoff=" << t.cutoff << " delta_e=" << dicke::format_double(t.delta_e) << "\n";
    }
  }
  return status;
}

int cmd_sweep(const dicke::Settings& s) {
  dicke::SweepConfig cfg;
  if (!s.sweep) throw dicke::InvalidParameter("sweep needs --sweep {j|gamma|omega0|cutoff}");
  cfg.swept = dicke::parse_swept_parameter(*s.sweep);
  cfg.grid = dicke::parse_grid(s.grid.value_or(""));
  cfg.fixed = s.params();
  cfg.basis_kinds = s.basis_kinds();
  cfg.level = s.level.value_or(0);
  cfg.cutoff = s.cutoff;
  cfg.cutoff_limit = s.cutoff_limit;
  cfg.workers = s.workers.value_or(1);
  cfg.record_timing = s.timing.value_or(false);
  const auto results = dicke::run_sweep(cfg);
  std::vector<dicke::RunRecord> rows;
  for (const auto& r : results) {
    if (!r.error.empty()) std::cerr << "warning: " << r.error << "\n";
    rows.push_back(r.record);
  }
  auto comments = header_comments(s, "sweep");
  comments.push_back("sweep=" + std::string(dicke::to_string(cfg.swept)) + " grid=" + s.grid.value_or(""));
  std::ostringstream csv;
  dicke::write_sweep_csv(csv, rows, comments);
  emit(s, csv.str());
  return kOk;
}

int cmd_bound(const dicke::Settings& s) {
  const auto gammas = dicke::parse_grid(s.grid.value_or(dicke::format_double(s.params().gamma())));
  const auto rows = dicke::bound_compare(s.params(), gammas, s.cutoff_limit, s.workers.value_or(1));
  std::ostringstream csv;
  dicke::write_bound_csv(csv, rows, header_comments(s, "bound"));
  emit(s, csv.str());
  return kOk;
}

int cmd_precision(const dicke::Settings& s) {
  const auto kinds = s.basis_kinds();
  if (kinds.size() != 1) throw dicke::InvalidParameter("precision needs --basis fock or --basis coherent");
  const auto [first, last] = dicke::parse_cutoff_range(s.range.value_or("1:15"));
  const auto params = s.params();
  const int level = s.level.value_or(0);
  const auto fit = dicke::precision_scan(params, kinds.front(), first, last, level);
  std::ostringstream csv;
  dicke::write_precision_csv(csv, params, kinds.front(), level, fit, header_comments(s, "precision"));
  emit(s, csv.str());
  std::fprintf(stderr, "slope=%.6f intercept=%.6f r2=%.6f samples=%zu\n", fit.slope, fit.intercept,
               fit.r_squared, fit.samples.size());
  return kOk;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Finite-size Dicke model: Fock vs coherent basis convergence"};
  app.require_subcommand(1);
  Flags f;

  auto* gs = app.add_subcommand("gs", "ground state at a fixed or scanned cutoff");
  add_common(gs, f);
  auto* sweep = app.add_subcommand("sweep", "minimal cutoffs over a parameter grid (CSV)");
  add_common(sweep, f);
  sweep->add_option("--sweep", f.sweep, "swept parameter: j, gamma, omega0 or cutoff");
  sweep->add_option("--grid", f.grid, "values: a,b,c or start:stop:step");
  auto* bound = app.add_subcommand("bound", "Fock scan vs analytic truncation estimate (CSV)");
  add_common(bound, f);
  bound->add_option("--grid", f.grid, "gamma values: a,b,c or start:stop:step");
  auto* precision = app.add_subcommand("precision", "delta_e vs cutoff with log-linear fit (CSV)");
  add_common(precision, f);
  precision->add_option("--range", f.range, "cutoffs first:last (first >= 1)");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    return code == 0 ? kOk : kInvalid;
  }

  try {
    if (*gs) return cmd_gs(resolve(gs, f));
    if (*sweep) return cmd_sweep(resolve(sweep, f));
    if (*bound) return cmd_bound(resolve(bound, f));
    if (*precision) return cmd_precision(resolve(precision, f));
  } catch (const dicke::InvalidParameter& e) {
    std::cerr << "invalid parameters: " << e.what() << "\n";
    return kInvalid;
  } catch (const dicke::DomainError& e) {
    std::cerr << "invalid parameters: " << e.what() << "\n";
    return kInvalid;
  } catch (const dicke::NothingToFit& e) {
    std::cerr << "nothing to fit: " << e.what() << "\n";
    return kInvalid;
  } catch (const dicke::SolverFailure& e) {
    std::cerr << "solver failure: " << e.what() << "\n";
    return kSolverFailure;
  } catch (const std::overflow_error& e) {
    std::cerr << "invalid parameters: " << e.what() << "\n";
    return kInvalid;
  } catch (const std::exception& e) {
    std::cerr << "internal error: " << e.what() << "\n";
    return kSolverFailure;
  }
  return kOk;
}
