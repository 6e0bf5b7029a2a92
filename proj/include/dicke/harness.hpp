#pragma once

#include <functional>
#include <iosfwd>
#include <map>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "dicke/convergence.hpp"
#include "dicke/model.hpp"

namespace dicke {

inline constexpr std::string_view kVersion = "0.1.0";

/// First line of every CSV this tool writes.
std::string csv_version_line();

// ---------------------------------------------------------------------------
// Configuration

/// Flat `key = value` pairs. Blank lines and `#` comments are ignored;
/// dashes in keys are normalized to underscores.
using ConfigMap = std::map<std::string, std::string>;
ConfigMap parse_config(std::istream& in);
ConfigMap load_config_file(const std::string& path);

enum class SweptParameter { J, Gamma, Omega0, Cutoff };
std::string_view to_string(SweptParameter p);
SweptParameter parse_swept_parameter(std::string_view text);

/// Every knob the CLI understands. Unset fields fall back to defaults when
/// resolved; `overlay` lets command-line flags win over a config file.
struct Settings {
  std::optional<double> omega, omega0, gamma, j, epsilon;
  std::optional<std::string> basis;  ///< fock | coherent | both
  std::optional<int> cutoff, cutoff_limit, level, workers;
  std::optional<std::string> out;
  std::optional<std::string> sweep;  ///< swept parameter name
  std::optional<std::string> grid;   ///< "a,b,c" or "start:stop:step"
  std::optional<std::string> range;  ///< "first:last" cutoffs for precision scans
  std::optional<bool> timing;

  static Settings from_config(const ConfigMap& config);
  /// Fields set in `flags` replace those in *this.
  Settings overlay(const Settings& flags) const;

  /// Defaults: omega = omega0 = 1, gamma = 0.5, j = 1, epsilon = 1e-6.
  ModelParams params() const;
  std::vector<BasisKind> basis_kinds() const;  ///< default: both
};

/// Inclusive grid; "start:stop:step" tolerates round-off at the end point.
std::vector<double> parse_grid(std::string_view text);
/// "first:last" -> pair of cutoffs.
std::pair<int, int> parse_cutoff_range(std::string_view text);

// ---------------------------------------------------------------------------
// Runs

struct RunRecord {
  double omega = 1.0;
  double omega0 = 1.0;
  double gamma = 0.0;
  int two_j = 1;
  BasisKind basis = BasisKind::Fock;
  int level = 0;
  int min_cutoff = 0;
  double energy = 0.0;
  double delta_e = 0.0;
  bool converged = false;
  std::optional<double> wall_ms;
  std::string version = std::string(kVersion);

  ModelParams params(double epsilon = ModelParams::kDefaultEpsilon) const;
};

struct PointRequest {
  ModelParams params;
  BasisKind kind;
  int level = 0;
  /// Fixed cutoff; when empty the minimal-cutoff scan picks it.
  std::optional<int> cutoff;
  /// Scan guard; when empty default_cutoff_limit applies.
  std::optional<int> cutoff_limit;
  bool record_timing = false;
};

struct PointResult {
  RunRecord record;
  /// Present when the cutoff came from a scan.
  std::optional<ConvergenceReport> report;
  /// Non-empty if the point failed (solver or parameter error).
  std::string error;
  /// True when the failure came from the inputs rather than the solver.
  bool invalid_input = false;
};

PointResult run_point(const PointRequest& request, const ConvergenceOptions& options = {});

struct SweepConfig {
  SweptParameter swept = SweptParameter::J;
  std::vector<double> grid;
  ModelParams fixed{1.0, 1.0, 0.5, 2};
  std::vector<BasisKind> basis_kinds{BasisKind::Fock, BasisKind::Coherent};
  int level = 0;
  std::optional<int> cutoff;  ///< required when sweeping over cutoff
  std::optional<int> cutoff_limit;
  int workers = 1;
  bool record_timing = false;

  /// Throws InvalidParameter if a grid value is invalid for the swept axis.
  void validate() const;
};

/// One result per (grid point x basis kind), in grid order.
std::vector<PointResult> run_sweep(const SweepConfig& config, const ConvergenceOptions& options = {});

/// Runs fn(0) .. fn(count - 1) on up to `workers` threads; results by index.
void parallel_for(std::size_t count, int workers, const std::function<void(std::size_t)>& fn);

inline constexpr std::string_view kSweepColumns =
    "omega,omega0,gamma,j,basis,level,min_cutoff,energy,delta_e,converged,wall_ms";

/// Version line, optional comment lines, column header, rows.
void write_sweep_csv(std::ostream& out, const std::vector<RunRecord>& rows,
                     const std::vector<std::string>& comments = {});
std::vector<RunRecord> parse_sweep_csv(std::istream& in);

/// Recomputes E at the record's cutoff; the round-trip check for CSV rows.
double rerun_energy(const RunRecord& record, const ConvergenceOptions& options = {});

// ---------------------------------------------------------------------------
// Truncation estimate vs. scan

struct BoundRow {
  ModelParams params;
  std::optional<int> n_max_scan;
  std::optional<double> n_max_eq4;
  /// (n_max_scan - n_max_eq4) / n_max_eq4
  std::optional<double> relative_difference;
  /// "ok", "normal-phase", or "not-converged"
  std::string status;
};

std::vector<BoundRow> bound_compare(const ModelParams& fixed, const std::vector<double>& gammas,
                                    std::optional<int> cutoff_limit, int workers,
                                    const ConvergenceOptions& options = {});

inline constexpr std::string_view kBoundColumns =
    "omega,omega0,gamma,j,n_max_scan,n_max_eq4,relative_difference,status";
void write_bound_csv(std::ostream& out, const std::vector<BoundRow>& rows,
                     const std::vector<std::string>& comments = {});

// ---------------------------------------------------------------------------
// Precision vs truncation

inline constexpr std::string_view kPrecisionColumns =
    "omega,omega0,gamma,j,basis,level,cutoff,energy,delta_e,neg_log10_delta_e,used_in_fit";
void write_precision_csv(std::ostream& out, const ModelParams& params, BasisKind kind, int level,
                         const PrecisionFit& fit, const std::vector<std::string>& comments = {});

// ---------------------------------------------------------------------------

/// Shortest decimal text that parses back to the same double.
std::string format_double(double value);
/// "10", "2.5", ... for j stored as 2j.
std::string format_j(int two_j);

/// Strips `#` comment lines; what the determinism check compares.
std::string csv_body(std::string_view csv);

/// UTC timestamp for the comment header.
std::string utc_timestamp();

}  // namespace dicke
