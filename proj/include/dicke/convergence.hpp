#pragma once

#include <map>
#include <utility>
#include <vector>

#include "dicke/eigensolve.hpp"
#include "dicke/hamiltonian.hpp"
#include "dicke/model.hpp"

namespace dicke {

struct ConvergenceOptions {
  AssemblyOptions assembly;
  SolverOptions solver;
};

/// Memoized E_level(cutoff) for one (params, basis) pair. Not thread-safe;
/// use one ladder per scan.
class EnergyLadder {
 public:
  EnergyLadder(ModelParams params, BasisKind kind, int level,
               ConvergenceOptions options = {});

  /// Energy of the level at the given cutoff. Throws InvalidParameter when the
  /// truncated space has no such level.
  double energy(int cutoff);
  /// |E(cutoff + 1) - E(cutoff)|
  double delta(int cutoff);

  const ModelParams& params() const noexcept { return params_; }
  BasisKind kind() const noexcept { return kind_; }
  int level() const noexcept { return level_; }

 private:
  ModelParams params_;
  BasisKind kind_;
  int level_;
  ConvergenceOptions options_;
  std::map<int, double> cache_;
};

/// |E_level(cutoff + 1) - E_level(cutoff)|. Levels are tracked by sorted index.
double delta_e(const ModelParams& params, BasisKind kind, int cutoff, int level = 0,
               const ConvergenceOptions& options = {});

struct DeltaSample {
  int cutoff;
  double delta_e;
};

struct ConvergenceReport {
  BasisKind basis_kind = BasisKind::Fock;
  int minimal_cutoff = 0;
  double energy_at_min = 0.0;
  /// Every probed cutoff, strictly increasing.
  std::vector<DeltaSample> delta_e_trajectory;
  int level_index = 0;
  bool converged = false;

  double final_delta() const { return delta_e_trajectory.empty() ? 0.0 : delta_e_trajectory.back().delta_e; }
};

/// Linear scan c = 0, 1, ..., cutoff_limit; stops at the first c with
/// |E(c+1) - E(c)| < epsilon. When the limit is reached the report has
/// converged = false, minimal_cutoff = cutoff_limit and the full trajectory.
ConvergenceReport find_minimal_cutoff(const ModelParams& params, BasisKind kind, int level,
                                      int cutoff_limit, const ConvergenceOptions& options = {});

/// Truncation estimate N g^2 (1 - (sqrt(w w0) / 2g)^4) + 5 sqrt(same) for the
/// Fock basis in the superradiant phase. Returns 0 at gamma = gamma_c and
/// throws DomainError below it.
double analytic_nmax_bound(const ModelParams& params);

/// Scan guard for the Fock basis: max(200, ceil(3 * bound)) when superradiant,
/// 200 otherwise.
int default_cutoff_limit(const ModelParams& params, BasisKind kind);

/// Samples with delta_e below this are treated as solver noise.
inline constexpr double kPrecisionFloor = 1e-14;

struct PrecisionSample {
  /// Larger cutoff of the adjacent pair: delta_e = |E(cutoff) - E(cutoff - 1)|.
  int cutoff;
  double delta_e;
  double energy;  ///< E(cutoff)
};

struct PrecisionFit {
  double slope = 0.0;      ///< decades of delta_e per unit cutoff
  double intercept = 0.0;  ///< -log10 delta_e extrapolated to cutoff 0
  double r_squared = 0.0;
  /// (cutoff, -log10 delta_e) pairs that entered the regression.
  std::vector<std::pair<int, double>> samples;
  /// Every scanned cutoff, including floored samples.
  std::vector<PrecisionSample> scanned;

  /// delta_e predicted by the fit, 10^-(intercept + slope * cutoff).
  double predicted_delta(int cutoff) const;
};

/// Ordinary least squares of y on x; throws NothingToFit with fewer than two
/// points or a degenerate abscissa.
PrecisionFit fit_log_precision(std::vector<std::pair<int, double>> samples);

/// Computes delta_e for every truncation in [first, last] (first >= 1), each
/// labelled by the larger cutoff of its pair, drops samples below
/// kPrecisionFloor and fits -log10 delta_e = intercept + slope * cutoff.
PrecisionFit precision_scan(const ModelParams& params, BasisKind kind, int first, int last,
                            int level = 0, const ConvergenceOptions& options = {});

}  // namespace dicke
