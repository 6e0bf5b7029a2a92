#include "dicke/convergence.hpp"

#include <algorithm>
#include <cmath>
#include <string>

#include "dicke/errors.hpp"

namespace dicke {

EnergyLadder::EnergyLadder(ModelParams params, BasisKind kind, int level, ConvergenceOptions options)
    : params_(std::move(params)), kind_(kind), level_(level), options_(std::move(options)) {
  if (level < 0) throw InvalidParameter("level must be non-negative");
}

double EnergyLadder::energy(int cutoff) {
  if (cutoff < 0) throw InvalidParameter("cutoff must be non-negative");
  if (const auto it = cache_.find(cutoff); it != cache_.end()) return it->second;
  const auto h = build_hamiltonian(params_, kind_, cutoff, options_.assembly);
  if (level_ >= h.dimension())
    throw InvalidParameter("level " + std::to_string(level_) + " does not exist at cutoff " +
                           std::to_string(cutoff) + " (dimension " +
                           std::to_string(h.dimension()) + ")");
  const auto spectrum = lowest_eigenvalues(h, level_ + 1, options_.solver);
  const double e = spectrum.eigenvalues[static_cast<std::size_t>(level_)];
  cache_.emplace(cutoff, e);
  return e;
}

double EnergyLadder::delta(int cutoff) { return std::abs(energy(cutoff + 1) - energy(cutoff)); }

double delta_e(const ModelParams& params, BasisKind kind, int cutoff, int level,
               const ConvergenceOptions& options) {
  EnergyLadder ladder(params, kind, level, options);
  return ladder.delta(cutoff);
}

ConvergenceReport find_minimal_cutoff(const ModelParams& params, BasisKind kind, int level,
                                      int cutoff_limit, const ConvergenceOptions& options) {
  if (cutoff_limit < 0) throw InvalidParameter("cutoff limit must be non-negative");
  EnergyLadder ladder(params, kind, level, options);
  ConvergenceReport report;
  report.basis_kind = kind;
  report.level_index = level;
  for (int cutoff = 0; cutoff <= cutoff_limit; ++cutoff) {
    const double delta = ladder.delta(cutoff);
    report.delta_e_trajectory.push_back({cutoff, delta});
    if (delta < params.epsilon()) {
      report.converged = true;
      report.minimal_cutoff = cutoff;
      report.energy_at_min = ladder.energy(cutoff);
      return report;
    }
  }
  report.converged = false;
  report.minimal_cutoff = cutoff_limit;
  report.energy_at_min = ladder.energy(cutoff_limit);
  return report;
}

double analytic_nmax_bound(const ModelParams& params) {
  const double gc = params.critical_coupling();
  const double g = params.gamma();
  if (g < gc)
    throw DomainError("analytic truncation estimate needs gamma >= gamma_c (gamma=" +
                      std::to_string(g) + ", gamma_c=" + std::to_string(gc) + ")");
  if (g == gc || g == 0.0) return 0.0;
  const double ratio = gc / g;
  const double mean = params.atoms() * g * g * (1.0 - std::pow(ratio, 4));
  return mean + 5.0 * std::sqrt(mean);
}

int default_cutoff_limit(const ModelParams& params, BasisKind kind) {
  constexpr int kFloor = 200;
  if (kind != BasisKind::Fock || !is_superradiant(params)) return kFloor;
  return std::max(kFloor, static_cast<int>(std::ceil(3.0 * analytic_nmax_bound(params))));
}

double PrecisionFit::predicted_delta(int cutoff) const {
  return std::pow(10.0, -(intercept + slope * cutoff));
}

PrecisionFit fit_log_precision(std::vector<std::pair<int, double>> samples) {
  if (samples.size() < 2)
    throw NothingToFit("need at least two samples above the numerical floor, have " +
                       std::to_string(samples.size()));
  const double count = static_cast<double>(samples.size());
  double mean_x = 0.0, mean_y = 0.0;
  for (const auto& [x, y] : samples) {
    mean_x += x;
    mean_y += y;
  }
  mean_x /= count;
  mean_y /= count;
  double sxx = 0.0, sxy = 0.0, syy = 0.0;
  for (const auto& [x, y] : samples) {
    sxx += (x - mean_x) * (x - mean_x);
    sxy += (x - mean_x) * (y - mean_y);
    syy += (y - mean_y) * (y - mean_y);
  }
  if (sxx == 0.0) throw NothingToFit("all samples share one cutoff");

  PrecisionFit fit;
  fit.slope = sxy / sxx;
  fit.intercept = mean_y - fit.slope * mean_x;
  fit.r_squared = syy == 0.0 ? 1.0 : (sxy * sxy) / (sxx * syy);
  fit.samples = std::move(samples);
  return fit;
}

PrecisionFit precision_scan(const ModelParams& params, BasisKind kind, int first, int last, int level,
                            const ConvergenceOptions& options) {
  if (first < 1 || last < first)
    throw InvalidParameter("precision scan needs 1 <= first <= last, got [" + std::to_string(first) +
                           ", " + std::to_string(last) + "]");
  EnergyLadder ladder(params, kind, level, options);
  std::vector<PrecisionSample> scanned;
  std::vector<std::pair<int, double>> usable;
  for (int cutoff = first; cutoff <= last; ++cutoff) {
    const double delta = ladder.delta(cutoff - 1);
    scanned.push_back({cutoff, delta, ladder.energy(cutoff)});
    if (delta >= kPrecisionFloor) usable.emplace_back(cutoff, -std::log10(delta));
  }
  if (usable.empty())
    throw NothingToFit("every delta_e in [" + std::to_string(first) + ", " + std::to_string(last) +
                       "] is below " + std::to_string(kPrecisionFloor) + "; nothing to fit");
  auto fit = fit_log_precision(std::move(usable));
  fit.scanned = std::move(scanned);
  return fit;
}

}  // namespace dicke
