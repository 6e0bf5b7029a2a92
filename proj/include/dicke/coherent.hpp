#pragma once

#include <Eigen/Core>

#include "dicke/hamiltonian.hpp"

namespace dicke {

/// <N'| D(beta) |N> with D(beta) = exp(beta a^dag - beta a), beta real.
///
/// For N' >= N this is sqrt(N!/N'!) beta^(N'-N) e^(-beta^2/2) L_N^(N'-N)(beta^2);
/// the other triangle follows from <N'|D|N> = (-1)^(N'-N) <N|D|N'>.
double displaced_overlap(int n_prime, int n, double beta);

/// Table of <N'| D(beta) |N> for 0 <= N, N' <= cutoff.
///
/// Entries do not depend on the cutoff, so a table for a larger cutoff
/// contains every smaller one as its leading block.
class DisplacedOverlapKernel {
 public:
  /// Throws SolverFailure if a row of the table has norm above 1 beyond
  /// round-off, which only happens when the Laguerre recurrence lost precision.
  DisplacedOverlapKernel(double beta, int cutoff);

  double beta() const noexcept { return beta_; }
  int cutoff() const noexcept { return cutoff_; }
  double operator()(int n_prime, int n) const { return table_(n_prime, n); }
  const Eigen::MatrixXd& table() const noexcept { return table_; }

  /// max over rows of |1 - ||row||^2|, the truncation defect of the unitary.
  double unitarity_defect() const;

 private:
  double beta_;
  int cutoff_;
  Eigen::MatrixXd table_;
};

/// omega (A^dag A - G^2 Jz^2) - omega0/2 (J+ + J-) in the displaced number
/// basis D(-G m)|N> (x) |j, m>, N <= cutoff.
///
/// Sector m carries displacement alpha_m = -G m. The J+ coupling (m -> m+1)
/// picks up <N'| D(alpha_m - alpha_{m+1}) |N> = <N'| D(+G) |N>.
HamiltonianMatrix build_coherent(const ModelParams& params, int cutoff,
                                 const AssemblyOptions& options = {});

/// build_coherent with the displacement sign flipped globally (alpha_m = +G m).
/// Same spectrum; kept for checking that invariance.
HamiltonianMatrix build_coherent_flipped(const ModelParams& params, int cutoff,
                                         const AssemblyOptions& options = {});

}  // namespace dicke
