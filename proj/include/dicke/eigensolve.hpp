#pragma once

#include <cstdint>
#include <optional>
#include <vector>

#include <Eigen/Core>

#include "dicke/hamiltonian.hpp"
#include "dicke/symmetric_matrix.hpp"

namespace dicke {

enum class SolverPath { Dense, Krylov };

struct SolverOptions {
  /// Matrices of this dimension or smaller are diagonalized densely.
  std::int64_t dense_threshold = 2000;
  bool want_eigenvectors = false;
  /// Ritz pairs are accepted once the residual estimate is below
  /// tolerance * max(1, |theta|).
  double tolerance = 1e-11;
  /// Extra Ritz vectors kept beyond the requested count across restarts.
  int guard_vectors = 4;
  /// Krylov basis size per restart cycle; 0 picks a size from k.
  int krylov_dimension = 0;
  int max_restarts = 2000;
  std::uint64_t seed = 0x5DEECE66DULL;
};

struct SpectrumResult {
  std::vector<double> eigenvalues;  ///< ascending
  std::optional<Eigen::MatrixXd> eigenvectors;  ///< normalized columns
  int k_requested = 0;
  std::vector<double> residual_norms;  ///< ||H v - lambda v|| per pair
  SolverPath path = SolverPath::Dense;
  int restarts = 0;
  std::int64_t matvecs = 0;
};

/// Residual bound every returned pair satisfies: 1e-9 max(1, |lambda|).
double residual_bound(double eigenvalue);

/// The min(k, dimension) lowest eigenpairs of a symmetric matrix.
///
/// Deterministic for identical inputs and options. Throws InvalidParameter for
/// k < 1 and SolverFailure (with restart and residual diagnostics) if the
/// Krylov path does not meet the residual bound.
SpectrumResult lowest_eigenvalues(const SymmetricMatrix& matrix, int k,
                                  const SolverOptions& options = {});

inline SpectrumResult lowest_eigenvalues(const HamiltonianMatrix& h, int k,
                                         const SolverOptions& options = {}) {
  return lowest_eigenvalues(h.matrix(), k, options);
}

}  // namespace dicke
