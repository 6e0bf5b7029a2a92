#pragma once

#include <cstdint>

#include "dicke/model.hpp"
#include "dicke/symmetric_matrix.hpp"

namespace dicke {

struct AssemblyOptions {
  /// Dimension at or below which the matrix is stored densely.
  std::int64_t dense_threshold = SymmetricMatrix::kDefaultDenseThreshold;
};

/// A Dicke Hamiltonian in one truncated basis, indexed by `flatten(basis, ...)`.
class HamiltonianMatrix {
 public:
  HamiltonianMatrix(ModelParams params, BasisSpec basis, SymmetricMatrix storage);

  const ModelParams& params() const noexcept { return params_; }
  const BasisSpec& basis() const noexcept { return basis_; }
  const SymmetricMatrix& matrix() const noexcept { return storage_; }
  std::int64_t dimension() const noexcept { return storage_.dimension(); }

  double at(BasisIndex row, BasisIndex col) const;
  double at(std::int64_t row, std::int64_t col) const { return storage_.at(row, col); }

 private:
  ModelParams params_;
  BasisSpec basis_;
  SymmetricMatrix storage_;
};

/// omega a^dag a + omega0 J'z + gamma/sqrt(N) (a + a^dag)(J'+ + J'-) on
/// |n> (x) |j, m'> for n <= cutoff. Couplings leaving the box are dropped.
HamiltonianMatrix build_fock(const ModelParams& params, int cutoff,
                             const AssemblyOptions& options = {});

/// Dispatches to build_fock or build_coherent.
HamiltonianMatrix build_hamiltonian(const ModelParams& params, BasisKind kind, int cutoff,
                                    const AssemblyOptions& options = {});

}  // namespace dicke
