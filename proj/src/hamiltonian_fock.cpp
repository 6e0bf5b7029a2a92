#include <cmath>
#include <utility>

#include "dicke/coherent.hpp"
#include "dicke/errors.hpp"
#include "dicke/hamiltonian.hpp"

namespace dicke {

HamiltonianMatrix::HamiltonianMatrix(ModelParams params, BasisSpec basis, SymmetricMatrix storage)
    : params_(std::move(params)), basis_(basis), storage_(std::move(storage)) {
  if (storage_.dimension() != basis_.dimension())
    throw InvalidParameter("storage dimension does not match the basis");
}

double HamiltonianMatrix::at(BasisIndex row, BasisIndex col) const {
  return storage_.at(flatten(basis_, row), flatten(basis_, col));
}

HamiltonianMatrix build_fock(const ModelParams& params, int cutoff, const AssemblyOptions& options) {
  const BasisSpec basis{BasisKind::Fock, cutoff, params.two_j()};
  const std::int64_t dim = basis.dimension();
  const int two_j = params.two_j();
  const double coupling = params.gamma() / std::sqrt(static_cast<double>(params.atoms()));

  std::vector<UpperEntry> entries;
  entries.reserve(static_cast<std::size_t>(dim) * 3);
  for (int n = 0; n <= cutoff; ++n) {
    for (int two_m = -two_j; two_m <= two_j; two_m += 2) {
      const BasisIndex here{n, two_m};
      const std::int64_t i = flatten(basis, here);
      entries.push_back({i, i, params.omega() * n + params.omega0() * jz_element(two_j, two_m)});
      if (n + 1 > cutoff || coupling == 0.0) continue;
      // a^dag J'+- ; the a J'-+ partners are the mirrored entries.
      const double boson = std::sqrt(static_cast<double>(n + 1));
      for (const auto& [dir, step] : {std::pair{Ladder::Raise, 2}, std::pair{Ladder::Lower, -2}}) {
        const double spin = jpm_element(two_j, two_m, dir);
        if (spin == 0.0) continue;
        const std::int64_t k = flatten(basis, {n + 1, two_m + step});
        entries.push_back({i, k, coupling * (boson * spin)});
      }
    }
  }
  return HamiltonianMatrix(params, basis,
                           SymmetricMatrix::from_upper(dim, entries, options.dense_threshold));
}

HamiltonianMatrix build_hamiltonian(const ModelParams& params, BasisKind kind, int cutoff,
                                    const AssemblyOptions& options) {
  return kind == BasisKind::Fock ? build_fock(params, cutoff, options)
                                 : build_coherent(params, cutoff, options);
}

}  // namespace dicke
