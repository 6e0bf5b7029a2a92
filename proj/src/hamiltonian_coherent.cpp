#include <algorithm>
#include <cmath>
#include <sstream>
#include <vector>

#include "dicke/coherent.hpp"
#include "dicke/errors.hpp"

namespace dicke {

namespace {

// Row-norm excess tolerated before the table is declared numerically broken.
constexpr double kNormSlack = 1e-10;

// L_n^(k)(x) for n = 0..count-1 by the three-term recurrence in n.
std::vector<double> laguerre_column(int k, double x, int count) {
  std::vector<double> out(static_cast<std::size_t>(std::max(count, 0)));
  if (count > 0) out[0] = 1.0;
  if (count > 1) out[1] = 1.0 + k - x;
  for (int n = 1; n + 1 < count; ++n)
    out[n + 1] = ((2.0 * n + 1.0 + k - x) * out[n] - (n + k) * out[n - 1]) / (n + 1.0);
  return out;
}

// <n + k| D(beta) |n> for k >= 0, given L_n^(k)(beta^2).
double lower_triangle_entry(int n, int k, double beta, double laguerre) {
  if (laguerre == 0.0) return 0.0;
  if (beta == 0.0) return k == 0 ? 1.0 : 0.0;
  const double x = beta * beta;
  // log of sqrt(n!/(n+k)!) |beta|^k e^(-x/2)
  const double log_prefactor = 0.5 * (std::lgamma(n + 1.0) - std::lgamma(n + k + 1.0)) +
                               k * std::log(std::abs(beta)) - 0.5 * x;
  const double sign = (beta < 0.0 && k % 2 != 0) ? -1.0 : 1.0;
  return sign * std::exp(log_prefactor) * laguerre;
}

HamiltonianMatrix assemble_coherent(const ModelParams& params, int cutoff, double beta_raise,
                                    const AssemblyOptions& options) {
  const BasisSpec basis{BasisKind::Coherent, cutoff, params.two_j()};
  const std::int64_t dim = basis.dimension();
  const int two_j = params.two_j();
  const double g = params.shift_constant();
  const double half_split = 0.5 * params.omega0();

  std::vector<UpperEntry> entries;
  for (int n = 0; n <= cutoff; ++n)
    for (int two_m = -two_j; two_m <= two_j; two_m += 2) {
      const std::int64_t i = flatten(basis, {n, two_m});
      const double m = 0.5 * two_m;
      entries.push_back({i, i, params.omega() * (n - g * g * m * m)});
    }

  if (half_split != 0.0) {
    const DisplacedOverlapKernel kernel(beta_raise, cutoff);
    entries.reserve(entries.size() + static_cast<std::size_t>(two_j) * (cutoff + 1) * (cutoff + 1));
    for (int two_m = -two_j; two_m < two_j; two_m += 2) {
      const double spin = -half_split * jpm_element(two_j, two_m, Ladder::Raise);
      for (int n = 0; n <= cutoff; ++n) {
        const std::int64_t col = flatten(basis, {n, two_m});
        for (int np = 0; np <= cutoff; ++np) {
          const double value = spin * kernel(np, n);
          if (value == 0.0) continue;
          const std::int64_t row = flatten(basis, {np, two_m + 2});
          entries.push_back({std::min(row, col), std::max(row, col), value});
        }
      }
    }
  }
  return HamiltonianMatrix(params, basis,
                           SymmetricMatrix::from_upper(dim, entries, options.dense_threshold));
}

}  // namespace

double displaced_overlap(int n_prime, int n, double beta) {
  if (n_prime < 0 || n < 0) throw InvalidParameter("number states must be non-negative");
  if (!std::isfinite(beta)) throw InvalidParameter("displacement must be finite");
  const int lo = std::min(n, n_prime);
  const int k = std::abs(n_prime - n);
  const double laguerre = laguerre_column(k, beta * beta, lo + 1)[lo];
  const double lower = lower_triangle_entry(lo, k, beta, laguerre);
  return (n_prime >= n || k % 2 == 0) ? lower : -lower;
}

DisplacedOverlapKernel::DisplacedOverlapKernel(double beta, int cutoff)
    : beta_(beta), cutoff_(cutoff) {
  if (cutoff < 0) throw InvalidParameter("cutoff must be non-negative");
  if (!std::isfinite(beta)) throw InvalidParameter("displacement must be finite");
  const int size = cutoff + 1;
  table_ = Eigen::MatrixXd::Zero(size, size);
  const double x = beta * beta;
  for (int k = 0; k < size; ++k) {
    const auto laguerre = laguerre_column(k, x, size - k);
    for (int n = 0; n + k < size; ++n) {
      const double lower = lower_triangle_entry(n, k, beta, laguerre[n]);
      table_(n + k, n) = lower;
      table_(n, n + k) = (k % 2 == 0) ? lower : -lower;
    }
  }
  for (int r = 0; r < size; ++r) {
    const double norm2 = table_.row(r).squaredNorm();
    if (!std::isfinite(norm2) || norm2 > 1.0 + kNormSlack) {
      std::ostringstream msg;
      msg << "displaced overlap table lost precision: beta=" << beta << " cutoff=" << cutoff
          << " row " << r << " has squared norm " << norm2;
      throw SolverFailure(msg.str());
    }
  }
}

double DisplacedOverlapKernel::unitarity_defect() const {
  double worst = 0.0;
  for (Eigen::Index r = 0; r < table_.rows(); ++r)
    worst = std::max(worst, std::abs(1.0 - table_.row(r).squaredNorm()));
  return worst;
}

HamiltonianMatrix build_coherent(const ModelParams& params, int cutoff,
                                 const AssemblyOptions& options) {
  return assemble_coherent(params, cutoff, params.shift_constant(), options);
}

HamiltonianMatrix build_coherent_flipped(const ModelParams& params, int cutoff,
                                         const AssemblyOptions& options) {
  return assemble_coherent(params, cutoff, -params.shift_constant(), options);
}

}  // namespace dicke
