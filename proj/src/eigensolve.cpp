#include "dicke/eigensolve.hpp"

#include <algorithm>
#include <cmath>
#include <random>
#include <sstream>

#include <Eigen/Eigenvalues>

#include "dicke/errors.hpp"

namespace dicke {

namespace {

Eigen::VectorXd random_unit_vector(Eigen::Index n, std::mt19937_64& rng) {
  Eigen::VectorXd v(n);
  // Explicit bit conversion: std::uniform_real_distribution is not portable.
  for (Eigen::Index i = 0; i < n; ++i) v(i) = static_cast<double>(rng() >> 11) * 0x1.0p-52 - 1.0;
  v.normalize();
  return v;
}

std::vector<double> explicit_residuals(const SymmetricMatrix& a, const Eigen::MatrixXd& vectors,
                                       const std::vector<double>& values) {
  std::vector<double> out(values.size());
  Eigen::VectorXd hv(a.dimension());
  for (std::size_t i = 0; i < values.size(); ++i) {
    const auto col = static_cast<Eigen::Index>(i);
    a.multiply(vectors.col(col), hv);
    out[i] = (hv - values[i] * vectors.col(col)).norm();
  }
  return out;
}

SpectrumResult dense_solve(const SymmetricMatrix& a, int count, const SolverOptions& options) {
  const Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> solver(a.to_dense());
  if (solver.info() != Eigen::Success)
    throw SolverFailure("dense symmetric eigensolver failed (dimension " +
                        std::to_string(a.dimension()) + ")");
  SpectrumResult out;
  out.path = SolverPath::Dense;
  out.k_requested = count;
  const Eigen::MatrixXd vectors = solver.eigenvectors().leftCols(count);
  for (int i = 0; i < count; ++i) out.eigenvalues.push_back(solver.eigenvalues()(i));
  out.residual_norms = explicit_residuals(a, vectors, out.eigenvalues);
  if (options.want_eigenvectors) out.eigenvectors = vectors;
  return out;
}

// Thick-restart block Lanczos with full (twice-applied) Gram-Schmidt.
//
// Maintains H V = V T + Q R E^T: V holds the multiplied columns, T = V^T H V
// is stored explicitly, Q is the orthonormal frontier block not yet
// multiplied and R couples it to the last multiplied block. On restart the
// lowest Ritz vectors replace V and T becomes diagonal; the arrowhead
// coupling to Q is refilled when Q is multiplied. A block start resolves
// (near-)degenerate levels that a single start vector cannot see.
SpectrumResult krylov_solve(const SymmetricMatrix& a, int count, const SolverOptions& options) {
  const Eigen::Index n = a.dimension();
  const Eigen::Index keep = std::min<Eigen::Index>(n, count + std::max(options.guard_vectors, 0));
  const Eigen::Index block = std::max<Eigen::Index>(keep, 1);
  Eigen::Index m = options.krylov_dimension > 0 ? options.krylov_dimension
                                                : std::max<Eigen::Index>(keep + 6 * block, 60);
  m = std::min(std::max(m, keep + 2 * block), n);

  const double breakdown = 1e-13 * std::max(a.norm_inf(), 1e-300);
  std::mt19937_64 rng(options.seed);

  Eigen::MatrixXd basis(n, m + block);
  Eigen::MatrixXd t = Eigen::MatrixXd::Zero(m, m);

  // Orthonormalizes columns [first, first + width) against all earlier ones,
  // stopping early if the whole space is spanned. Returns the new width and
  // the coefficients r(c', c) of incoming column c on new column c'.
  auto orthonormalize = [&](Eigen::Index first, Eigen::Index width, Eigen::MatrixXd& r) {
    r = Eigen::MatrixXd::Zero(block, width);
    Eigen::Index accepted = 0;
    for (Eigen::Index c = 0; c < width && first + accepted < n; ++c) {
      const Eigen::Index col = first + accepted;
      const auto prior = basis.leftCols(col);
      Eigen::VectorXd w = basis.col(first + c);
      Eigen::VectorXd coeff = Eigen::VectorXd::Zero(col);
      for (int pass = 0; pass < 2; ++pass) {
        const Eigen::VectorXd h = prior.transpose() * w;
        w.noalias() -= prior * h;
        coeff += h;
      }
      for (Eigen::Index c2 = 0; c2 < accepted; ++c2) r(c2, c) = coeff(first + c2);
      double norm = w.norm();
      if (norm <= breakdown) {
        // Exhausted direction: continue with a fresh random one, uncoupled.
        w = random_unit_vector(n, rng);
        for (int pass = 0; pass < 2; ++pass) w.noalias() -= prior * (prior.transpose() * w);
        norm = w.norm();
      } else {
        r(accepted, c) = norm;
      }
      basis.col(col) = w / norm;
      ++accepted;
    }
    return accepted;
  };

  Eigen::MatrixXd coupling;
  for (Eigen::Index c = 0; c < block; ++c) basis.col(c) = random_unit_vector(n, rng);
  Eigen::Index frontier = orthonormalize(0, block, coupling);

  SpectrumResult out;
  out.path = SolverPath::Krylov;
  out.k_requested = count;

  Eigen::Index used = 0;
  std::vector<double> estimates;
  Eigen::MatrixXd w(n, block);
  for (int restart = 0; restart <= options.max_restarts; ++restart) {
    out.restarts = restart;
    Eigen::Index last_width = 0;
    coupling = Eigen::MatrixXd::Zero(block, block);
    while (frontier > 0 && used + frontier <= m) {
      const Eigen::Index width = frontier;
      for (Eigen::Index c = 0; c < width; ++c) {
        auto wc = w.col(c);
        a.multiply(basis.col(used + c), wc);
      }
      out.matvecs += width;
      const Eigen::Index span = used + width;
      const auto v = basis.leftCols(span);
      const Eigen::MatrixXd h = v.transpose() * w.leftCols(width);
      for (Eigen::Index c = 0; c < width; ++c)
        for (Eigen::Index i = 0; i < used; ++i) t(i, used + c) = t(used + c, i) = h(i, c);
      for (Eigen::Index c = 0; c < width; ++c)
        for (Eigen::Index c2 = 0; c2 <= c; ++c2)
          t(used + c2, used + c) = t(used + c, used + c2) = 0.5 * (h(used + c2, c) + h(used + c, c2));

      for (Eigen::Index c = 0; c < width; ++c) basis.col(span + c) = w.col(c) - v * h.col(c);
      used = span;
      last_width = width;
      frontier = used < n ? orthonormalize(used, width, coupling) : 0;
    }

    const Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> ritz(t.topLeftCorner(used, used));
    if (ritz.info() != Eigen::Success) throw SolverFailure("projected eigenproblem failed");
    const Eigen::VectorXd& theta = ritz.eigenvalues();
    const Eigen::MatrixXd& y = ritz.eigenvectors();

    // Residual of Ritz pair i is ||R y_i|| restricted to the last block.
    const bool exhausted = used == n;
    const Eigen::MatrixXd projected =
        coupling.leftCols(last_width) * y.bottomRows(last_width);  // block x used
    bool converged = true;
    estimates.assign(static_cast<std::size_t>(count), 0.0);
    for (int i = 0; i < count; ++i) {
      const double e = exhausted ? 0.0 : projected.col(i).norm();
      estimates[static_cast<std::size_t>(i)] = e;
      if (e > options.tolerance * std::max(1.0, std::abs(theta(i)))) converged = false;
    }

    if (converged || exhausted) {
      const Eigen::MatrixXd vectors = basis.leftCols(used) * y.leftCols(count);
      out.eigenvalues.assign(theta.data(), theta.data() + count);
      out.residual_norms = explicit_residuals(a, vectors, out.eigenvalues);
      bool within = true;
      for (int i = 0; i < count; ++i)
        if (!(out.residual_norms[static_cast<std::size_t>(i)] <=
              residual_bound(out.eigenvalues[static_cast<std::size_t>(i)])))
          within = false;
      if (within) {
        if (options.want_eigenvectors) out.eigenvectors = vectors;
        return out;
      }
      if (exhausted) break;
    }

    // Restart from the lowest `keep` Ritz vectors plus the frontier block.
    const Eigen::MatrixXd kept = basis.leftCols(used) * y.leftCols(keep);
    const Eigen::MatrixXd front = basis.middleCols(used, frontier);
    basis.leftCols(keep) = kept;
    basis.middleCols(keep, frontier) = front;
    t.setZero();
    for (Eigen::Index i = 0; i < keep; ++i) t(i, i) = theta(i);
    used = keep;
  }

  std::ostringstream msg;
  msg << "Krylov eigensolver did not converge: dimension=" << n << " k=" << count
      << " restarts=" << out.restarts << " matvecs=" << out.matvecs << " residual estimates=[";
  for (std::size_t i = 0; i < estimates.size(); ++i) msg << (i ? ", " : "") << estimates[i];
  msg << "]";
  throw SolverFailure(msg.str());
}

}  // namespace

double residual_bound(double eigenvalue) { return 1e-9 * std::max(1.0, std::abs(eigenvalue)); }

SpectrumResult lowest_eigenvalues(const SymmetricMatrix& matrix, int k, const SolverOptions& options) {
  if (k < 1) throw InvalidParameter("k must be at least 1");
  if (matrix.dimension() < 1) throw InvalidParameter("empty matrix");
  const int count = static_cast<int>(std::min<std::int64_t>(k, matrix.dimension()));
  SpectrumResult out = matrix.dimension() <= options.dense_threshold
                           ? dense_solve(matrix, count, options)
                           : krylov_solve(matrix, count, options);
  out.k_requested = k;
  return out;
}

}  // namespace dicke
