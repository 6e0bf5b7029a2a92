#include "dicke/symmetric_matrix.hpp"

#include <algorithm>
#include <cmath>
#include <string>

#include "dicke/errors.hpp"

namespace dicke {

namespace {

// Sort by (row, col) and sum duplicates so that each upper position holds
// exactly one value before mirroring.
std::vector<UpperEntry> canonical_upper(std::int64_t dimension, std::vector<UpperEntry> entries) {
  for (const auto& e : entries) {
    if (e.row < 0 || e.col < 0 || e.row >= dimension || e.col >= dimension)
      throw InvalidParameter("matrix entry (" + std::to_string(e.row) + ", " +
                             std::to_string(e.col) + ") out of range");
    if (e.row > e.col) throw InvalidParameter("expected an upper-triangle entry");
  }
  std::stable_sort(entries.begin(), entries.end(), [](const UpperEntry& a, const UpperEntry& b) {
    return a.row != b.row ? a.row < b.row : a.col < b.col;
  });
  std::vector<UpperEntry> merged;
  merged.reserve(entries.size());
  for (const auto& e : entries) {
    if (!merged.empty() && merged.back().row == e.row && merged.back().col == e.col)
      merged.back().value += e.value;
    else
      merged.push_back(e);
  }
  return merged;
}

}  // namespace

SymmetricMatrix SymmetricMatrix::from_upper(std::int64_t dimension,
                                            const std::vector<UpperEntry>& entries,
                                            std::int64_t dense_threshold) {
  if (dimension < 0) throw InvalidParameter("negative dimension");
  const auto upper = canonical_upper(dimension, entries);

  SymmetricMatrix out;
  out.dimension_ = dimension;
  if (dimension <= dense_threshold) {
    Dense m = Dense::Zero(dimension, dimension);
    for (const auto& e : upper) {
      m(e.row, e.col) = e.value;
      m(e.col, e.row) = e.value;
    }
    out.storage_ = std::move(m);
  } else {
    std::vector<Eigen::Triplet<double, int>> triplets;
    triplets.reserve(2 * upper.size());
    for (const auto& e : upper) {
      if (e.value == 0.0) continue;
      const auto r = static_cast<int>(e.row);
      const auto c = static_cast<int>(e.col);
      triplets.emplace_back(r, c, e.value);
      if (r != c) triplets.emplace_back(c, r, e.value);
    }
    Sparse m(static_cast<int>(dimension), static_cast<int>(dimension));
    m.setFromTriplets(triplets.begin(), triplets.end());
    m.makeCompressed();
    out.storage_ = std::move(m);
  }
  return out;
}

SymmetricMatrix SymmetricMatrix::from_dense(Dense m) {
  if (m.rows() != m.cols()) throw InvalidParameter("matrix is not square");
  for (Eigen::Index c = 0; c < m.cols(); ++c)
    for (Eigen::Index r = 0; r < c; ++r)
      if (m(r, c) != m(c, r)) throw InvalidParameter("matrix is not exactly symmetric");
  SymmetricMatrix out;
  out.dimension_ = m.rows();
  out.storage_ = std::move(m);
  return out;
}

double SymmetricMatrix::at(std::int64_t row, std::int64_t col) const {
  if (row < 0 || col < 0 || row >= dimension_ || col >= dimension_)
    throw InvalidParameter("matrix index out of range");
  if (const auto* d = std::get_if<Dense>(&storage_)) return (*d)(row, col);
  return std::get<Sparse>(storage_).coeff(static_cast<int>(row), static_cast<int>(col));
}

std::int64_t SymmetricMatrix::nonzeros() const {
  if (const auto* d = std::get_if<Dense>(&storage_))
    return static_cast<std::int64_t>((d->array() != 0.0).count());
  return std::get<Sparse>(storage_).nonZeros();
}

void SymmetricMatrix::multiply(const Eigen::Ref<const Eigen::VectorXd>& x,
                               Eigen::Ref<Eigen::VectorXd> y) const {
  if (const auto* d = std::get_if<Dense>(&storage_))
    y.noalias() = (*d) * x;
  else
    y.noalias() = std::get<Sparse>(storage_) * x;
}

SymmetricMatrix::Dense SymmetricMatrix::to_dense() const {
  if (const auto* d = std::get_if<Dense>(&storage_)) return *d;
  return Dense(std::get<Sparse>(storage_));
}

double SymmetricMatrix::norm_inf() const {
  if (dimension_ == 0) return 0.0;
  if (const auto* d = std::get_if<Dense>(&storage_))
    return d->cwiseAbs().rowwise().sum().maxCoeff();
  const auto& s = std::get<Sparse>(storage_);
  double best = 0.0;
  for (int r = 0; r < s.outerSize(); ++r) {
    double sum = 0.0;
    for (Sparse::InnerIterator it(s, r); it; ++it) sum += std::abs(it.value());
    best = std::max(best, sum);
  }
  return best;
}

}  // namespace dicke
