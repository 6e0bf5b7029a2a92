#pragma once

#include <cstdint>
#include <variant>
#include <vector>

#include <Eigen/Core>
#include <Eigen/SparseCore>

namespace dicke {

/// One upper-triangle (row <= col) entry handed to SymmetricMatrix.
struct UpperEntry {
  std::int64_t row;
  std::int64_t col;
  double value;
};

/// Real symmetric matrix, dense or sparse depending on size.
///
/// Entries are supplied once for the upper triangle and mirrored, so
/// `at(i, j) == at(j, i)` holds bit-for-bit. Duplicate upper entries are summed
/// before mirroring.
class SymmetricMatrix {
 public:
  using Dense = Eigen::MatrixXd;
  using Sparse = Eigen::SparseMatrix<double, Eigen::RowMajor, int>;

  static constexpr std::int64_t kDefaultDenseThreshold = 4096;

  SymmetricMatrix() = default;

  /// Dense storage when dimension <= dense_threshold, sparse otherwise.
  static SymmetricMatrix from_upper(std::int64_t dimension, const std::vector<UpperEntry>& entries,
                                    std::int64_t dense_threshold = kDefaultDenseThreshold);

  /// Throws InvalidParameter if `m` is not square and exactly symmetric.
  static SymmetricMatrix from_dense(Dense m);

  std::int64_t dimension() const noexcept { return dimension_; }
  bool is_dense() const noexcept { return std::holds_alternative<Dense>(storage_); }

  double at(std::int64_t row, std::int64_t col) const;
  /// Stored nonzeros in both triangles.
  std::int64_t nonzeros() const;

  /// y = A x
  void multiply(const Eigen::Ref<const Eigen::VectorXd>& x, Eigen::Ref<Eigen::VectorXd> y) const;

  Dense to_dense() const;
  /// Largest absolute row sum; an upper bound on the spectral radius.
  double norm_inf() const;

 private:
  std::int64_t dimension_ = 0;
  std::variant<Dense, Sparse> storage_;
};

}  // namespace dicke
