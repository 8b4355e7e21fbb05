#pragma once

// Small dense linear algebra for dimensions n <= ~8: determinants, Gram
// determinants, row orthonormalization and complement projections.

#include <cstddef>
#include <initializer_list>
#include <span>
#include <vector>

namespace zonoclt {

using Vector = std::vector<double>;

/// dim x ncols matrix stored as an ordered list of column vectors (column-major).
class ColumnMatrix {
 public:
  ColumnMatrix() = default;
  ColumnMatrix(std::size_t dim, std::size_t ncols);
  /// Builds from a list of columns; all columns must share a dimension.
  static ColumnMatrix from_columns(std::span<const Vector> columns);
  static ColumnMatrix from_columns(std::initializer_list<Vector> columns);
  /// Builds from rows: rows[i][j] is entry (i, j).
  static ColumnMatrix from_rows(std::initializer_list<Vector> rows);
  static ColumnMatrix identity(std::size_t n);

  std::size_t dim() const noexcept { return dim_; }
  std::size_t ncols() const noexcept { return ncols_; }
  bool square() const noexcept { return dim_ == ncols_; }

  double operator()(std::size_t row, std::size_t col) const { return data_[col * dim_ + row]; }
  double& operator()(std::size_t row, std::size_t col) { return data_[col * dim_ + row]; }

  std::span<const double> column(std::size_t j) const { return {data_.data() + j * dim_, dim_}; }
  std::span<double> column(std::size_t j) { return {data_.data() + j * dim_, dim_}; }
  std::span<const double> data() const noexcept { return data_; }
  std::span<double> data() noexcept { return data_; }

  /// Column subset in the given order.
  ColumnMatrix select(std::span<const std::size_t> cols) const;
  ColumnMatrix transposed() const;
  void append_column(std::span<const double> v);

  bool operator==(const ColumnMatrix&) const = default;

 private:
  std::size_t dim_ = 0;
  std::size_t ncols_ = 0;
  std::vector<double> data_;
};

/// n orthonormal rows in R^N; the basis of an n-dimensional subspace E of R^N.
class OrthonormalBasis {
 public:
  OrthonormalBasis() = default;
  /// Takes rows as-is; callers are expected to pass orthonormal rows.
  OrthonormalBasis(std::size_t ambient_dim, std::vector<Vector> rows);

  std::size_t dim_ambient() const noexcept { return ambient_; }
  std::size_t dim_sub() const noexcept { return rows_.size(); }
  std::span<const double> row(std::size_t i) const { return rows_[i]; }
  const std::vector<Vector>& rows() const noexcept { return rows_; }

  /// The n x N matrix whose rows are the basis vectors. Its N columns are the
  /// images of the coordinate vectors e_1..e_N under P_E, in basis coordinates.
  ColumnMatrix as_matrix() const;

 private:
  std::size_t ambient_ = 0;
  std::vector<Vector> rows_;
};

inline constexpr double kRankPivotTolerance = 1e-10;

double dot(std::span<const double> a, std::span<const double> b);
double norm2(std::span<const double> a);

/// Signed determinant via partial-pivot LU. Requires a square matrix, n <= 12.
double det(const ColumnMatrix& m);

/// |det| as the product ||x_1|| ||P_{F_1^perp} x_2|| ... ||P_{F_{n-1}^perp} x_n||
/// with F_k = span{x_1..x_k}. Independent of det(); rank-deficient input gives 0.
double det_via_projections(const ColumnMatrix& m);

/// det(M M^T)^{1/2} for an n x N matrix with N >= n, via Householder QR of M^T.
double gram_det_sqrt(const ColumnMatrix& m);

/// Orthonormalizes the dim() rows of m (each of length ncols()).
/// Throws RankDeficient when a row is numerically dependent on the earlier ones.
OrthonormalBasis orthonormalize_rows(const ColumnMatrix& m);

/// v - sum_i <v, q_i> q_i.
Vector project_complement(std::span<const double> v, const OrthonormalBasis& f);

/// |det| of the n x n matrix with the given columns (each of length n). Hot path
/// for subset enumeration: closed forms for n <= 3, LU otherwise.
double abs_det_columns(std::span<const double* const> cols, std::size_t n);

}  // namespace zonoclt
