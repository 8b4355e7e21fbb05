#include "zonoclt/linalg.hpp"

#include <algorithm>
#include <array>
#include <cmath>
#include <string>

#include "zonoclt/error.hpp"

namespace zonoclt {

namespace {

constexpr std::size_t kMaxDetDim = 12;

// In-place LU with partial pivoting on a row-major n x n array; returns the signed determinant.
double lu_det_inplace(double* a, std::size_t n) {
  double det = 1.0;
  for (std::size_t k = 0; k < n; ++k) {
    std::size_t piv = k;
    double best = std::abs(a[k * n + k]);
    for (std::size_t i = k + 1; i < n; ++i) {
      const double v = std::abs(a[i * n + k]);
      if (v > best) {
        best = v;
        piv = i;
      }
    }
    if (best == 0.0) return 0.0;
    if (piv != k) {
      for (std::size_t j = 0; j < n; ++j) std::swap(a[k * n + j], a[piv * n + j]);
      det = -det;
    }
    const double d = a[k * n + k];
    det *= d;
    for (std::size_t i = k + 1; i < n; ++i) {
      const double f = a[i * n + k] / d;
      if (f == 0.0) continue;
      for (std::size_t j = k + 1; j < n; ++j) a[i * n + j] -= f * a[k * n + j];
    }
  }
  return det;
}

void require_finite(std::span<const double> v, const char* where) {
  for (double x : v)
    if (!std::isfinite(x)) throw_invalid(std::string(where) + ": non-finite entry");
}

}  // namespace

ColumnMatrix::ColumnMatrix(std::size_t dim, std::size_t ncols)
    : dim_(dim), ncols_(ncols), data_(dim * ncols, 0.0) {}

ColumnMatrix ColumnMatrix::from_columns(std::span<const Vector> columns) {
  if (columns.empty()) return {};
  ColumnMatrix m(columns.front().size(), columns.size());
  for (std::size_t j = 0; j < columns.size(); ++j) {
    if (columns[j].size() != m.dim_) throw_invalid("ColumnMatrix: columns differ in dimension");
    std::copy(columns[j].begin(), columns[j].end(), m.column(j).begin());
  }
  return m;
}

ColumnMatrix ColumnMatrix::from_columns(std::initializer_list<Vector> columns) {
  return from_columns(std::span<const Vector>(columns.begin(), columns.size()));
}

ColumnMatrix ColumnMatrix::from_rows(std::initializer_list<Vector> rows) {
  if (rows.size() == 0) return {};
  const std::size_t ncols = rows.begin()->size();
  ColumnMatrix m(rows.size(), ncols);
  std::size_t i = 0;
  for (const auto& r : rows) {
    if (r.size() != ncols) throw_invalid("ColumnMatrix: rows differ in length");
    for (std::size_t j = 0; j < ncols; ++j) m(i, j) = r[j];
    ++i;
  }
  return m;
}

ColumnMatrix ColumnMatrix::identity(std::size_t n) {
  ColumnMatrix m(n, n);
  for (std::size_t i = 0; i < n; ++i) m(i, i) = 1.0;
  return m;
}

ColumnMatrix ColumnMatrix::select(std::span<const std::size_t> cols) const {
  ColumnMatrix out(dim_, cols.size());
  for (std::size_t j = 0; j < cols.size(); ++j) {
    if (cols[j] >= ncols_) throw_invalid("ColumnMatrix::select: column index out of range");
    auto src = column(cols[j]);
    std::copy(src.begin(), src.end(), out.column(j).begin());
  }
  return out;
}

ColumnMatrix ColumnMatrix::transposed() const {
  ColumnMatrix t(ncols_, dim_);
  for (std::size_t i = 0; i < dim_; ++i)
    for (std::size_t j = 0; j < ncols_; ++j) t(j, i) = (*this)(i, j);
  return t;
}

void ColumnMatrix::append_column(std::span<const double> v) {
  if (ncols_ == 0 && dim_ == 0) dim_ = v.size();
  if (v.size() != dim_) throw_invalid("ColumnMatrix::append_column: dimension mismatch");
  data_.insert(data_.end(), v.begin(), v.end());
  ++ncols_;
}

OrthonormalBasis::OrthonormalBasis(std::size_t ambient_dim, std::vector<Vector> rows)
    : ambient_(ambient_dim), rows_(std::move(rows)) {
  for (const auto& r : rows_)
    if (r.size() != ambient_) throw_invalid("OrthonormalBasis: row length differs from ambient dimension");
  if (rows_.size() > ambient_) throw_invalid("OrthonormalBasis: more rows than ambient dimension");
}

ColumnMatrix OrthonormalBasis::as_matrix() const {
  ColumnMatrix m(rows_.size(), ambient_);
  for (std::size_t i = 0; i < rows_.size(); ++i)
    for (std::size_t j = 0; j < ambient_; ++j) m(i, j) = rows_[i][j];
  return m;
}

double dot(std::span<const double> a, std::span<const double> b) {
  if (a.size() != b.size()) throw_invalid("dot: dimension mismatch");
  double s = 0.0;
  for (std::size_t i = 0; i < a.size(); ++i) s += a[i] * b[i];
  return s;
}

double norm2(std::span<const double> a) { return std::sqrt(dot(a, a)); }

double det(const ColumnMatrix& m) {
  if (!m.square()) throw_invalid("det: matrix is " + std::to_string(m.dim()) + "x" + std::to_string(m.ncols()));
  const std::size_t n = m.dim();
  if (n == 0) return 1.0;
  if (n > kMaxDetDim) throw_invalid("det: dimension " + std::to_string(n) + " exceeds 12");
  require_finite(m.data(), "det");
  std::array<double, kMaxDetDim * kMaxDetDim> a{};
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = 0; j < n; ++j) a[i * n + j] = m(i, j);
  return lu_det_inplace(a.data(), n);
}

double det_via_projections(const ColumnMatrix& m) {
  if (!m.square()) throw_invalid("det_via_projections: matrix is not square");
  const std::size_t n = m.dim();
  std::vector<Vector> q;
  q.reserve(n);
  double prod = 1.0;
  for (std::size_t k = 0; k < n; ++k) {
    auto x = m.column(k);
    Vector v(x.begin(), x.end());
    const double xnorm = norm2(v);
    if (xnorm == 0.0) return 0.0;
    // Two passes of modified Gram-Schmidt keep the residual orthogonal to machine precision.
    for (int pass = 0; pass < 2; ++pass) {
      for (const auto& qi : q) {
        const double c = dot(v, qi);
        for (std::size_t i = 0; i < n; ++i) v[i] -= c * qi[i];
      }
    }
    const double r = norm2(v);
    if (r <= 1e-13 * xnorm) return 0.0;
    prod *= r;
    for (double& vi : v) vi /= r;
    q.push_back(std::move(v));
  }
  return prod;
}

double gram_det_sqrt(const ColumnMatrix& m) {
  const std::size_t n = m.dim();
  const std::size_t N = m.ncols();
  if (N < n) throw_invalid("gram_det_sqrt: need N >= n, got n=" + std::to_string(n) + " N=" + std::to_string(N));
  require_finite(m.data(), "gram_det_sqrt");
  // A = M^T (N x n); A's k-th column is the k-th row of M.
  std::vector<double> a(N * n);
  for (std::size_t k = 0; k < n; ++k)
    for (std::size_t i = 0; i < N; ++i) a[k * N + i] = m(k, i);

  double prod = 1.0;
  std::vector<double> v(N);
  for (std::size_t k = 0; k < n; ++k) {
    double* col = a.data() + k * N;
    double sq = 0.0;
    for (std::size_t i = k; i < N; ++i) sq += col[i] * col[i];
    const double nrm = std::sqrt(sq);
    if (nrm == 0.0) return 0.0;
    const double alpha = col[k] > 0 ? -nrm : nrm;
    prod *= nrm;  // |R_kk| = |alpha|
    for (std::size_t i = k; i < N; ++i) v[i] = col[i];
    v[k] -= alpha;
    double vv = 0.0;
    for (std::size_t i = k; i < N; ++i) vv += v[i] * v[i];
    if (vv == 0.0) continue;
    for (std::size_t j = k + 1; j < n; ++j) {
      double* cj = a.data() + j * N;
      double s = 0.0;
      for (std::size_t i = k; i < N; ++i) s += v[i] * cj[i];
      const double f = 2.0 * s / vv;
      for (std::size_t i = k; i < N; ++i) cj[i] -= f * v[i];
    }
  }
  return prod;
}

OrthonormalBasis orthonormalize_rows(const ColumnMatrix& m) {
  const std::size_t n = m.dim();
  const std::size_t N = m.ncols();
  if (n > N) throw_invalid("orthonormalize_rows: more rows than columns");
  require_finite(m.data(), "orthonormalize_rows");
  std::vector<Vector> rows;
  rows.reserve(n);
  for (std::size_t k = 0; k < n; ++k) {
    Vector v(N);
    for (std::size_t j = 0; j < N; ++j) v[j] = m(k, j);
    const double orig = norm2(v);
    for (int pass = 0; pass < 2; ++pass) {
      for (const auto& q : rows) {
        const double c = dot(v, q);
        for (std::size_t j = 0; j < N; ++j) v[j] -= c * q[j];
      }
    }
    const double r = norm2(v);
    if (orig == 0.0 || r < kRankPivotTolerance * orig)
      throw Error(ErrorCode::RankDeficient, "orthonormalize_rows: row " + std::to_string(k) + " is numerically dependent");
    for (double& x : v) x /= r;
    rows.push_back(std::move(v));
  }
  return OrthonormalBasis(N, std::move(rows));
}

Vector project_complement(std::span<const double> v, const OrthonormalBasis& f) {
  if (v.size() != f.dim_ambient()) throw_invalid("project_complement: dimension mismatch");
  Vector out(v.begin(), v.end());
  for (const auto& q : f.rows()) {
    const double c = dot(v, q);
    for (std::size_t i = 0; i < out.size(); ++i) out[i] -= c * q[i];
  }
  return out;
}

double abs_det_columns(std::span<const double* const> cols, std::size_t n) {
  switch (n) {
    case 1:
      return std::abs(cols[0][0]);
    case 2:
      return std::abs(cols[0][0] * cols[1][1] - cols[0][1] * cols[1][0]);
    case 3: {
      const double* a = cols[0];
      const double* b = cols[1];
      const double* c = cols[2];
      return std::abs(a[0] * (b[1] * c[2] - b[2] * c[1]) - a[1] * (b[0] * c[2] - b[2] * c[0]) +
                      a[2] * (b[0] * c[1] - b[1] * c[0]));
    }
    default: {
      if (n > kMaxDetDim) throw_invalid("abs_det_columns: dimension exceeds 12");
      std::array<double, kMaxDetDim * kMaxDetDim> a{};
      for (std::size_t i = 0; i < n; ++i)
        for (std::size_t j = 0; j < n; ++j) a[i * n + j] = cols[j][i];
      return std::abs(lu_det_inplace(a.data(), n));
    }
  }
}

}  // namespace zonoclt
