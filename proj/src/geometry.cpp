#include "zonoclt/geometry.hpp"

#include <algorithm>
#include <array>
#include <cmath>
#include <string>

#include "zonoclt/error.hpp"
#include "zonoclt/moments.hpp"
#include "zonoclt/subsets.hpp"

namespace zonoclt {

namespace {

using P2 = std::array<double, 2>;

double cross2(const P2& o, const P2& a, const P2& b) {
  return (a[0] - o[0]) * (b[1] - o[1]) - (a[1] - o[1]) * (b[0] - o[0]);
}

// Area of the convex hull of planar points (Andrew's monotone chain).
double convex_polygon_area(std::vector<P2> pts) {
  std::sort(pts.begin(), pts.end());
  pts.erase(std::unique(pts.begin(), pts.end()), pts.end());
  if (pts.size() < 3) return 0.0;
  std::vector<P2> hull(2 * pts.size());
  std::size_t k = 0;
  for (const auto& p : pts) {
    while (k >= 2 && cross2(hull[k - 2], hull[k - 1], p) <= 0) --k;
    hull[k++] = p;
  }
  for (std::size_t i = pts.size() - 1, lower = k + 1; i-- > 0;) {
    while (k >= lower && cross2(hull[k - 2], hull[k - 1], pts[i]) <= 0) --k;
    hull[k++] = pts[i];
  }
  hull.resize(k - 1);
  double a = 0.0;
  for (std::size_t i = 0; i < hull.size(); ++i) {
    const auto& p = hull[i];
    const auto& q = hull[(i + 1) % hull.size()];
    a += p[0] * q[1] - p[1] * q[0];
  }
  return 0.5 * std::abs(a);
}

std::size_t affine_rank(std::span<const Vector> pts, double tol) {
  if (pts.empty()) return 0;
  const std::size_t n = pts.front().size();
  ColumnMatrix diffs(n, 0);
  Vector d(n);
  for (const auto& p : pts) {
    for (std::size_t i = 0; i < n; ++i) d[i] = p[i] - pts.front()[i];
    diffs.append_column(d);
  }
  // Gaussian elimination with full pivot search on the rows of diffs^T.
  std::vector<Vector> rows;
  for (std::size_t j = 0; j < diffs.ncols(); ++j) {
    auto c = diffs.column(j);
    rows.emplace_back(c.begin(), c.end());
  }
  std::size_t rank = 0;
  for (std::size_t col = 0; col < n && rank < rows.size(); ++col) {
    std::size_t piv = rank;
    for (std::size_t r = rank; r < rows.size(); ++r)
      if (std::abs(rows[r][col]) > std::abs(rows[piv][col])) piv = r;
    if (std::abs(rows[piv][col]) <= tol) continue;
    std::swap(rows[piv], rows[rank]);
    for (std::size_t r = rank + 1; r < rows.size(); ++r) {
      const double f = rows[r][col] / rows[rank][col];
      for (std::size_t c = col; c < n; ++c) rows[r][c] -= f * rows[rank][c];
    }
    ++rank;
  }
  return rank;
}

struct Facet {
  Vector normal;  // outward unit normal
  double offset;  // signed distance of the facet plane from the origin
};

bool same_facet(const Facet& a, const Facet& b, double tol) {
  for (std::size_t i = 0; i < a.normal.size(); ++i)
    if (std::abs(a.normal[i] - b.normal[i]) > 1e-7) return false;
  return std::abs(a.offset - b.offset) <= tol;
}

// Orients `f` outward if every point lies on one side of its plane; false otherwise.
bool orient_supporting(Facet& f, std::span<const Vector> pts, double tol) {
  bool below = true;
  bool above = true;
  for (const auto& p : pts) {
    const double s = dot(f.normal, p) - f.offset;
    if (s > tol) below = false;
    if (s < -tol) above = false;
    if (!below && !above) return false;
  }
  if (!below) {
    for (double& x : f.normal) x = -x;
    f.offset = -f.offset;
  }
  return true;
}

double hull_volume_2d(std::span<const Vector> pts, double tol) {
  std::vector<Facet> seen;
  double vol = 0.0;
  for (std::size_t i = 0; i < pts.size(); ++i) {
    for (std::size_t j = i + 1; j < pts.size(); ++j) {
      const double dx = pts[j][0] - pts[i][0];
      const double dy = pts[j][1] - pts[i][1];
      const double len = std::hypot(dx, dy);
      if (len <= tol) continue;
      Facet f{{dy / len, -dx / len}, 0.0};
      f.offset = dot(f.normal, pts[i]);
      if (!orient_supporting(f, pts, tol)) continue;
      if (std::any_of(seen.begin(), seen.end(), [&](const Facet& g) { return same_facet(f, g, tol); })) continue;
      // Edge length: extent of the on-edge points along the edge direction.
      const Vector t{-f.normal[1], f.normal[0]};
      double lo = INFINITY, hi = -INFINITY;
      for (const auto& p : pts) {
        if (std::abs(dot(f.normal, p) - f.offset) > tol) continue;
        const double s = dot(t, p);
        lo = std::min(lo, s);
        hi = std::max(hi, s);
      }
      vol += 0.5 * f.offset * (hi - lo);
      seen.push_back(std::move(f));
    }
  }
  return vol;
}

double hull_volume_3d(std::span<const Vector> pts, double tol) {
  std::vector<Facet> seen;
  double vol = 0.0;
  const std::size_t m = pts.size();
  for (std::size_t i = 0; i < m; ++i) {
    for (std::size_t j = i + 1; j < m; ++j) {
      for (std::size_t k = j + 1; k < m; ++k) {
        const Vector a{pts[j][0] - pts[i][0], pts[j][1] - pts[i][1], pts[j][2] - pts[i][2]};
        const Vector b{pts[k][0] - pts[i][0], pts[k][1] - pts[i][1], pts[k][2] - pts[i][2]};
        Vector nrm{a[1] * b[2] - a[2] * b[1], a[2] * b[0] - a[0] * b[2], a[0] * b[1] - a[1] * b[0]};
        const double len = norm2(nrm);
        if (len <= tol * (norm2(a) + norm2(b))) continue;
        for (double& x : nrm) x /= len;
        Facet f{std::move(nrm), 0.0};
        f.offset = dot(f.normal, pts[i]);
        if (!orient_supporting(f, pts, tol)) continue;
        if (std::any_of(seen.begin(), seen.end(), [&](const Facet& g) { return same_facet(f, g, tol); })) continue;
        // In-plane orthonormal frame (u, w) for the facet polygon.
        Vector u{a[0], a[1], a[2]};
        const double ul = norm2(u);
        for (double& x : u) x /= ul;
        const Vector& nn = f.normal;
        const Vector w{nn[1] * u[2] - nn[2] * u[1], nn[2] * u[0] - nn[0] * u[2], nn[0] * u[1] - nn[1] * u[0]};
        std::vector<P2> poly;
        for (const auto& p : pts)
          if (std::abs(dot(nn, p) - f.offset) <= tol) poly.push_back({dot(u, p), dot(w, p)});
        vol += f.offset * convex_polygon_area(std::move(poly)) / 3.0;
        seen.push_back(std::move(f));
      }
    }
  }
  return vol;
}

}  // namespace

double zonotope_volume(const Zonotope& z, unsigned threads) {
  const ColumnMatrix& g = z.generators();
  const std::size_t n = g.dim();
  const std::size_t N = g.ncols();
  if (n == 0) throw_invalid("zonotope_volume: generators must have dimension >= 1");
  if (n > kMaxZonotopeDim)
    throw Error(ErrorCode::ResourceLimit, "zonotope_volume: dimension " + std::to_string(n) + " exceeds 6");
  for (double x : g.data())
    if (!std::isfinite(x)) throw_invalid("zonotope_volume: non-finite generator entry");
  if (N < n) return 0.0;
  const double sum = sum_over_subsets(
      N, n,
      [&](std::span<const std::size_t> idx) {
        std::array<const double*, kMaxZonotopeDim> cols{};
        for (std::size_t i = 0; i < n; ++i) cols[i] = g.column(idx[i]).data();
        return abs_det_columns(std::span<const double* const>(cols.data(), n), n);
      },
      threads, "zonotope_volume");
  return std::ldexp(sum, static_cast<int>(n));
}

double mixed_volume_segments(std::span<const Vector> segments) {
  const std::size_t n = segments.size();
  if (n == 0) throw_invalid("mixed_volume_segments: need at least one segment");
  const ColumnMatrix m = ColumnMatrix::from_columns(segments);
  if (m.dim() != n) throw_invalid("mixed_volume_segments: need n segments in R^n");
  return std::ldexp(std::abs(det(m)), static_cast<int>(n)) / std::tgamma(static_cast<double>(n) + 1.0);
}

double hull_volume_symmetric(std::span<const Vector> points) {
  if (points.empty()) return 0.0;
  const std::size_t n = points.front().size();
  if (n == 0 || n > 3)
    throw Error(ErrorCode::ResourceLimit, "hull_volume_symmetric: only dimensions 1..3 are supported");
  double scale = 0.0;
  for (const auto& p : points) {
    if (p.size() != n) throw_invalid("hull_volume_symmetric: points differ in dimension");
    for (double x : p) scale = std::max(scale, std::abs(x));
  }
  if (scale == 0.0) return 0.0;
  const double tol = 1e-10 * scale;
  if (affine_rank(points, tol) < n) return 0.0;
  switch (n) {
    case 1: {
      auto [lo, hi] = std::minmax_element(points.begin(), points.end(),
                                          [](const Vector& a, const Vector& b) { return a[0] < b[0]; });
      return (*hi)[0] - (*lo)[0];
    }
    case 2:
      return hull_volume_2d(points, tol);
    default:
      return hull_volume_3d(points, tol);
  }
}

double zonotope_volume_by_hull(std::span<const Vector> generators) {
  if (generators.empty()) return 0.0;
  const std::size_t n = generators.front().size();
  const std::size_t N = generators.size();
  if (N > 12) throw Error(ErrorCode::ResourceLimit, "zonotope_volume_by_hull: more than 12 generators");
  std::vector<Vector> vertices;
  vertices.reserve(std::size_t{1} << N);
  for (std::size_t mask = 0; mask < (std::size_t{1} << N); ++mask) {
    Vector v(n, 0.0);
    for (std::size_t i = 0; i < N; ++i) {
      const double sgn = (mask >> i) & 1 ? 1.0 : -1.0;
      for (std::size_t r = 0; r < n; ++r) v[r] += sgn * generators[i][r];
    }
    vertices.push_back(std::move(v));
  }
  return hull_volume_symmetric(vertices);
}

double minkowski_oracle(std::span<const Vector> segments) {
  const std::size_t n = segments.size();
  if (n == 0) throw_invalid("minkowski_oracle: need at least one segment");
  if (n > 3) throw Error(ErrorCode::ResourceLimit, "minkowski_oracle: limited to n <= 3");
  for (const auto& s : segments)
    if (s.size() != n) throw_invalid("minkowski_oracle: need n segments in R^n");
  double total = 0.0;
  std::vector<std::size_t> idx;
  std::vector<Vector> sub;
  for (std::size_t j = 1; j <= n; ++j) {
    const double sign = (n + j) % 2 == 0 ? 1.0 : -1.0;
    idx.resize(j);
    unrank_subset(0, n, idx);
    do {
      sub.clear();
      for (std::size_t i : idx) sub.push_back(segments[i]);
      total += sign * zonotope_volume_by_hull(sub);
    } while (next_subset(idx, n));
  }
  return total / std::tgamma(static_cast<double>(n) + 1.0);
}

double cube_projection_volume(const GrassmannSample& e, unsigned threads) {
  return zonotope_volume(Zonotope(e.basis.as_matrix()), threads);
}

SplittingMoments SplittingMoments::compute(std::size_t n, std::size_t N) {
  SplittingMoments m;
  m.n = n;
  m.N = N;
  m.xn_mean = zonoclt::xn_mean(n, N);
  m.yn_mean = zonoclt::yn_mean(n, N);
  m.yn_second_moment = zonoclt::yn_second_moment(n, N);
  m.yn_var = m.yn_second_moment - m.yn_mean * m.yn_mean;
  return m;
}

SplittingTriple sample_splitting_triple(std::size_t n, std::size_t N, SeededStream& s, unsigned threads) {
  if (n == 0 || n > N)
    throw_invalid("sample_splitting_triple: need 1 <= n <= N, got n=" + std::to_string(n) + " N=" + std::to_string(N));
  return sample_splitting_triple(SplittingMoments::compute(n, N), s, threads);
}

SplittingTriple sample_splitting_triple(const SplittingMoments& m, SeededStream& s, unsigned threads) {
  const std::size_t n = m.n;
  const std::size_t N = m.N;
  if (n == 0 || n > N) throw_invalid("sample_splitting_triple: need 1 <= n <= N");
  check_subset_budget(N, n, "sample_splitting_triple");
  SplittingTriple t;
  for (int attempt = 0;; ++attempt) {
    const ColumnMatrix g = sample_gaussian_matrix(n, N, s);
    try {
      const GrassmannSample e{orthonormalize_rows(g)};
      t.y_n = gram_det_sqrt(g);
      t.x_n = zonotope_volume(Zonotope(g), threads);
      t.z_n = cube_projection_volume(e, threads);
      break;
    } catch (const Error& err) {
      if (err.code() != ErrorCode::RankDeficient || attempt >= 1) throw;
      ++t.resamples;
    }
  }
  const double Nd = static_cast<double>(N);
  const double nd = static_cast<double>(n);
  const double y = t.y_n;
  t.alpha = std::pow(Nd, nd / 2.0) / y;
  t.beta = std::pow(Nd, nd / 2.0) * m.xn_mean / (y * (y + m.yn_mean) * m.yn_mean);
  t.delta = t.beta * m.yn_var / std::pow(Nd, nd - 0.5);
  return t;
}

double decomposition_residual(const SplittingTriple& t, const SplittingMoments& m, double zn_mean_estimate) {
  const double Nd = static_cast<double>(m.N);
  const double nd = static_cast<double>(m.n);
  const double lhs = (t.z_n - zn_mean_estimate) / std::pow(Nd, (nd - 1.0) / 2.0);
  const double scale = std::pow(Nd, nd - 0.5);
  const double rhs = t.alpha * (t.x_n - m.xn_mean) / scale -
                     t.beta * (t.y_n * t.y_n - m.yn_second_moment) / scale - t.delta;
  return lhs - rhs;
}

double decomposition_residual(const SplittingTriple& t, const SplittingMoments& m) {
  return decomposition_residual(t, m, m.zn_mean());
}

}  // namespace zonoclt
