#include "pizza/geometry.hpp"

#include <algorithm>
#include <cmath>

namespace pizza {

double Rng::normal() {
  if (have_spare_) {
    have_spare_ = false;
    return spare_;
  }
  // Box-Muller; u1 in (0,1] so the log is finite.
  double u1 = 1.0 - uniform();
  double u2 = uniform();
  double r = std::sqrt(-2.0 * std::log(u1));
  double c = std::cos(6.283185307179586476925286766559 * u2);
  double s = std::sin(6.283185307179586476925286766559 * u2);
  spare_ = r * s;
  have_spare_ = true;
  return r * c;
}

double inner(const Vec& u, const Vec& v) {
  if (u.size() != v.size())
    throw std::invalid_argument("inner: dimension mismatch");
  double s = 0.0;
  for (std::size_t i = 0; i < u.size(); ++i) s += u[i] * v[i];
  return s;
}

double norm(const Vec& v) { return std::sqrt(inner(v, v)); }

Vec add(const Vec& u, const Vec& v) {
  Vec r = u;
  for (std::size_t i = 0; i < r.size(); ++i) r[i] += v[i];
  return r;
}

Vec sub(const Vec& u, const Vec& v) {
  Vec r = u;
  for (std::size_t i = 0; i < r.size(); ++i) r[i] -= v[i];
  return r;
}

Vec scale(const Vec& v, double s) {
  Vec r = v;
  for (auto& x : r) x *= s;
  return r;
}

void axpy(Vec& u, double s, const Vec& v) {
  for (std::size_t i = 0; i < u.size(); ++i) u[i] += s * v[i];
}

Vec normalize(const Vec& v) {
  double n = norm(v);
  if (n <= 1e-12) throw std::invalid_argument("normalize: zero vector");
  return scale(v, 1.0 / n);
}

Vec mat_vec(const Mat& m, const Vec& v) {
  Vec r(m.size(), 0.0);
  for (std::size_t i = 0; i < m.size(); ++i) r[i] = inner(m[i], v);
  return r;
}

Mat mat_mul(const Mat& a, const Mat& b) {
  std::size_t n = a.size(), k = b.size(), m = b.empty() ? 0 : b[0].size();
  Mat r(n, Vec(m, 0.0));
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t l = 0; l < k; ++l) {
      double s = a[i][l];
      if (s == 0.0) continue;
      for (std::size_t j = 0; j < m; ++j) r[i][j] += s * b[l][j];
    }
  return r;
}

Mat transpose(const Mat& m) {
  if (m.empty()) return {};
  Mat r(m[0].size(), Vec(m.size()));
  for (std::size_t i = 0; i < m.size(); ++i)
    for (std::size_t j = 0; j < m[i].size(); ++j) r[j][i] = m[i][j];
  return r;
}

Mat identity(int n) {
  Mat r(n, Vec(n, 0.0));
  for (int i = 0; i < n; ++i) r[i][i] = 1.0;
  return r;
}

Vec solve_linear(Mat a, Vec b) {
  const std::size_t n = a.size();
  for (std::size_t col = 0; col < n; ++col) {
    std::size_t piv = col;
    for (std::size_t r = col + 1; r < n; ++r)
      if (std::fabs(a[r][col]) > std::fabs(a[piv][col])) piv = r;
    if (std::fabs(a[piv][col]) < 1e-14)
      throw std::runtime_error("solve_linear: singular matrix");
    std::swap(a[piv], a[col]);
    std::swap(b[piv], b[col]);
    for (std::size_t r = col + 1; r < n; ++r) {
      double f = a[r][col] / a[col][col];
      if (f == 0.0) continue;
      for (std::size_t c = col; c < n; ++c) a[r][c] -= f * a[col][c];
      b[r] -= f * b[col];
    }
  }
  Vec x(n, 0.0);
  for (std::size_t i = n; i-- > 0;) {
    double s = b[i];
    for (std::size_t j = i + 1; j < n; ++j) s -= a[i][j] * x[j];
    x[i] = s / a[i][i];
  }
  return x;
}

Mat cholesky(const Mat& m) {
  const std::size_t n = m.size();
  Mat l(n, Vec(n, 0.0));
  for (std::size_t i = 0; i < n; ++i) {
    for (std::size_t j = 0; j <= i; ++j) {
      double s = m[i][j];
      for (std::size_t k = 0; k < j; ++k) s -= l[i][k] * l[j][k];
      if (i == j) {
        if (s <= 0.0)
          throw std::invalid_argument("cholesky: matrix not positive definite");
        l[i][i] = std::sqrt(s);
      } else {
        l[i][j] = s / l[j][j];
      }
    }
  }
  return l;
}

double tree_sum(const double* data, std::size_t n) {
  if (n == 0) return 0.0;
  if (n == 1) return data[0];
  std::size_t h = n / 2;
  return tree_sum(data, h) + tree_sum(data + h, n - h);
}

double gamma_half(int m) {
  if (m < 1) throw std::invalid_argument("gamma_half: argument must be >= 1");
  if (m == 1) return std::sqrt(3.14159265358979323846264338328);
  if (m == 2) return 1.0;
  return (0.5 * (m - 2)) * gamma_half(m - 2);
}

double ball_volume(int n, double r) {
  if (n == 0) return 1.0;
  return std::pow(3.14159265358979323846264338328, 0.5 * n) * std::pow(r, n) /
         gamma_half(n + 2);
}

double sphere_area(int n, double r) {
  return 2.0 * std::pow(3.14159265358979323846264338328, 0.5 * n) *
         std::pow(r, n - 1) / gamma_half(n);
}

Vec generic_direction(int n) {
  Vec g(n);
  double w = 1.0;
  for (int i = 0; i < n; ++i, w *= 0.1) g[i] = w;
  return g;
}

namespace {

// Two-pass modified Gram-Schmidt: returns the residual of v against the
// accepted vectors, or an empty vector when v is numerically dependent.
Vec mgs_residual(const std::vector<Vec>& basis, Vec v, double pivot_tol) {
  for (int pass = 0; pass < 2; ++pass)
    for (const Vec& q : basis) axpy(v, -inner(q, v), q);
  double n = norm(v);
  if (n <= pivot_tol) return {};
  return scale(v, 1.0 / n);
}

}  // namespace

OrthonormalBasis subspace_basis(const std::vector<Vec>& normals, int dim) {
  std::vector<Vec> q;  // orthonormalized normals
  for (const Vec& v : normals) {
    if (static_cast<int>(v.size()) != dim)
      throw std::invalid_argument("subspace_basis: dimension mismatch");
    Vec r = mgs_residual(q, v, kTolOrtho);
    if (r.empty())
      throw std::invalid_argument("subspace_basis: dependent normals");
    q.push_back(std::move(r));
  }
  OrthonormalBasis out;
  for (int i = 0; i < dim && static_cast<int>(out.vectors.size()) <
                                 dim - static_cast<int>(normals.size());
       ++i) {
    Vec e(dim, 0.0);
    e[i] = 1.0;
    std::vector<Vec> all = q;
    all.insert(all.end(), out.vectors.begin(), out.vectors.end());
    Vec r = mgs_residual(all, e, 1e-8);
    if (!r.empty()) out.vectors.push_back(std::move(r));
  }
  if (static_cast<int>(out.vectors.size()) !=
      dim - static_cast<int>(normals.size()))
    throw std::runtime_error("subspace_basis: failed to complete basis");
  return out;
}

Vec basis_coords(const OrthonormalBasis& b, const Vec& x) {
  Vec y(b.vectors.size());
  for (std::size_t i = 0; i < b.vectors.size(); ++i) y[i] = inner(b.vectors[i], x);
  return y;
}

Vec basis_embed(const OrthonormalBasis& b, const Vec& y) {
  if (b.vectors.empty()) return {};
  Vec x(b.vectors[0].size(), 0.0);
  for (std::size_t i = 0; i < b.vectors.size(); ++i) axpy(x, y[i], b.vectors[i]);
  return x;
}

QuadForm QuadForm::from_matrix(Mat m) {
  const std::size_t n = m.size();
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = 0; j < n; ++j)
      if (std::fabs(m[i][j] - m[j][i]) > 1e-12)
        throw std::invalid_argument("QuadForm: matrix not symmetric");
  QuadForm q;
  q.chol = cholesky(m);
  q.matrix = std::move(m);
  return q;
}

double QuadForm::operator()(const Vec& x) const {
  return inner(x, mat_vec(matrix, x));
}

Vec sample_box(const Vec& lo, const Vec& hi, Rng& rng) {
  Vec x(lo.size());
  for (std::size_t i = 0; i < x.size(); ++i) x[i] = rng.uniform(lo[i], hi[i]);
  return x;
}

Vec sample_sphere(const Vec& a, double r, Rng& rng) {
  if (r < 0.0) throw std::invalid_argument("sample_sphere: negative radius");
  Vec g(a.size());
  for (auto& x : g) x = rng.normal();
  Vec u = normalize(g);
  Vec x = a;
  axpy(x, r, u);
  return x;
}

Vec sample_ball(const Vec& a, double r, Rng& rng) {
  if (r < 0.0) throw std::invalid_argument("sample_ball: negative radius");
  const int n = static_cast<int>(a.size());
  Vec g(n);
  for (auto& x : g) x = rng.normal();
  Vec u = normalize(g);
  double rad = r * std::pow(rng.uniform(), 1.0 / n);
  Vec x = a;
  axpy(x, rad, u);
  return x;
}

Vec sample_ellipsoid(const QuadForm& q, const Vec& a, double r, Rng& rng) {
  // q(x - a) <= r^2 iff |L^T (x - a)| <= r with q = L L^T, so the ellipsoid
  // is the image of the r-ball under L^{-T}.
  Vec z = sample_ball(Vec(a.size(), 0.0), r, rng);
  const Mat& l = q.chol;
  const std::size_t n = z.size();
  Vec y(n, 0.0);  // solve L^T y = z (back substitution)
  for (std::size_t i = n; i-- > 0;) {
    double s = z[i];
    for (std::size_t j = i + 1; j < n; ++j) s -= l[j][i] * y[j];
    y[i] = s / l[i][i];
  }
  return add(a, y);
}

double Region::box_volume() const {
  double v = 1.0;
  for (std::size_t i = 0; i < box_lo.size(); ++i) v *= box_hi[i] - box_lo[i];
  return v;
}

Region region_ball(const Vec& a, double r) {
  if (r < 0.0) throw std::invalid_argument("region_ball: negative radius");
  Region k;
  k.dim = static_cast<int>(a.size());
  k.member = [a, r](const Vec& x) { return norm(sub(x, a)) <= r; };
  k.box_lo = a;
  k.box_hi = a;
  for (auto& v : k.box_lo) v -= r;
  for (auto& v : k.box_hi) v += r;
  k.volume_hint = ball_volume(k.dim, r);
  k.symmetry = SymmetryTag::Central;
  k.sampler = [a, r](Rng& rng) { return sample_ball(a, r, rng); };
  return k;
}

Region region_ellipsoid(const QuadForm& q, const Vec& a, double r) {
  if (r < 0.0) throw std::invalid_argument("region_ellipsoid: negative radius");
  Region k;
  k.dim = q.dim();
  QuadForm qc = q;
  k.member = [qc, a, r](const Vec& x) { return qc(sub(x, a)) <= r * r; };
  // Half-width along axis i is r * sqrt((M^{-1})_{ii}).
  Mat inv(k.dim, Vec(k.dim));
  for (int i = 0; i < k.dim; ++i) {
    Vec e(k.dim, 0.0);
    e[i] = 1.0;
    Vec col = solve_linear(q.matrix, e);
    for (int j = 0; j < k.dim; ++j) inv[j][i] = col[j];
  }
  k.box_lo = a;
  k.box_hi = a;
  for (int i = 0; i < k.dim; ++i) {
    double h = r * std::sqrt(std::max(0.0, inv[i][i]));
    k.box_lo[i] -= h;
    k.box_hi[i] += h;
  }
  double det = 1.0;
  for (int i = 0; i < k.dim; ++i) det *= q.chol[i][i] * q.chol[i][i];
  k.volume_hint = ball_volume(k.dim, r) / std::sqrt(det);
  k.symmetry = SymmetryTag::Central;
  k.sampler = [qc, a, r](Rng& rng) { return sample_ellipsoid(qc, a, r, rng); };
  return k;
}

Region region_box(const Vec& lo, const Vec& hi) {
  for (std::size_t i = 0; i < lo.size(); ++i)
    if (!(lo[i] < hi[i]))
      throw std::invalid_argument("region_box: lo must be below hi");
  Region k;
  k.dim = static_cast<int>(lo.size());
  k.member = [lo, hi](const Vec& x) {
    for (std::size_t i = 0; i < x.size(); ++i)
      if (x[i] < lo[i] || x[i] > hi[i]) return false;
    return true;
  };
  k.box_lo = lo;
  k.box_hi = hi;
  double v = 1.0;
  for (std::size_t i = 0; i < lo.size(); ++i) v *= hi[i] - lo[i];
  k.volume_hint = v;
  k.sampler = [lo, hi](Rng& rng) { return sample_box(lo, hi, rng); };
  return k;
}

Region region_shifted(const Region& k, const Vec& a) {
  Region s;
  s.dim = k.dim;
  auto base_member = k.member;
  s.member = [base_member, a](const Vec& x) { return base_member(sub(x, a)); };
  s.box_lo = add(k.box_lo, a);
  s.box_hi = add(k.box_hi, a);
  s.volume_hint = k.volume_hint;
  s.symmetry = SymmetryTag::None;
  if (k.has_sampler()) {
    auto base_sampler = k.sampler;
    s.sampler = [base_sampler, a](Rng& rng) { return add(base_sampler(rng), a); };
  }
  return s;
}

}  // namespace pizza
