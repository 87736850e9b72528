#pragma once

#include <cmath>
#include <cstdint>
#include <functional>
#include <optional>
#include <stdexcept>
#include <string>
#include <vector>

#include "pizza/rng.hpp"

namespace pizza {

using Vec = std::vector<double>;
using Mat = std::vector<Vec>;  // row-major, rectangular

// Centralized tolerances. Double precision with headroom for O(n*|E|)
// accumulation at desk dimensions (n <= 8).
inline constexpr double kTolUnit = 1e-12;        // unit-norm check
inline constexpr double kTolOrtho = 1e-10;       // orthogonality / pivot
inline constexpr double kTolHyperplane = 1e-9;   // point-on-hyperplane band

double inner(const Vec& u, const Vec& v);
double norm(const Vec& v);
Vec add(const Vec& u, const Vec& v);
Vec sub(const Vec& u, const Vec& v);
Vec scale(const Vec& v, double s);
// u += s*v
void axpy(Vec& u, double s, const Vec& v);

// v / |v|; throws on |v| <= 1e-12.
Vec normalize(const Vec& v);

Vec mat_vec(const Mat& m, const Vec& v);
Mat mat_mul(const Mat& a, const Mat& b);
Mat transpose(const Mat& m);
Mat identity(int n);

// Solves a*x = b by Gaussian elimination with partial pivoting.
Vec solve_linear(Mat a, Vec b);

// Lower-triangular L with m = L*L^T; throws if m is not positive definite.
Mat cholesky(const Mat& m);

// Fixed-order pairwise tree sum; result independent of threading.
double tree_sum(const double* data, std::size_t n);
inline double tree_sum(const std::vector<double>& v) { return tree_sum(v.data(), v.size()); }

// Gamma(m/2) for integer m >= 1, by the half-integer recurrence (exact).
double gamma_half(int m);
// Volume of the n-ball of radius r and surface area of its boundary sphere.
double ball_volume(int n, double r);
double sphere_area(int n, double r);

// Deterministic generic direction (1, 1e-1, 1e-2, ...): used for
// reproducible positive systems and tie-breaks.
Vec generic_direction(int n);

// An orthonormal basis of a subspace, stored as ambient-coordinate vectors.
struct OrthonormalBasis {
  std::vector<Vec> vectors;
  int dim() const { return static_cast<int>(vectors.size()); }
};

// Orthonormal basis of the orthogonal complement of span(normals).
// Deterministic given input order; throws if the normals are dependent
// (Gram-Schmidt pivot below kTolOrtho).
OrthonormalBasis subspace_basis(const std::vector<Vec>& normals, int dim);

// Coordinates of x in the basis / embedding of coordinates back.
Vec basis_coords(const OrthonormalBasis& b, const Vec& x);
Vec basis_embed(const OrthonormalBasis& b, const Vec& y);

// Positive definite quadratic form q(x) = x^T m x.
struct QuadForm {
  Mat matrix;
  Mat chol;  // lower triangular, matrix = chol * chol^T

  static QuadForm from_matrix(Mat m);
  int dim() const { return static_cast<int>(matrix.size()); }
  double operator()(const Vec& x) const;
};

Vec sample_box(const Vec& lo, const Vec& hi, Rng& rng);
Vec sample_sphere(const Vec& a, double r, Rng& rng);
// Polar method (gaussian direction, radius ~ U^{1/n}); cost is
// dimension-independent, no rejection.
Vec sample_ball(const Vec& a, double r, Rng& rng);
Vec sample_ellipsoid(const QuadForm& q, const Vec& a, double r, Rng& rng);

enum class SymmetryTag { None, Central, CoxeterStable };

// A measurable body: membership predicate, bounding box, optional exact
// volume and direct sampler. Immutable after construction.
struct Region {
  int dim = 0;
  std::function<bool(const Vec&)> member;
  Vec box_lo, box_hi;
  std::optional<double> volume_hint;
  SymmetryTag symmetry = SymmetryTag::None;
  std::string symmetry_type;  // Coxeter spec string when CoxeterStable
  std::function<Vec(Rng&)> sampler;  // may be empty

  bool has_sampler() const { return static_cast<bool>(sampler); }
  double box_volume() const;
};

Region region_ball(const Vec& a, double r);
Region region_ellipsoid(const QuadForm& q, const Vec& a, double r);
Region region_box(const Vec& lo, const Vec& hi);
Region region_shifted(const Region& k, const Vec& a);

}  // namespace pizza
