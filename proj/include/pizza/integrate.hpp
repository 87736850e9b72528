#pragma once

#include <cstdint>
#include <vector>

#include "pizza/arrangement.hpp"
#include "pizza/restriction.hpp"

namespace pizza {

// A stochastic result: value with standard error. Estimates are split over
// 64 fixed substreams derived from (seed, stream index), so the value is
// bit-identical for any worker count; stderr comes from the substream means.
struct MCEstimate {
  double value = 0.0;
  double stderr_ = 0.0;
  long long n_samples = 0;
  std::uint64_t seed = 0;
  int workers = 1;
};

struct QuadratureConfig {
  int base_order = 16;
  int max_refinements = 6;
  double rel_tol = 1e-8;
};

// Derives an independent engine seed from (seed, tag).
std::uint64_t mix_seed(std::uint64_t seed, std::uint64_t tag);

struct GaussLegendreRule {
  std::vector<double> nodes;    // on [0, 1]
  std::vector<double> weights;
};
GaussLegendreRule gauss_legendre_01(int order);

// Monte Carlo alternating-volume sum over the chambers: with a direct
// sampler, volume(K) * mean chamber sign; otherwise bounding-box rejection.
// Wall hits are resampled. N is rounded up to a multiple of 64 substreams.
MCEstimate pizza_mc(const Arrangement& a, const Region& k, long long n,
                    std::uint64_t seed, int workers);
// Serial reference: identical batch kernel run on one thread; results are
// bit-identical to pizza_mc.
MCEstimate pizza_mc_serial(const Arrangement& a, const Region& k, long long n,
                           std::uint64_t seed);

// Exact 2-D engine for discs containing the origin: the lines cut [0, 2*pi)
// into sectors of constant chamber sign; each sector contributes
// sign * Int rho(theta)^2/2 dtheta with rho the polar boundary of the disc
// B(a, R) about the origin, integrated adaptively to rel_tol.
double pizza_exact_2d(const Arrangement& a, const Vec& center, double radius,
                      const QuadratureConfig& cfg = {});

// Alternating sum of (n-1)-volumes of the sphere S(a, R) cut by the
// chambers: surface_area * mean chamber sign over sphere samples.
MCEstimate surface_alt_sum_mc(const Arrangement& a, const Vec& center,
                              double radius, long long n, std::uint64_t seed,
                              int workers);
MCEstimate surface_alt_sum_mc_serial(const Arrangement& a, const Vec& center,
                                     double radius, long long n,
                                     std::uint64_t seed);

// Integral of (R^2 - sum_i t_i^2 c_i)^p over 0 <= t_r <= ... <= t_1 <= 1,
// by tensor Gauss-Legendre under the substitution t_i = t_{i-1} s_i, with
// order doubling until the relative change is below rel_tol. The radicand is
// clamped at -1e-12 to absorb roundoff at the boundary |a| = R.
double simplex_integral(const std::vector<double>& c, double p, double radius,
                        const QuadratureConfig& cfg = {});

struct ReductionResult {
  double value = 0.0;
  double stderr_ = 0.0;
};

// Right-hand side of the translation identity:
//   P(H, K+a) - P(H, K) = 2 sum_e z0(e) <a,e> Int_0^1 P(H_e, (K+ta)^H_e) dt,
// with each inner alternating volume estimated by pizza_mc on the even
// restricted arrangement (n_inner samples per quadrature node) and the outer
// integral by a fixed Gauss-Legendre rule of base_order nodes.
ReductionResult reduction_rhs(const Arrangement& a, const Region& k,
                              const Vec& shift, long long n_inner,
                              const QuadratureConfig& cfg, std::uint64_t seed,
                              int workers = 1);

// Slice region {y in child coords : embed(y) - t*shift in K}; bounding box
// transported from K by interval arithmetic.
Region slice_region(const Region& k, const RestrictionStep& step, const Vec& shift,
                    double t);

}  // namespace pizza
