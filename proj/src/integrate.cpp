#include "pizza/integrate.hpp"

#include <algorithm>
#include <cmath>
#include <exception>
#include <stdexcept>

#ifdef _OPENMP
#include <omp.h>
#endif

namespace pizza {

namespace {

constexpr int kBatches = 64;
constexpr double kPi = 3.14159265358979323846264338328;

struct BatchStats {
  double sum = 0.0;
  long long accepted = 0;
  long long draws = 0;
};

// One substream of the alternating-volume estimator. Members on a wall are
// redrawn; box draws outside K contribute zero.
BatchStats pizza_batch(const Arrangement& a, const Region& k, long long n,
                       std::uint64_t seed, std::uint64_t stream) {
  Rng rng(seed, stream);
  BatchStats st;
  const bool direct = k.has_sampler();
  for (long long i = 0; i < n; ++i) {
    double contrib = 0.0;
    for (int attempt = 0;; ++attempt) {
      if (attempt >= 1000)
        throw std::runtime_error("pizza_mc: persistent wall hits");
      ++st.draws;
      Vec x = direct ? k.sampler(rng) : sample_box(k.box_lo, k.box_hi, rng);
      if (!direct && !k.member(x)) break;
      int s = chamber_sign_or_zero(a, x);
      if (s == 0) continue;
      contrib = s;
      ++st.accepted;
      break;
    }
    st.sum += contrib;
  }
  return st;
}

BatchStats sphere_batch(const Arrangement& a, const Vec& center, double radius,
                        long long n, std::uint64_t seed, std::uint64_t stream) {
  Rng rng(seed, stream);
  BatchStats st;
  for (long long i = 0; i < n; ++i) {
    double contrib = 0.0;
    for (int attempt = 0;; ++attempt) {
      if (attempt >= 1000)
        throw std::runtime_error("surface_alt_sum_mc: persistent wall hits");
      ++st.draws;
      Vec x = sample_sphere(center, radius, rng);
      int s = chamber_sign_or_zero(a, x);
      if (s == 0) continue;
      contrib = s;
      ++st.accepted;
      break;
    }
    st.sum += contrib;
  }
  return st;
}

template <typename BatchFn>
MCEstimate run_batched(BatchFn&& batch, double scale, long long n,
                       std::uint64_t seed, int workers, bool parallel,
                       long long min_draws_for_error) {
  MCEstimate est;
  est.seed = seed;
  est.workers = workers;
  const long long per_batch = (n + kBatches - 1) / kBatches;
  est.n_samples = per_batch * kBatches;

  std::vector<BatchStats> stats(kBatches);
  std::exception_ptr error;
  if (parallel) {
#ifdef _OPENMP
#pragma omp parallel for schedule(static) num_threads(workers)
#endif
    for (int b = 0; b < kBatches; ++b) {
      try {
        stats[b] = batch(per_batch, b);
      } catch (...) {
#ifdef _OPENMP
#pragma omp critical
#endif
        if (!error) error = std::current_exception();
      }
    }
  } else {
    for (int b = 0; b < kBatches; ++b) stats[b] = batch(per_batch, b);
  }
  if (error) std::rethrow_exception(error);

  long long accepted = 0, draws = 0;
  std::vector<double> sums(kBatches), means(kBatches);
  for (int b = 0; b < kBatches; ++b) {
    sums[b] = stats[b].sum;
    means[b] = stats[b].sum / per_batch;
    accepted += stats[b].accepted;
    draws += stats[b].draws;
  }
  if (accepted == 0 && draws >= min_draws_for_error)
    throw std::runtime_error("pizza_mc: zero acceptance");
  double mean = tree_sum(sums) / static_cast<double>(est.n_samples);
  est.value = scale * mean;
  double ss = 0.0;
  for (int b = 0; b < kBatches; ++b) {
    double d = means[b] - mean;
    ss += d * d;
  }
  est.stderr_ = scale * std::sqrt(ss / (kBatches - 1)) / std::sqrt(kBatches);
  return est;
}

MCEstimate pizza_mc_impl(const Arrangement& a, const Region& k, long long n,
                         std::uint64_t seed, int workers, bool parallel) {
  if (a.dim != k.dim)
    throw std::invalid_argument("pizza_mc: dimension mismatch");
  if (a.dim == 0) {
    // The point arrangement: one chamber of sign +1 and counting measure.
    MCEstimate est;
    est.value = k.member(Vec{}) ? 1.0 : 0.0;
    est.n_samples = 0;
    est.seed = seed;
    est.workers = workers;
    return est;
  }
  for (int i = 0; i < k.dim; ++i)
    if (!std::isfinite(k.box_lo[i]) || !std::isfinite(k.box_hi[i]))
      throw std::invalid_argument("pizza_mc: unbounded region");
  double scale = k.has_sampler() ? k.volume_hint.value() : k.box_volume();
  long long min_draws = 1000000LL * a.dim;
  auto batch = [&](long long per_batch, int b) {
    return pizza_batch(a, k, per_batch, seed, static_cast<std::uint64_t>(b));
  };
  return run_batched(batch, scale, n, seed, workers, parallel,
                     k.has_sampler() ? (1LL << 62) : min_draws);
}

}  // namespace

std::uint64_t mix_seed(std::uint64_t seed, std::uint64_t tag) {
  std::uint64_t s = seed ^ (tag * 0x9e3779b97f4a7c15ULL + 0x632be59bd9b4e019ULL);
  return splitmix64(s);
}

GaussLegendreRule gauss_legendre_01(int order) {
  // Newton iteration on the Legendre polynomial from the Chebyshev guess.
  GaussLegendreRule rule;
  rule.nodes.resize(order);
  rule.weights.resize(order);
  for (int i = 0; i < order; ++i) {
    double x = std::cos(kPi * (i + 0.75) / (order + 0.5));
    double dp = 0.0;
    for (int it = 0; it < 100; ++it) {
      double p0 = 1.0, p1 = x;
      for (int k = 2; k <= order; ++k) {
        double p2 = ((2 * k - 1) * x * p1 - (k - 1) * p0) / k;
        p0 = p1;
        p1 = p2;
      }
      dp = order * (x * p1 - p0) / (x * x - 1.0);
      double dx = p1 / dp;
      x -= dx;
      if (std::fabs(dx) < 1e-15) break;
    }
    rule.nodes[order - 1 - i] = 0.5 * (x + 1.0);
    rule.weights[order - 1 - i] = 1.0 / ((1.0 - x * x) * dp * dp);
  }
  return rule;
}

MCEstimate pizza_mc(const Arrangement& a, const Region& k, long long n,
                    std::uint64_t seed, int workers) {
  return pizza_mc_impl(a, k, n, seed, workers, true);
}

MCEstimate pizza_mc_serial(const Arrangement& a, const Region& k, long long n,
                           std::uint64_t seed) {
  return pizza_mc_impl(a, k, n, seed, 1, false);
}

namespace {

double sector_rho(const Vec& a, double r2_minus_a2, double theta) {
  double d = a[0] * std::cos(theta) + a[1] * std::sin(theta);
  return d + std::sqrt(std::max(0.0, r2_minus_a2 + d * d));
}

double gl_on(const GaussLegendreRule& rule, double lo, double hi,
             const Vec& a, double r2_minus_a2) {
  double s = 0.0;
  for (std::size_t i = 0; i < rule.nodes.size(); ++i) {
    double t = lo + (hi - lo) * rule.nodes[i];
    double rho = sector_rho(a, r2_minus_a2, t);
    s += rule.weights[i] * 0.5 * rho * rho;
  }
  return s * (hi - lo);
}

double adaptive_sector(const GaussLegendreRule& rule, double lo, double hi,
                       const Vec& a, double r2_minus_a2, double rel_tol,
                       int depth) {
  double whole = gl_on(rule, lo, hi, a, r2_minus_a2);
  double mid = 0.5 * (lo + hi);
  double split =
      gl_on(rule, lo, mid, a, r2_minus_a2) + gl_on(rule, mid, hi, a, r2_minus_a2);
  if (depth <= 0 ||
      std::fabs(whole - split) <= rel_tol * std::max(std::fabs(split), 1e-12))
    return split;
  return adaptive_sector(rule, lo, mid, a, r2_minus_a2, rel_tol, depth - 1) +
         adaptive_sector(rule, mid, hi, a, r2_minus_a2, rel_tol, depth - 1);
}

}  // namespace

double pizza_exact_2d(const Arrangement& a, const Vec& center, double radius,
                      const QuadratureConfig& cfg) {
  if (a.dim != 2) throw std::invalid_argument("pizza_exact_2d: dim must be 2");
  double c2 = inner(center, center);
  if (radius * radius < c2 - 1e-12)
    throw std::invalid_argument("pizza_exact_2d: origin outside the disc");
  double r2ma2 = std::max(0.0, radius * radius - c2);
  if (a.size() == 0) return kPi * radius * radius;

  std::vector<double> rays;
  for (const Vec& e : a.normals) {
    double line = std::atan2(e[1], e[0]) + 0.5 * kPi;
    for (int half = 0; half < 2; ++half) {
      double t = std::fmod(line + half * kPi, 2.0 * kPi);
      if (t < 0) t += 2.0 * kPi;
      rays.push_back(t);
    }
  }
  std::sort(rays.begin(), rays.end());

  GaussLegendreRule rule = gauss_legendre_01(cfg.base_order);
  double total = 0.0;
  for (std::size_t i = 0; i < rays.size(); ++i) {
    double lo = rays[i];
    double hi = i + 1 < rays.size() ? rays[i + 1] : rays[0] + 2.0 * kPi;
    if (hi - lo < 1e-13) continue;
    double mid = 0.5 * (lo + hi);
    int sign = 0;
    for (int tries = 0; sign == 0 && tries < 16; ++tries) {
      double t = mid + tries * 1e-7 * (hi - lo);
      sign = chamber_sign_or_zero(a, {std::cos(t), std::sin(t)});
    }
    if (sign == 0)
      throw std::runtime_error("pizza_exact_2d: degenerate sector");
    total += sign * adaptive_sector(rule, lo, hi, center, r2ma2, cfg.rel_tol,
                                    cfg.max_refinements);
  }
  return total;
}

MCEstimate surface_alt_sum_mc(const Arrangement& a, const Vec& center,
                              double radius, long long n, std::uint64_t seed,
                              int workers) {
  if (radius <= 0.0)
    throw std::invalid_argument("surface_alt_sum_mc: radius must be positive");
  double scale = sphere_area(a.dim, radius);
  auto batch = [&](long long per_batch, int b) {
    return sphere_batch(a, center, radius, per_batch, seed,
                        static_cast<std::uint64_t>(b));
  };
  return run_batched(batch, scale, n, seed, workers, true, 1LL << 62);
}

MCEstimate surface_alt_sum_mc_serial(const Arrangement& a, const Vec& center,
                                     double radius, long long n,
                                     std::uint64_t seed) {
  if (radius <= 0.0)
    throw std::invalid_argument("surface_alt_sum_mc: radius must be positive");
  double scale = sphere_area(a.dim, radius);
  auto batch = [&](long long per_batch, int b) {
    return sphere_batch(a, center, radius, per_batch, seed,
                        static_cast<std::uint64_t>(b));
  };
  return run_batched(batch, scale, n, seed, 1, false, 1LL << 62);
}

double simplex_integral(const std::vector<double>& c, double p, double radius,
                        const QuadratureConfig& cfg) {
  const int r = static_cast<int>(c.size());
  double budget = radius * radius;
  for (double ci : c) {
    if (ci < 0.0) throw std::invalid_argument("simplex_integral: negative c");
    budget -= ci;
  }
  if (budget < -1e-9)
    throw std::invalid_argument("simplex_integral: negative radicand");
  if (r == 0) return std::pow(radius * radius, p);
  if (p == 0.0) {  // order-simplex volume, exact
    double fact = 1.0;
    for (int i = 2; i <= r; ++i) fact *= i;
    return 1.0 / fact;
  }

  auto evaluate = [&](int order) {
    GaussLegendreRule rule = gauss_legendre_01(order);
    // t_i = s_1 * ... * s_i; the Jacobian is prod_j s_j^(r-j).
    std::vector<int> idx(r, 0);
    std::vector<double> t(r);
    double total = 0.0;
    while (true) {
      double prod = 1.0, weight = 1.0;
      double radic = radius * radius;
      for (int i = 0; i < r; ++i) {
        double s = rule.nodes[idx[i]];
        prod *= s;
        t[i] = prod;
        weight *= rule.weights[idx[i]];
        int expo = r - 1 - i;
        for (int k = 0; k < expo; ++k) weight *= s;
        radic -= t[i] * t[i] * c[i];
      }
      if (radic < 0.0) radic = 0.0;  // boundary roundoff, |a| = R
      total += weight * std::pow(radic, p);
      int d = r - 1;
      while (d >= 0 && ++idx[d] == order) idx[d--] = 0;
      if (d < 0) break;
    }
    return total;
  };

  double prev = evaluate(cfg.base_order);
  int order = cfg.base_order;
  for (int ref = 0; ref < cfg.max_refinements; ++ref) {
    long long next = 2LL * order;
    if (std::pow(static_cast<double>(next), r) > 2e7) break;
    order = static_cast<int>(next);
    double val = evaluate(order);
    double delta = std::fabs(val - prev);
    prev = val;
    if (delta <= cfg.rel_tol * std::max(std::fabs(val), 1e-300)) break;
  }
  return prev;
}

Region slice_region(const Region& k, const RestrictionStep& step, const Vec& shift,
                    double t) {
  Region s;
  const auto& basis = step.child_basis;
  const int cdim = basis.dim();
  s.dim = cdim;
  auto member = k.member;
  Vec offset = scale(shift, t);
  int amb = static_cast<int>(step.normal.size());
  s.member = [member, basis, offset, amb](const Vec& y) {
    Vec x(amb, 0.0);
    for (int j = 0; j < basis.dim(); ++j) axpy(x, y[j], basis.vectors[j]);
    return member(sub(x, offset));
  };
  // Interval image of box(K) + t*shift under y_j = <b_j, x>.
  s.box_lo.assign(cdim, 0.0);
  s.box_hi.assign(cdim, 0.0);
  for (int j = 0; j < cdim; ++j) {
    double lo = 0.0, hi = 0.0;
    for (int i = 0; i < amb; ++i) {
      double bji = basis.vectors[j][i];
      double c_lo = k.box_lo[i] + offset[i], c_hi = k.box_hi[i] + offset[i];
      lo += std::min(bji * c_lo, bji * c_hi);
      hi += std::max(bji * c_lo, bji * c_hi);
    }
    s.box_lo[j] = lo;
    s.box_hi[j] = hi;
  }
  return s;
}

ReductionResult reduction_rhs(const Arrangement& a, const Region& k,
                              const Vec& shift, long long n_inner,
                              const QuadratureConfig& cfg, std::uint64_t seed,
                              int workers) {
  GaussLegendreRule rule = gauss_legendre_01(cfg.base_order);
  ReductionResult res;
  double var = 0.0;
  for (int e = 0; e < a.size(); ++e) {
    double ae = inner(shift, a.normals[e]);
    if (std::fabs(ae) <= 1e-12) continue;
    RestrictionStep step = even_restricted(a, e, a.witness);
    for (int q = 0; q < cfg.base_order; ++q) {
      Region slice = slice_region(k, step, shift, rule.nodes[q]);
      MCEstimate inner_est =
          pizza_mc(step.child, slice, n_inner,
                   mix_seed(seed, 1000003ULL * e + q), workers);
      double coeff = 2.0 * step.z0_sign * ae * rule.weights[q];
      res.value += coeff * inner_est.value;
      var += coeff * coeff * inner_est.stderr_ * inner_est.stderr_;
    }
  }
  res.stderr_ = std::sqrt(var);
  return res;
}

}  // namespace pizza
