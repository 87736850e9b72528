#include "pizza/formulas.hpp"

#include <algorithm>
#include <cmath>

namespace pizza {

namespace {

constexpr double kPi = 3.14159265358979323846264338328;

int lex_sign_entries(const std::vector<double>& entries) {
  for (double v : entries) {
    if (std::fabs(v) > 1e-10) {
      if (std::fabs(v) < 1e-8) return 0;
      return v > 0.0 ? 1 : -1;
    }
  }
  return 0;
}

double factorial(int n) {
  double f = 1.0;
  for (int i = 2; i <= n; ++i) f *= i;
  return f;
}

}  // namespace

double f_H(const Arrangement& a, const Vec& point, std::size_t class_cap) {
  if (!is_even_arrangement(a))
    throw std::invalid_argument("f_H: arrangement is not even");
  const int n = a.dim;
  double sum = 0.0;
  for_each_class(
      a, n,
      [&](const RestrictionSequence& seq) {
        double term = 1.0;
        for (const Vec& u : seq.lifted_normals) term *= inner(point, u);
        if (term != 0.0) term *= sequence_sign(seq);
        sum += term;
      },
      class_cap);
  return std::pow(2.0, n) / factorial(n) * sum;
}

int orthogonal_tuple_sign(const Arrangement& a, const std::vector<int>& tuple) {
  const int r = static_cast<int>(tuple.size());
  const int tdim = a.dim - r;
  std::vector<Vec> roots;
  for (int i : tuple) roots.push_back(a.normals[i]);

  auto sign_with = [&](const Vec* v) -> int {
    int negatives = 0;
    for (const Vec& f : a.normals) {
      std::vector<double> entries;
      if (v) entries.push_back(inner(f, *v));
      for (int i = r - 1; i >= 0; --i) entries.push_back(inner(f, roots[i]));
      int s = lex_sign_entries(entries);
      if (s == 0) return 0;
      if (s < 0) ++negatives;
    }
    return negatives % 2 ? -1 : 1;
  };

  if (tdim == 0) {
    int s = sign_with(nullptr);
    if (s == 0)
      throw std::runtime_error("orthogonal_tuple_sign: unresolved sign");
    return s;
  }
  OrthonormalBasis basis = subspace_basis(roots, a.dim);
  Vec pattern = generic_direction(tdim);
  int first = 0;
  for (int tries = 0; tries < 64; ++tries) {
    Vec v = basis_embed(basis, pattern);
    int s = sign_with(&v);
    if (s != 0) {
      if (first == 0)
        first = s;
      else if (first != s)
        throw std::runtime_error(
            "orthogonal_tuple_sign: terminal direction changed the sign");
      else
        return s;
    }
    std::rotate(pattern.begin(), pattern.end() - 1, pattern.end());
    pattern[0] = -pattern[0];
  }
  if (first != 0) return first;
  throw std::runtime_error("orthogonal_tuple_sign: unresolved sign");
}

double pizza_ball_coxeter(const CoxeterArrangement& ca, const Vec& a, double radius,
                          const QuadratureConfig& cfg, std::size_t cap) {
  const int n = ca.rank();
  if (norm(a) > radius + 1e-12)
    throw std::invalid_argument("pizza_ball_coxeter: center outside radius");
  if (ca.base.size() == 0) return ball_volume(n, radius);
  const int r = max_orthogonal_rank(ca, cap);
  auto tuples = orthogonal_sequences(ca, r, cap);
  // Slice of the ball on the terminal subspace is an (n-r)-ball, whence the
  // (n-r)-ball volume constant in front.
  double prefactor = std::pow(2.0, r) * std::pow(kPi, 0.5 * (n - r)) /
                     gamma_half(n - r + 2);
  double sum = 0.0;
  for (const auto& tuple : tuples) {
    double prod = 1.0;
    std::vector<double> c(tuple.size());
    for (std::size_t i = 0; i < tuple.size(); ++i) {
      double ae = inner(a, ca.root(tuple[i]));
      prod *= ae;
      c[i] = ae * ae;
    }
    if (prod == 0.0) continue;
    int sign = orthogonal_tuple_sign(ca.base, tuple);
    sum += sign * prod * simplex_integral(c, 0.5 * (n - r), radius, cfg);
  }
  return prefactor * sum;
}

FClassification classify_f(const CoxeterArrangement& ca) {
  FClassification out;
  int span = 0;
  {
    std::vector<Vec> basis;
    for (const Vec& v0 : ca.base.normals) {
      Vec v = v0;
      for (int pass = 0; pass < 2; ++pass)
        for (const Vec& q : basis) axpy(v, -inner(q, v), q);
      if (norm(v) > 1e-8) basis.push_back(normalize(v));
    }
    span = static_cast<int>(basis.size());
  }
  bool even = false;
  if (span == ca.rank()) {
    // -id in W is equivalent to evenness for Coxeter arrangements and stays
    // cheap at every rank.
    even = minus_id_in_group(ca);
  }
  if (!even) {
    out.kind = FClass::NotEven;
    return out;
  }
  if (ca.base.size() > ca.rank()) {
    out.kind = FClass::Zero;
  } else {
    out.kind = FClass::MonomialMultiple;
    for (int i = 0; i < ca.base.size(); ++i) out.monomial_roots.push_back(i);
  }
  return out;
}

namespace {

RadiusScan scan_radii(const CoxeterArrangement& ca, const Vec& a,
                      const std::vector<double>& radii, Engine engine,
                      long long samples, std::uint64_t seed, int workers,
                      const QuadratureConfig& cfg) {
  RadiusScan scan;
  scan.radii = radii;
  for (std::size_t i = 0; i < radii.size(); ++i) {
    double value = 0.0, err = 0.0;
    switch (engine) {
      case Engine::MC: {
        MCEstimate est = pizza_mc(ca.base, region_ball(a, radii[i]), samples,
                                  mix_seed(seed, i), workers);
        value = est.value;
        err = est.stderr_;
        break;
      }
      case Engine::Formula:
        value = pizza_ball_coxeter(ca, a, radii[i], cfg);
        break;
      case Engine::Exact2D:
        value = pizza_exact_2d(ca.base, a, radii[i], cfg);
        break;
    }
    scan.values.push_back(value);
    scan.stderrs.push_back(err);
  }
  return scan;
}

}  // namespace

RIndependenceReport r_independence_check(const CoxeterArrangement& ca,
                                         const std::vector<int>& subsystem,
                                         const Vec& a,
                                         const std::vector<double>& radii,
                                         Engine engine, long long samples,
                                         std::uint64_t seed, int workers,
                                         const QuadratureConfig& cfg) {
  if (radii.empty())
    throw std::invalid_argument("r_independence_check: no radii");
  double na = norm(a);
  for (double r : radii)
    if (r < na - 1e-12)
      throw std::invalid_argument("r_independence_check: radius below |a|");
  RIndependenceReport rep;
  rep.scan = scan_radii(ca, a, radii, engine, samples, seed, workers, cfg);
  for (std::size_t i = 0; i < radii.size(); ++i)
    for (std::size_t j = i + 1; j < radii.size(); ++j) {
      double dev = std::fabs(rep.scan.values[i] - rep.scan.values[j]);
      double se = std::hypot(rep.scan.stderrs[i], rep.scan.stderrs[j]);
      rep.max_deviation = std::max(rep.max_deviation, dev);
      rep.max_pair_stderr = std::max(rep.max_pair_stderr, se);
      if (dev > 4.0 * se && se > 0.0) rep.deviations_within_4sigma = false;
      if (se == 0.0 && dev > 1e-8) rep.deviations_within_4sigma = false;
    }
  double monomial = 1.0;
  for (int i : subsystem) monomial *= inner(a, ca.root(i));
  if (std::fabs(monomial) > 1e-300) {
    double mean = 0.0;
    for (double v : rep.scan.values) mean += v;
    mean /= static_cast<double>(rep.scan.values.size());
    rep.fitted_coefficient = mean / monomial;
    for (double v : rep.scan.values)
      rep.fit_residual =
          std::max(rep.fit_residual, std::fabs(v - rep.fitted_coefficient * monomial));
  }
  return rep;
}

std::vector<double> fit_radius_polynomial(const std::vector<double>& radii,
                                          const std::vector<double>& values) {
  const std::size_t m = radii.size();
  if (values.size() != m || m == 0)
    throw std::invalid_argument("fit_radius_polynomial: size mismatch");
  Mat vand(m, Vec(m));
  for (std::size_t i = 0; i < m; ++i) {
    double p = 1.0;
    for (std::size_t k = 0; k < m; ++k, p *= radii[i]) vand[i][k] = p;
  }
  return solve_linear(vand, values);
}

double max_odd_radius_coefficient(const std::vector<double>& radii,
                                  const std::vector<double>& values) {
  std::vector<double> coef = fit_radius_polynomial(radii, values);
  double worst = 0.0;
  for (std::size_t k = 1; k < coef.size(); k += 2)
    worst = std::max(worst, std::fabs(coef[k]));
  return worst;
}

DecayReport decay_probe(const CoxeterArrangement& ca, const Vec& a,
                        const std::vector<double>& radii, Engine engine,
                        long long samples, std::uint64_t seed, int workers,
                        const QuadratureConfig& cfg, double threshold) {
  if (parity_condition(ca.base))
    throw std::invalid_argument(
        "decay_probe: arrangement satisfies the parity condition; the "
        "quantity is polynomial (often identically zero) rather than decaying");
  if (ca.base.size() < ca.rank() + 1)
    throw std::invalid_argument("decay_probe: needs more hyperplanes than dim");
  if (!std::is_sorted(radii.begin(), radii.end()))
    throw std::invalid_argument("decay_probe: radii must increase");
  DecayReport rep;
  rep.threshold = threshold;
  rep.scan = scan_radii(ca, a, radii, engine, samples, seed, workers, cfg);
  const int m = static_cast<int>(radii.size());
  rep.tail_points = std::min(rep.tail_points, m);
  rep.tail_monotone = true;
  for (int i = m - rep.tail_points; i + 1 < m; ++i)
    if (std::fabs(rep.scan.values[i + 1]) >= std::fabs(rep.scan.values[i]))
      rep.tail_monotone = false;
  rep.final_abs = std::fabs(rep.scan.values.back());
  rep.below_threshold = rep.final_abs < threshold;
  return rep;
}

}  // namespace pizza
