#pragma once

#include <optional>
#include <string>
#include <vector>

#include "pizza/coxeter.hpp"
#include "pizza/integrate.hpp"

namespace pizza {

// The degree-n polynomial attached to an even arrangement:
//   f_H(a) = (2^n / n!) * sum over flag classes of
//            sign * <a, n_1> <a, n_2> ... <a, n_n>,
// where the n_i are the stage normals of a class representative lifted to
// ambient coordinates (they form an orthonormal flag basis, so the cascaded
// projections reduce to plain inner products). Throws when the arrangement
// is not even.
double f_H(const Arrangement& a, const Vec& point,
           std::size_t class_cap = 1000000);

// Sign of a pairwise-orthogonal maximal tuple without building the full
// restriction chain (the stage normals of such a tuple are the roots
// themselves). Cross-checked against sequence_sign in the tests.
int orthogonal_tuple_sign(const Arrangement& a, const std::vector<int>& tuple);

// Closed form for balls around a Coxeter arrangement, r = common length of
// the maximal orthogonal tuples:
//   P(H, B(a,R)) = 2^r pi^((n-r)/2) / Gamma((n-r)/2 + 1)
//     * sum over E_r^(0) of sign * prod <a,e_i>
//       * Int over the order simplex of (R^2 - sum t_i^2 <a,e_i>^2)^((n-r)/2).
// Requires |a| <= R. Enumeration of E_r^(0) is capped; past the cap (E_7,
// E_8) this engine refuses and the Monte Carlo engine is the designated path.
double pizza_ball_coxeter(const CoxeterArrangement& ca, const Vec& a, double r,
                          const QuadratureConfig& cfg = {},
                          std::size_t cap = 1000000);

enum class FClass { Zero, MonomialMultiple, NotEven };

struct FClassification {
  FClass kind = FClass::NotEven;
  std::vector<int> monomial_roots;  // the E' of the monomial case
};

FClassification classify_f(const CoxeterArrangement& ca);

enum class Engine { MC, Formula, Exact2D };

struct RadiusScan {
  std::vector<double> radii;
  std::vector<double> values;
  std::vector<double> stderrs;  // zero for deterministic engines
};

struct RIndependenceReport {
  RadiusScan scan;
  double max_deviation = 0.0;       // max |v_i - v_j|
  double max_pair_stderr = 0.0;     // max sqrt(s_i^2 + s_j^2)
  double fitted_coefficient = 0.0;  // c from P = c * prod <a,e>
  double fit_residual = 0.0;
  bool deviations_within_4sigma = true;
};

// Evaluates P(H, B(a,R)) over the radii with the selected engine and
// reports radius independence plus the fitted monomial coefficient over
// the designated n-element subsystem E'.
RIndependenceReport r_independence_check(const CoxeterArrangement& ca,
                                         const std::vector<int>& subsystem,
                                         const Vec& a,
                                         const std::vector<double>& radii,
                                         Engine engine, long long samples,
                                         std::uint64_t seed, int workers,
                                         const QuadratureConfig& cfg = {});

struct DecayReport {
  RadiusScan scan;
  bool tail_monotone = false;  // |P| decreasing over the last tail_points
  int tail_points = 4;
  double final_abs = 0.0;
  double threshold = 1e-3;
  bool below_threshold = false;
};

// Decay probe for arrangements failing the parity condition with more than
// dim(V) hyperplanes; refuses (throws) when the parity condition holds,
// since the quantity is then identically zero or radius-independent.
DecayReport decay_probe(const CoxeterArrangement& ca, const Vec& a,
                        const std::vector<double>& radii, Engine engine,
                        long long samples, std::uint64_t seed, int workers,
                        const QuadratureConfig& cfg = {}, double threshold = 1e-3);

// Coefficients (degree 0 .. radii.size()-1, in the radius variable about 0)
// of the polynomial interpolating the sampled values; used to detect
// odd-degree content in R.
std::vector<double> fit_radius_polynomial(const std::vector<double>& radii,
                                          const std::vector<double>& values);
double max_odd_radius_coefficient(const std::vector<double>& radii,
                                  const std::vector<double>& values);

}  // namespace pizza
