#include <doctest.h>

#include <cmath>

#include "pizza/formulas.hpp"
#include "pizza/verify.hpp"

using namespace pizza;

TEST_CASE("f_H on A1^n is the product monomial") {
  for (int n = 2; n <= 4; ++n) {
    std::string spec = "A1";
    for (int i = 1; i < n; ++i) spec += "xA1";
    Arrangement axes = build_type(spec).base;
    Rng rng(61);
    for (int t = 0; t < 5; ++t) {
      Vec a(n);
      double prod = 1.0;
      for (int i = 0; i < n; ++i) {
        a[i] = rng.uniform(-1, 1);
        prod *= a[i];
      }
      // Coordinates of the (possibly sign-flipped) axis normals.
      double oriented = 1.0;
      for (const Vec& e : axes.normals) oriented *= inner(e, a);
      CHECK(f_H(axes, a) ==
            doctest::Approx(std::pow(2.0, n) * oriented).epsilon(1e-11));
      (void)prod;
    }
  }
  Vec a = {0.2, 0.3, 0.4};
  CHECK(std::fabs(f_H(build_type("A1xA1xA1").base, a) - 0.192) <= 1e-12);
}

TEST_CASE("f_H vanishes for larger even Coxeter arrangements") {
  Rng rng(67);
  for (const char* spec : {"B2", "I2(6)", "B3"}) {
    Arrangement arr = build_type(spec).base;
    for (int t = 0; t < 3; ++t) {
      Vec a(arr.dim);
      for (auto& c : a) c = rng.uniform(-1, 1);
      CHECK(std::fabs(f_H(arr, a)) <= 1e-10);
    }
  }
}

TEST_CASE("f_H rejects non-even arrangements") {
  CHECK_THROWS_AS(f_H(build_type("A2").base, {0.1, 0.2}),
                  std::invalid_argument);
}

TEST_CASE("f_H homogeneity and reflection antisymmetry") {
  Arrangement axes = build_type("A1xA1xA1").base;
  Vec a = {0.3, -0.5, 0.7};
  double base = f_H(axes, a);
  for (double lam : {2.0, 3.0, -1.0}) {
    double got = f_H(axes, scale(a, lam));
    CHECK(got == doctest::Approx(std::pow(lam, 3) * base).epsilon(1e-9));
  }
  CoxeterArrangement ca = build_type("A1xA1xA1");
  for (int i : ca.simple_indices) {
    double got = f_H(axes, reflect(a, ca.root(i)));
    CHECK(got == doctest::Approx(-base).epsilon(1e-9));
  }
}

TEST_CASE("seven-plane example: monomial shape, coefficient by MC oracle") {
  const double alpha = 0.8, beta = 1.3;
  BuildOptions bo;
  bo.auto_orient = true;
  Arrangement seven = build_arrangement(
      {{1, 0, 0},
       normalize({1, -alpha, 0}),
       normalize({1, alpha, 0}),
       {0, 1, 0},
       normalize({0, -beta, 1}),
       normalize({0, beta, 1}),
       {0, 0, 1}},
      std::nullopt, bo);
  REQUIRE(is_even_arrangement(seven));
  // f(a) = c * a1 a2 a3: the ratio is constant over generic points.
  Rng rng(71);
  double c0 = 0.0;
  for (int t = 0; t < 6; ++t) {
    Vec a = {rng.uniform(0.1, 0.9), rng.uniform(0.1, 0.9), rng.uniform(0.1, 0.9)};
    if (t % 2) a[1] = -a[1];
    double ratio = f_H(seven, a) / (a[0] * a[1] * a[2]);
    if (t == 0) c0 = ratio;
    CHECK(ratio == doctest::Approx(c0).epsilon(1e-8));
  }
  // The measured coefficient agrees with a Monte Carlo evaluation of the
  // ball quantity (radius independence makes any valid radius fine).
  Vec a = {0.15, 0.1, 0.12};
  MCEstimate est = pizza_mc(seven, region_ball(a, 1.0), 4000000, 73, 1);
  CHECK(std::fabs(est.value - c0 * a[0] * a[1] * a[2]) <= 4 * est.stderr_);
}

TEST_CASE("ball formula vanishes where the theorems say") {
  QuadratureConfig cfg;
  CHECK(std::fabs(pizza_ball_coxeter(build_type("B2"), {0.3, 0.1}, 1.0, cfg)) <=
        1e-8);
  CHECK(std::fabs(pizza_ball_coxeter(build_type("I2(6)"), {0.2, 0.4}, 1.0, cfg)) <=
        1e-8);
  CHECK(std::fabs(pizza_ball_coxeter(build_type("B3"), {0.2, 0.1, 0.3}, 1.0, cfg)) <=
        1e-8);
  CHECK(std::fabs(pizza_ball_coxeter(build_type("H3"), {0.2, 0.1, 0.3}, 1.0, cfg)) <=
        1e-8);
  CHECK(pizza_ball_coxeter(build_type("B3"), {0, 0, 0}, 1.0, cfg) == 0.0);
  CHECK_THROWS_AS(pizza_ball_coxeter(build_type("B2"), {2.0, 0.0}, 1.0, cfg),
                  std::invalid_argument);
}

TEST_CASE("ball formula matches the exact 2d oracle on A2") {
  CoxeterArrangement a2 = build_type("A2");
  QuadratureConfig cfg;
  for (Vec a : {Vec{0.4, 0.1}, Vec{0.1, -0.3}, Vec{-0.25, 0.2}}) {
    double formula = pizza_ball_coxeter(a2, a, 1.0, cfg);
    double exact = pizza_exact_2d(a2.base, a, 1.0, cfg);
    CHECK(std::fabs(formula - exact) <= 1e-6);
  }
}

TEST_CASE("ball formula on A1^n and products") {
  CoxeterArrangement axes = build_type("A1xA1xA1");
  Vec a = {0.2, 0.3, 0.4};
  for (double radius : {0.6, 1.0, 2.0}) {
    double oriented = 1.0;
    for (const Vec& e : axes.base.normals) oriented *= inner(e, a);
    CHECK(pizza_ball_coxeter(axes, a, radius) ==
          doctest::Approx(8.0 * oriented).epsilon(1e-9));
  }
  // Empty arrangement: the whole ball with the positive sign.
  CoxeterArrangement e1 = build_type("E1");
  CHECK(pizza_ball_coxeter(e1, {0.1}, 2.0) ==
        doctest::Approx(4.0).epsilon(1e-12));
}

TEST_CASE("ball formula matches MC in three dimensions") {
  CoxeterArrangement b2a1 = build_type("B2xA1");
  Vec a = {0.25, 0.1, 0.2};
  double formula = pizza_ball_coxeter(b2a1, a, 1.0);
  MCEstimate est = pizza_mc(b2a1.base, region_ball(a, 1.0), 4000000, 77, 1);
  CHECK(std::fabs(formula - est.value) <= 4 * est.stderr_);
}

TEST_CASE("orthogonal tuple signs agree with full restriction chains") {
  for (const char* spec : {"B2", "I2(6)", "B3"}) {
    CoxeterArrangement ca = build_type(spec);
    int r = max_orthogonal_rank(ca);
    for (const auto& tuple : orthogonal_sequences(ca, r)) {
      // Rebuild the tuple as an explicit restriction chain by matching each
      // root against the current child's hyperplanes through the lift.
      RestrictionSequence seq = make_sequence(ca.base);
      for (int idx : tuple) {
        const Arrangement& cur = seq.current();
        int chosen = -1;
        for (int c = 0; c < cur.size(); ++c) {
          Vec lifted(ca.base.dim, 0.0);
          for (int j = 0; j < seq.to_ambient.dim(); ++j)
            axpy(lifted, cur.normals[c][j], seq.to_ambient.vectors[j]);
          if (std::fabs(std::fabs(inner(lifted, ca.root(idx))) - 1.0) <= 1e-9)
            chosen = c;
        }
        REQUIRE(chosen >= 0);
        seq = extend(seq, chosen);
      }
      REQUIRE(is_maximal(seq));
      CHECK(orthogonal_tuple_sign(ca.base, tuple) == sequence_sign(seq));
    }
  }
}

TEST_CASE("classify_f") {
  CHECK(classify_f(build_type("B3")).kind == FClass::Zero);
  CHECK(classify_f(build_type("A1xA1xA1")).kind == FClass::MonomialMultiple);
  CHECK(classify_f(build_type("A1xA1xA1")).monomial_roots.size() == 3);
  CHECK(classify_f(build_type("A2")).kind == FClass::NotEven);
  CHECK(classify_f(build_type("A2xE1")).kind == FClass::NotEven);
}

TEST_CASE("radius independence checks") {
  CoxeterArrangement axes = build_type("A1xA1xA1");
  Vec a = {0.2, 0.3, 0.4};
  auto rep = r_independence_check(axes, {0, 1, 2}, a, {0.6, 1.0, 2.0, 5.0},
                                  Engine::Formula, 0, 1, 1);
  CHECK(rep.max_deviation <= 1e-9);
  double oriented = 1.0;
  for (const Vec& e : axes.base.normals) oriented *= inner(e, a);
  CHECK(rep.fitted_coefficient * (a[0] * a[1] * a[2]) ==
        doctest::Approx(8.0 * oriented).epsilon(1e-9));
  CHECK_THROWS_AS(
      r_independence_check(axes, {0, 1, 2}, a, {0.1}, Engine::Formula, 0, 1, 1),
      std::invalid_argument);
}

TEST_CASE("decay probe") {
  CoxeterArrangement a2 = build_type("A2");
  auto rep = decay_probe(a2, {0.4, 0.1}, {1, 2, 4, 8, 16, 32, 64},
                         Engine::Exact2D, 0, 1, 1);
  CHECK(rep.tail_monotone);
  CHECK(rep.final_abs < 1e-3);
  CHECK(std::fabs(rep.scan.values.front()) > rep.final_abs);

  CHECK_THROWS_AS(decay_probe(build_type("B2"), {0.1, 0.1}, {1, 2, 4},
                              Engine::Exact2D, 0, 1, 1),
                  std::invalid_argument);
}

TEST_CASE("even powers of R in a non-Coxeter parity-true arrangement") {
  // Four unbalanced lines: the quantity grows like R^2 but carries no odd
  // powers of R.
  std::vector<Vec> normals;
  for (double t : {0.0, 0.5, 1.1, 2.0}) {
    double psi = t + 3.14159265358979323846 / 2;
    normals.push_back({std::cos(psi), std::sin(psi)});
  }
  BuildOptions bo;
  bo.auto_orient = true;
  Arrangement arr = build_arrangement(std::move(normals), std::nullopt, bo);
  REQUIRE(parity_condition(arr));
  Vec a = {0.12, 0.07};
  std::vector<double> radii, values;
  for (int j = -3; j <= 3; ++j) {
    radii.push_back(1.0 + 0.05 * j);
    values.push_back(pizza_exact_2d(arr, a, radii.back()));
  }
  CHECK(max_odd_radius_coefficient(radii, values) <= 1e-7);
  // Non-degenerate: the value really moves with the radius.
  CHECK(std::fabs(values.front() - values.back()) > 1e-3);
}

TEST_CASE("ball formula refuses past the enumeration cap") {
  CoxeterArrangement e8 = build_type("E8");
  Vec a(8, 0.05);
  CHECK_THROWS_AS(pizza_ball_coxeter(e8, a, 1.0), std::runtime_error);
}
