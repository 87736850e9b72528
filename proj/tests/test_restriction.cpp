#include <doctest.h>

#include <cmath>
#include <set>

#include "pizza/coxeter.hpp"
#include "pizza/restriction.hpp"

using namespace pizza;

namespace {

const double s2 = std::sqrt(0.5);

Arrangement b2() {
  return build_arrangement({{1, 0}, {0, 1}, {s2, s2}, {s2, -s2}});
}

// Numeric-epsilon oracle for the sign of a maximal sequence: evaluate the
// chamber sign at v + sum eps^i * (lifted stage normal), eps = 1e-4.
int numeric_sign(const RestrictionSequence& seq, double eps = 1e-4) {
  const Arrangement& amb = seq.ambient;
  Vec x(amb.dim, 0.0);
  if (seq.to_ambient.dim() > 0) {
    Vec pat = generic_direction(seq.to_ambient.dim());
    x = basis_embed(seq.to_ambient, pat);
  }
  double w = eps;
  for (int i = seq.length() - 1; i >= 0; --i, w *= eps)
    axpy(x, w, seq.lifted_normals[i]);
  // Positive rescaling keeps the chamber and lifts the smallest components
  // clear of the absolute wall band.
  return chamber_sign(amb, scale(x, std::pow(1.0 / eps, seq.length())));
}

}  // namespace

TEST_CASE("intersection multiplicity") {
  Arrangement a = b2();
  for (int i = 0; i < 4; ++i)
    for (int j = 0; j < 4; ++j)
      if (i != j) CHECK(intersection_multiplicity(a, i, j) == 4);

  CoxeterArrangement b3 = build_type("B3");
  // e = (1,0,0), f = (0,1,0): the axis planes plus (1,+-1,0)/sqrt2 contain
  // the intersection line.
  int e = -1, f = -1;
  for (int i = 0; i < 9; ++i) {
    if (norm(sub(b3.root(i), {1, 0, 0})) < 1e-9) e = i;
    if (norm(sub(b3.root(i), {0, 1, 0})) < 1e-9) f = i;
  }
  REQUIRE(e >= 0);
  REQUIRE(f >= 0);
  CHECK(intersection_multiplicity(b3.base, e, f) == 4);

  Arrangement axes3 = build_type("A1xA1xA1").base;
  CHECK(intersection_multiplicity(axes3, 0, 1) == 2);
  CHECK_THROWS_AS(intersection_multiplicity(a, 1, 1), std::invalid_argument);
}

TEST_CASE("even restriction of dihedral arrangements") {
  // I_2(2k): every pair meets only at the origin with multiplicity 2k
  // (even), so the child is the point-hyperplane in R^1. I_2(2k+1): odd
  // multiplicity, empty child.
  Arrangement i6 = build_type("I2(6)").base;
  RestrictionStep s6 = even_restricted(i6, 0, i6.witness);
  CHECK(s6.child.dim == 1);
  CHECK(s6.child.size() == 1);

  Arrangement i5 = build_type("I2(5)").base;
  RestrictionStep s5 = even_restricted(i5, 0, i5.witness);
  CHECK(s5.child.size() == 0);
  CHECK(s5.child.dim == 1);
}

TEST_CASE("even restriction of B3 by root length") {
  CoxeterArrangement b3 = build_type("B3");
  int short_root = -1, long_root = -1;
  for (int i = 0; i < 9; ++i) {
    int nonzero = 0;
    for (double c : b3.root(i))
      if (std::fabs(c) > 1e-9) ++nonzero;
    if (nonzero == 1 && short_root < 0) short_root = i;
    if (nonzero == 2 && long_root < 0) long_root = i;
  }
  REQUIRE(short_root >= 0);
  REQUIRE(long_root >= 0);

  RestrictionStep ss = even_restricted(b3.base, short_root, b3.base.witness);
  CHECK(ss.child.size() == 4);  // B2 on the wall

  RestrictionStep sl = even_restricted(b3.base, long_root, b3.base.witness);
  CHECK(sl.child.size() == 2);  // A1 x A1
  CHECK(std::fabs(inner(sl.child.normals[0], sl.child.normals[1])) <= 1e-10);
}

TEST_CASE("Coxeter children are the roots on the wall") {
  for (const char* spec : {"B3", "H3", "F4"}) {
    CoxeterArrangement ca = build_type(spec);
    const Arrangement& a = ca.base;
    for (int e = 0; e < a.size(); e += 3) {
      RestrictionStep step = even_restricted(a, e, a.witness);
      // Oracle: roots orthogonal to e, expressed in child coordinates.
      std::vector<Vec> expected;
      for (int f = 0; f < a.size(); ++f)
        if (f != e && std::fabs(inner(a.normals[f], a.normals[e])) <= 1e-10)
          expected.push_back(basis_coords(step.child_basis, a.normals[f]));
      REQUIRE(step.child.size() == static_cast<int>(expected.size()));
      for (const Vec& want : expected) {
        bool found = false;
        for (const Vec& got : step.child.normals)
          if (norm(sub(got, want)) <= 1e-9 || norm(add(got, want)) <= 1e-9)
            found = true;
        CHECK(found);
      }
    }
  }
}

TEST_CASE("extend and maximality") {
  Arrangement a = b2();
  RestrictionSequence seq = make_sequence(a);
  CHECK(!is_maximal(seq));
  seq = extend(seq, 0);
  CHECK(seq.length() == 1);
  CHECK(seq.current().dim == 1);
  CHECK(!is_maximal(seq));
  seq = extend(seq, 0);
  CHECK(is_maximal(seq));
  CHECK(seq.current().dim == 0);
  CHECK_THROWS_AS(extend(seq, 0), std::invalid_argument);

  Arrangement i5 = build_type("I2(5)").base;
  RestrictionSequence m = extend(make_sequence(i5), 0);
  CHECK(is_maximal(m));

  CHECK(!is_maximal(make_sequence(a)));
}

TEST_CASE("evenness classification") {
  for (const char* spec : {"B2", "I2(6)", "A1xA1xA1", "B3", "H3", "F4", "D4"})
    CHECK(is_even_arrangement(build_type(spec).base));
  for (const char* spec : {"A2", "A3", "I2(5)", "D5", "E6"})
    CHECK(!is_even_arrangement(build_type(spec).base));

  // The seven-plane 3-D arrangement (slope pairs around two axes plus the
  // coordinate planes) is even.
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
  CHECK(is_even_arrangement(seven));
}

TEST_CASE("evenness equals -id membership for Coxeter types") {
  for (const char* spec :
       {"A1", "A2", "A3", "A4", "B2", "B3", "B4", "D4", "I2(5)", "I2(6)",
        "I2(7)", "I2(8)", "H3", "F4", "B2xA1", "A2xA1"}) {
    CoxeterArrangement ca = build_type(spec);
    CHECK(is_even_arrangement(ca.base) == minus_id_in_group(ca));
  }
}

TEST_CASE("sequence signs on A1^2") {
  Arrangement axes = build_type("A1xA1").base;
  // (e1, e2): perturbation eps*e2 + eps^2*e1 stays in the base chamber.
  RestrictionSequence s12 = extend(extend(make_sequence(axes), 0), 0);
  CHECK(is_maximal(s12));
  CHECK(sequence_sign(s12) == 1);
  CHECK(numeric_sign(s12) == 1);
}

TEST_CASE("sequence signs match the numeric oracle") {
  for (const char* spec : {"B2", "I2(6)", "B3", "A1xA1xA1", "H3"}) {
    Arrangement a = build_type(spec).base;
    int checked = 0;
    for_each_class(a, a.dim, [&](const RestrictionSequence& seq) {
      REQUIRE(is_maximal(seq));
      CHECK(sequence_sign(seq) == numeric_sign(seq));
      ++checked;
    });
    CHECK(checked > 0);
  }
  // Non-even case: maximal sequences stop short of the dimension.
  Arrangement i5 = build_type("I2(5)").base;
  for (int e = 0; e < i5.size(); ++e) {
    RestrictionSequence seq = extend(make_sequence(i5), e);
    CHECK(sequence_sign(seq) == numeric_sign(seq));
  }
}

TEST_CASE("sequence sign equals the product of step signs") {
  // The per-step base-chamber pairings telescope: the sign of a maximal
  // sequence is the product of its per-step z0 signs.
  for (const char* spec : {"B2", "I2(6)", "B3"}) {
    Arrangement a = build_type(spec).base;
    for_each_class(a, a.dim, [&](const RestrictionSequence& seq) {
      int prod = 1;
      for (const RestrictionStep& st : seq.steps) prod *= st.z0_sign;
      CHECK(sequence_sign(seq) == prod);
    });
  }
}

TEST_CASE("class counts") {
  CHECK(canonical_classes(b2(), 2).size() == 4);
  CHECK(canonical_classes(build_type("A1xA1xA1").base, 3).size() == 6);
  CHECK(canonical_classes(build_type("I2(6)").base, 2).size() == 6);

  // Coxeter bijection with the orthogonal tuples, via the flag subspaces.
  CoxeterArrangement b3 = build_type("B3");
  auto classes = canonical_classes(b3.base, 3);
  auto tuples = orthogonal_sequences(b3, 3);
  CHECK(classes.size() == tuples.size());
}

TEST_CASE("child parity follows the parent") {
  for (const char* spec : {"B3", "A3", "I2(5)", "I2(6)", "H3", "F4", "B2xA1"}) {
    Arrangement a = build_type(spec).base;
    bool parent = parity_condition(a);
    for (int e = 0; e < a.size(); ++e) {
      RestrictionStep step = even_restricted(a, e, a.witness);
      CHECK(parity_condition(step.child) == parent);
    }
  }
}

TEST_CASE("even classes cover the even-multiplicity partners") {
  CoxeterArrangement b3 = build_type("B3");
  RestrictionStep step = even_restricted(b3.base, 0, b3.base.witness);
  int covered = 0;
  for (const auto& cls : step.classes) covered += static_cast<int>(cls.size());
  int expected = 0;
  for (int f = 0; f < b3.base.size(); ++f)
    if (f != 0 && intersection_multiplicity(b3.base, 0, f) % 2 == 0) ++expected;
  CHECK(covered == expected);
}
