#include <doctest.h>

#include <algorithm>
#include <cmath>
#include <set>

#include "pizza/coxeter.hpp"

using namespace pizza;

namespace {

// Brute-force reflection closure check: s_e maps every root into +-E.
bool closed_under_reflections(const CoxeterArrangement& ca) {
  for (const Vec& e : ca.base.normals)
    for (const Vec& f : ca.base.normals) {
      Vec r = reflect(f, e);
      bool found = false;
      for (const Vec& g : ca.base.normals)
        if (norm(sub(r, g)) <= 1e-9 || norm(add(r, g)) <= 1e-9) {
          found = true;
          break;
        }
      if (!found) return false;
    }
  return true;
}

double det_small(const Mat& m) {
  if (m.size() == 1) return m[0][0];
  if (m.size() == 2) return m[0][0] * m[1][1] - m[0][1] * m[1][0];
  double d = 0.0;
  for (std::size_t c = 0; c < m.size(); ++c) {
    Mat minor;
    for (std::size_t r = 1; r < m.size(); ++r) {
      Vec row;
      for (std::size_t cc = 0; cc < m.size(); ++cc)
        if (cc != c) row.push_back(m[r][cc]);
      minor.push_back(row);
    }
    d += (c % 2 ? -1.0 : 1.0) * m[0][c] * det_small(minor);
  }
  return d;
}

}  // namespace

TEST_CASE("spec parsing") {
  CHECK(CoxeterSpec::parse("B3").str() == "B3");
  CHECK(CoxeterSpec::parse("I2(6)").str() == "I2(6)");
  CHECK(CoxeterSpec::parse("B2xA1").str() == "B2xA1");
  CHECK(CoxeterSpec::parse("A2xE1").str() == "A2xE1");
  CHECK_THROWS_AS(CoxeterSpec::parse("Q3"), std::invalid_argument);
  CHECK_THROWS_AS(CoxeterSpec::parse("D3"), std::invalid_argument);
  CHECK_THROWS_AS(CoxeterSpec::parse("E5"), std::invalid_argument);
  CHECK_THROWS_AS(CoxeterSpec::parse("I2(2)"), std::invalid_argument);
  CHECK_THROWS_AS(CoxeterSpec::parse("H5"), std::invalid_argument);
}

TEST_CASE("root counts and closure") {
  struct Row {
    const char* spec;
    int dim;
    int count;
  };
  const Row rows[] = {{"A2", 2, 3},     {"A3", 3, 6},    {"B2", 2, 4},
                      {"B3", 3, 9},     {"B4", 4, 16},   {"D4", 4, 12},
                      {"I2(4)", 2, 4},  {"I2(5)", 2, 5}, {"I2(6)", 2, 6},
                      {"F4", 4, 24},    {"H3", 3, 15},   {"H4", 4, 60},
                      {"E6", 6, 36},    {"E7", 7, 63},   {"E8", 8, 120}};
  for (const Row& r : rows) {
    CoxeterArrangement ca = build_type(r.spec);
    CHECK(ca.base.dim == r.dim);
    CHECK(ca.base.size() == r.count);
    CHECK(static_cast<int>(ca.simple_indices.size()) == r.dim);
    if (ca.base.size() <= 24) CHECK(closed_under_reflections(ca));
    // Simple roots: all other positive roots are nonnegative combinations.
    Mat s;
    for (int i : ca.simple_indices) s.push_back(ca.root(i));
    Mat st;  // solve S^T c = root for the coefficient vector c
    for (int i = 0; i < ca.rank(); ++i) {
      Vec row(ca.rank());
      for (int j = 0; j < ca.rank(); ++j) row[j] = s[j][i];
      st.push_back(row);
    }
    for (const Vec& root : ca.base.normals) {
      Vec c = solve_linear(st, root);
      for (double ci : c) CHECK(ci >= -1e-9);
    }
  }
}

TEST_CASE("A2 pairwise angles") {
  CoxeterArrangement a2 = build_type("A2");
  for (int i = 0; i < 3; ++i)
    for (int j = i + 1; j < 3; ++j)
      CHECK(std::fabs(std::fabs(inner(a2.root(i), a2.root(j))) - 0.5) <= 1e-12);
}

TEST_CASE("products") {
  CoxeterArrangement p = build_type("B2xA1");
  CHECK(p.base.dim == 3);
  CHECK(p.base.size() == 5);
  CHECK(p.simple_indices.size() == 3);

  CoxeterArrangement q = build_type("A2xE1");
  CHECK(q.base.dim == 3);
  CHECK(q.base.size() == 3);
  for (const Vec& e : q.base.normals) CHECK(e[2] == 0.0);
}

TEST_CASE("reflect") {
  CHECK(norm(sub(reflect({1, 0}, {1, 0}), {-1, 0})) <= 1e-15);
  Vec x = {0.3, 0.7};
  Vec e = normalize({1, 1});
  Vec y = {0.5, -0.5};  // orthogonal to e
  CHECK(norm(sub(reflect(y, e), y)) <= 1e-15);
  CHECK(norm(sub(reflect(reflect(x, e), e), x)) <= 1e-12);
}

TEST_CASE("make_dominant") {
  CoxeterArrangement a1 = build_type("A1");
  auto d = make_dominant(a1, {-2.0});
  CHECK(d.point[0] == doctest::Approx(2.0));
  CHECK(d.parity == -1);

  CoxeterArrangement b2 = build_type("B2");
  Vec w = b2.base.witness;
  auto d0 = make_dominant(b2, w);
  CHECK(d0.parity == 1);
  CHECK(norm(sub(d0.point, w)) <= 1e-12);

  // Oracle: the whole group orbit, brute force. The dominant representative
  // is unique and the parity matches det(w) of the group element used.
  auto elems = group_elements(b2);
  REQUIRE(elems.size() == 8);
  Rng rng(17);
  for (int t = 0; t < 20; ++t) {
    Vec x = {rng.uniform(-2, 2), rng.uniform(-2, 2)};
    auto dom = make_dominant(b2, x);
    int found = 0;
    for (const Mat& g : elems) {
      Vec gx = mat_vec(g, x);
      bool dominant = true;
      for (int i : b2.simple_indices)
        if (inner(gx, b2.root(i)) < -1e-9) dominant = false;
      if (dominant) {
        ++found;
        CHECK(norm(sub(gx, dom.point)) <= 1e-9);
        CHECK(dom.parity == doctest::Approx(det_small(g)).epsilon(1e-9));
      }
    }
    CHECK(found == 1);
  }
}

TEST_CASE("minus_id_in_group matches the classification") {
  CHECK(minus_id_in_group(build_type("A1")));
  CHECK(minus_id_in_group(build_type("B2")));
  CHECK(!minus_id_in_group(build_type("A2")));
  CHECK(minus_id_in_group(build_type("D4")));
  CHECK(!minus_id_in_group(build_type("D5")));
  CHECK(!minus_id_in_group(build_type("I2(5)")));
  CHECK(minus_id_in_group(build_type("I2(6)")));
}

TEST_CASE("orthogonal sequences") {
  CHECK(orthogonal_sequences(build_type("A2"), 2).empty());

  auto t2 = orthogonal_sequences(build_type("A1xA1"), 2);
  CHECK(t2.size() == 2);

  auto b2 = orthogonal_sequences(build_type("B2"), 2);
  CHECK(b2.size() == 4);

  // Order-permutation closure: with each tuple, all its permutations.
  CoxeterArrangement b3 = build_type("B3");
  auto t3 = orthogonal_sequences(b3, 3);
  std::set<std::vector<int>> seen(t3.begin(), t3.end());
  for (auto tuple : t3) {
    std::sort(tuple.begin(), tuple.end());
    do {
      CHECK(seen.count(tuple) == 1);
    } while (std::next_permutation(tuple.begin(), tuple.end()));
  }
  CHECK(t3.size() == 24);
  // Exhaustive frame count oracle: 4 unordered frames x 3! orders.
  int frames = 0;
  for (int i = 0; i < b3.base.size(); ++i)
    for (int j = i + 1; j < b3.base.size(); ++j)
      for (int k = j + 1; k < b3.base.size(); ++k)
        if (std::fabs(inner(b3.root(i), b3.root(j))) <= 1e-10 &&
            std::fabs(inner(b3.root(i), b3.root(k))) <= 1e-10 &&
            std::fabs(inner(b3.root(j), b3.root(k))) <= 1e-10)
          ++frames;
  CHECK(frames * 6 == static_cast<int>(t3.size()));
}

TEST_CASE("max orthogonal rank") {
  CHECK(max_orthogonal_rank(build_type("A2")) == 1);
  CHECK(max_orthogonal_rank(build_type("A3")) == 2);
  CHECK(max_orthogonal_rank(build_type("B2")) == 2);
  CHECK(max_orthogonal_rank(build_type("B3")) == 3);
  CHECK(max_orthogonal_rank(build_type("B4")) == 4);
  CHECK(max_orthogonal_rank(build_type("I2(5)")) == 1);
  CHECK(max_orthogonal_rank(build_type("H3")) == 3);
  CHECK(max_orthogonal_rank(build_type("D5")) == 4);
}

TEST_CASE("region stability") {
  Rng rng(11);
  CoxeterArrangement b2 = build_type("B2");
  CHECK(region_is_stable(b2, region_ball({0, 0}, 1.0), 100, rng));
  CHECK(region_is_stable(b2, region_box({-1, -1}, {1, 1}), 100, rng));
  CoxeterArrangement axes = build_type("A1xA1");
  CHECK(!region_is_stable(axes, region_ball({1.0, 0.0}, 1.0), 200, rng));
}

TEST_CASE("dominance parity is scan-order independent") {
  CoxeterArrangement h3 = build_type("H3");
  Rng rng(23);
  for (int t = 0; t < 10; ++t) {
    Vec x = {rng.uniform(-1, 1), rng.uniform(-1, 1), rng.uniform(-1, 1)};
    auto d1 = make_dominant(h3, x);
    CoxeterArrangement rotated = h3;
    std::rotate(rotated.simple_indices.begin(),
                rotated.simple_indices.begin() + 1,
                rotated.simple_indices.end());
    auto d2 = make_dominant(rotated, x);
    CHECK(norm(sub(d1.point, d2.point)) <= 1e-9);
    CHECK(d1.parity == d2.parity);
  }
}
