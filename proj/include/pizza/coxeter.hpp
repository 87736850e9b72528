#pragma once

#include <string>
#include <vector>

#include "pizza/arrangement.hpp"

namespace pizza {

// One factor of a (possibly reducible) finite Coxeter type. "E1" is the
// CLI spelling for the empty arrangement on R^1 and is stored as type 'E',
// rank 1.
struct CoxeterFactor {
  char type = 'A';
  int rank = 1;
  int order = 0;  // dihedral order m, type I only
};

struct CoxeterSpec {
  std::vector<CoxeterFactor> factors;

  // Parses strings like "A3", "B4", "I2(6)", "H3", "B2xA1", "A2xE1".
  static CoxeterSpec parse(const std::string& s);
  std::string str() const;
};

// A Coxeter arrangement: positive roots at unit length, oriented toward the
// fundamental chamber, with the simple roots identified among them.
struct CoxeterArrangement {
  Arrangement base;
  std::vector<int> simple_indices;  // into base.normals
  CoxeterSpec spec;

  const Vec& root(int i) const { return base.normals[i]; }
  int rank() const { return base.dim; }
};

// Builds the essential realization of a type (products composed factorwise):
// A_n from e_i - e_j expressed in an orthonormal basis of the sum-zero
// hyperplane, B_n from {e_i, e_i +- e_j}, D_n from {e_i +- e_j}, I_2(m) from
// m unit normals at angles k*pi/m + pi/(2m), E/F from the standard tables,
// H_3/H_4 by closing golden-ratio simple roots under simple reflections.
// The positive system is fixed by positivity against (1, 1e-1, 1e-2, ...).
CoxeterArrangement build_type(const CoxeterSpec& spec);
inline CoxeterArrangement build_type(const std::string& s) {
  return build_type(CoxeterSpec::parse(s));
}

// x - 2<x,e>e for unit e.
Vec reflect(const Vec& x, const Vec& e);

struct DominantResult {
  Vec point;
  int parity = 1;  // (-1)^(number of reflections applied) = det(w)
  int steps = 0;
};

// Repeatedly reflects x across simple roots with negative inner product
// until it lies in the closed fundamental chamber.
DominantResult make_dominant(const CoxeterArrangement& ca, Vec x);

// True iff -id lies in the Coxeter group, decided by whether the dominant
// representative of -v equals v for generic v in the open fundamental
// chamber (3 independent trials must agree).
bool minus_id_in_group(const CoxeterArrangement& ca);

// All ordered r-tuples of pairwise-orthogonal positive roots (E_r^(0)),
// as index tuples. Throws when the enumeration exceeds cap.
std::vector<std::vector<int>> orthogonal_sequences(const CoxeterArrangement& ca,
                                                   int r,
                                                   std::size_t cap = 1000000);

// Common size of the maximal pairwise-orthogonal subsets of the positive
// roots; verified exhaustively (throws if two maximal sets differ in size,
// or the search exceeds cap).
int max_orthogonal_rank(const CoxeterArrangement& ca,
                        std::size_t cap = 1000000);

// Sampled stability test: membership of s(x) for each simple reflection s
// over `trials` points of K.
bool region_is_stable(const CoxeterArrangement& ca, const Region& k,
                      int trials, Rng& rng);

// All elements of the Coxeter group as matrices (closure of the simple
// reflections under multiplication). Intended for small groups only.
std::vector<Mat> group_elements(const CoxeterArrangement& ca,
                                std::size_t cap = 100000);

}  // namespace pizza
