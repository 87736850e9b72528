#pragma once

#include <iosfwd>
#include <optional>
#include <string>
#include <vector>

#include "pizza/geometry.hpp"

namespace pizza {

// An oriented central hyperplane arrangement: unit normals, each pointing
// toward the base chamber, plus an interior witness of that chamber.
// Immutable after build; all operations are pure.
struct Arrangement {
  int dim = 0;
  std::vector<Vec> normals;
  std::vector<std::string> labels;
  Vec witness;

  int size() const { return static_cast<int>(normals.size()); }
};

struct BuildOptions {
  bool auto_orient = false;
  // Filled on return when auto_orient flipped anything.
  std::vector<int>* flipped = nullptr;
};

// Validates and normalizes the normals, then locates a base-chamber witness:
// either the supplied point (validated) or the maximizer of min_e <e,x> over
// the unit sphere (projected subgradient ascent, 64 restarts, 500 iterations,
// accepted when the margin exceeds 1e-6). Throws on a parallel pair or when
// no all-positive chamber exists for the given orientation; with auto_orient
// set, normals are re-oriented against a deterministic generic direction
// first and the flipped indices are reported.
Arrangement build_arrangement(std::vector<Vec> normals,
                              std::optional<Vec> witness = std::nullopt,
                              BuildOptions opts = {},
                              std::vector<std::string> labels = {});

// Entries in {-1, 0, +1}; zero band |<e,x>| <= kTolHyperplane.
std::vector<int> sign_vector(const Arrangement& a, const Vec& x);

// (-1)^(number of hyperplanes separating x from the base chamber).
// Throws when x lies in the zero band of some hyperplane.
int chamber_sign(const Arrangement& a, const Vec& x);

// Hot-path variant: returns 0 instead of throwing on a wall hit.
int chamber_sign_or_zero(const Arrangement& a, const Vec& x) noexcept;

Arrangement product(const Arrangement& a1, const Arrangement& a2);

// u given as a row-major orthogonal matrix; throws if u^T u deviates from
// the identity by more than kTolOrtho.
Arrangement apply_isometry(const Arrangement& a, const Mat& u);

// |E| == dim (mod 2).
bool parity_condition(const Arrangement& a);

// Connected components of the graph on E with edges |<e,f>| > kTolOrtho.
std::vector<std::vector<int>> irreducible_components(const Arrangement& a);

// Text format: "dim n", one normal per line (>= 15 significant digits,
// optional trailing "# label"), optional final "witness x1 .. xn" line.
void write_arrangement(std::ostream& os, const Arrangement& a);
Arrangement read_arrangement(std::istream& is);
Arrangement read_arrangement_file(const std::string& path);
void write_arrangement_file(const std::string& path, const Arrangement& a);

}  // namespace pizza
