#pragma once

#include <functional>
#include <vector>

#include "pizza/arrangement.hpp"

namespace pizza {

// Number of hyperplanes of the arrangement containing H_e ∩ H_f, i.e. the
// normals lying in span(e, f) (residual tolerance 1e-9).
int intersection_multiplicity(const Arrangement& a, int e, int f);

// One restriction step: the chosen hyperplane of the parent arrangement, an
// orthonormal basis of it, and the even restricted arrangement living there.
//
// The child arrangement collects the codimension-2 intersections H_e ∩ H_f
// with even intersection multiplicity, each class represented by the
// normalized projection of one of its normals onto H_e, deduplicated and
// expressed in child coordinates. Its base chamber is the chamber containing
// the projected reference point (deterministically perturbed off walls), and
// z0_sign is the sign, relative to the parent's base chamber, of the parent
// chamber found an infinitesimal step along the chosen normal from the
// child's base chamber. The reduction identity pairs these two choices; the
// base chamber is arbitrary but the sign must travel with it.
struct RestrictionStep {
  int chosen_index = -1;            // index into the parent's normals
  Vec normal;                       // that normal, parent coordinates
  OrthonormalBasis child_basis;     // basis of the hyperplane, parent coords
  Arrangement child;                // even restricted arrangement, child coords
  std::vector<std::vector<int>> classes;  // parent indices per child hyperplane
  int z0_sign = 1;
};

struct RestrictionSequence {
  Arrangement ambient;
  std::vector<RestrictionStep> steps;
  std::vector<Vec> lifted_normals;  // per-step stage normals, ambient coords
  OrthonormalBasis to_ambient;      // current subspace -> ambient coords

  const Arrangement& current() const {
    return steps.empty() ? ambient : steps.back().child;
  }
  int length() const { return static_cast<int>(steps.size()); }
};

RestrictionStep even_restricted(const Arrangement& a, int e, const Vec& reference);

RestrictionSequence make_sequence(const Arrangement& ambient);

// Appends a step restricting the current arrangement at its hyperplane
// `current_index` (the child's base chamber reference is the current
// witness). Throws if the index is out of range.
RestrictionSequence extend(const RestrictionSequence& seq, int current_index);

// True iff the current arrangement has no hyperplanes.
bool is_maximal(const RestrictionSequence& seq);

// True iff every maximal even restriction sequence has length dim(V),
// decided by depth-first search over the flag tree with memoization on the
// ambient-canonicalized normal set of each stage.
bool is_even_arrangement(const Arrangement& a);

// Sign of a maximal sequence: for each ambient normal f the sign of
// <f, v + eps*n_r + eps^2*n_{r-1} + ... + eps^r*n_1> for infinitesimal
// eps > 0, where n_i are the stage normals lifted to ambient coordinates and
// v is a generic vector of the terminal subspace (absent when r = n); the
// result is (-1)^(number of negative resolved signs). Throws when some f
// fails to resolve (cannot happen for maximal sequences).
int sequence_sign(const RestrictionSequence& seq);

// Enumerates the equivalence classes of even restriction sequences of
// length r (each flag of subspaces once). Throws past `cap` visited nodes.
std::vector<RestrictionSequence> canonical_classes(const Arrangement& a, int r,
                                                   std::size_t cap = 1000000);

// Streaming variant of canonical_classes.
void for_each_class(const Arrangement& a, int r,
                    const std::function<void(const RestrictionSequence&)>& fn,
                    std::size_t cap = 1000000);

}  // namespace pizza
