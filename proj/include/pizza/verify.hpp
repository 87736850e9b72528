#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "pizza/formulas.hpp"

namespace pizza {

struct CaseResult {
  std::string name;
  std::vector<std::string> refs;  // behavior labels, e.g. "vanishing"
  std::vector<std::pair<std::string, double>> values;
  double tol = 0.0;
  bool pass = true;
  bool asserted = true;  // informational rows never fail the suite
};

struct SuiteReport {
  std::string suite;
  std::uint64_t seed = 0;
  std::vector<std::pair<std::string, std::string>> config;
  std::vector<CaseResult> cases;
  double wall_time_sec = 0.0;  // display only; excluded from serialization

  bool all_pass() const;
  int failures() const;
};

// Deterministic bytes: ordered keys, 17 significant digits, no timing data.
std::string report_json(const SuiteReport& r);
std::string report_text(const SuiteReport& r);

struct VerifyOptions {
  std::uint64_t seed = 42;
  long long samples = 4000000;
  int workers = 1;
  QuadratureConfig quad;
  int sharing_k = 6;
  int sharing_p = 3;
  int conjecture_trials = 36;
  int conjecture_dim = 2;
};

// Even-Coxeter vanishing on W-stable bodies (plus the A_1^n product value,
// which is nonzero and pinned instead).
SuiteReport suite_vanishing(const VerifyOptions& opt);

// Translation identity: |(P(K+a) - P(K)) - RHS| <= 4 sigma on three bodies.
SuiteReport suite_reduction(const VerifyOptions& opt);

// Recursive slice-vanishing falsifier (dimension <= 3 rosters).
SuiteReport suite_sufficiently_symmetric(const VerifyOptions& opt);

// Alternating spherical surface sums.
SuiteReport suite_surface(const VerifyOptions& opt);

// Equal sharing among p of the 2k dihedral sectors.
SuiteReport suite_sharing(const VerifyOptions& opt);

// minus_id_in_group against the classification table; evenness cross-check
// at ranks <= 4.
SuiteReport suite_classification(const VerifyOptions& opt);

// Sign-of-the-estimate probe for the type-A ball conjecture: mismatches fail
// in dimension 2, dimension 3 is report-only.
SuiteReport probe_conjecture(const VerifyOptions& opt);

// Radius independence when exactly dim(V) hyperplanes carry the symmetry.
SuiteReport suite_r_independence(const VerifyOptions& opt);

// |P| -> 0 as R grows when the parity condition fails.
SuiteReport suite_decay(const VerifyOptions& opt);

// Oracle agreement pizza_mc vs pizza_exact_2d on random 2-D arrangements.
SuiteReport suite_oracle_2d(const VerifyOptions& opt);

// Known-seed rerun determinism including worker-count invariance.
SuiteReport suite_determinism(const VerifyOptions& opt);

// W-stable 2-D body: intersection of the group orbit of the unit box.
Region dihedral_stable_body(const CoxeterArrangement& ca, double half_width);

// Sector index (0..2k-1) of a point of a dihedral arrangement, counted
// counterclockwise from the base chamber.
int dihedral_sector_index(const Arrangement& a, const Vec& x);

}  // namespace pizza
