#include "pizza/verify.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <sstream>

#include "pizza/json_writer.hpp"

namespace pizza {

namespace {

constexpr double kPi = 3.14159265358979323846264338328;
constexpr const char* kVersion = "0.1.0";

CaseResult make_case(std::string name, std::vector<std::string> refs) {
  CaseResult c;
  c.name = std::move(name);
  c.refs = std::move(refs);
  return c;
}

void push_value(CaseResult& c, const std::string& k, double v) {
  c.values.emplace_back(k, v);
}

// |value| <= tol with the tolerance recorded.
void assert_small(CaseResult& c, const std::string& key, double value,
                  double tol) {
  push_value(c, key, value);
  c.tol = tol;
  if (std::fabs(value) > tol) c.pass = false;
}

std::string fmt(double v) { return JsonWriter::number(v); }

Vec vec3(double x, double y, double z) { return {x, y, z}; }

}  // namespace

bool SuiteReport::all_pass() const { return failures() == 0; }

int SuiteReport::failures() const {
  int n = 0;
  for (const auto& c : cases)
    if (c.asserted && !c.pass) ++n;
  return n;
}

std::string report_json(const SuiteReport& r) {
  JsonWriter w;
  w.begin_object();
  w.key("suite");
  w.value(r.suite);
  w.key("version");
  w.value(kVersion);
  w.key("seed");
  w.value(r.seed);
  w.key("config");
  w.begin_object();
  for (const auto& [k, v] : r.config) {
    w.key(k);
    w.value(v);
  }
  w.end_object();
  w.key("cases");
  w.begin_array();
  for (const auto& c : r.cases) {
    w.begin_object();
    w.key("name");
    w.value(c.name);
    w.key("refs");
    w.begin_array();
    for (const auto& ref : c.refs) w.value(ref);
    w.end_array();
    w.key("values");
    w.begin_object();
    for (const auto& [k, v] : c.values) {
      w.key(k);
      w.value(v);
    }
    w.end_object();
    w.key("tol");
    w.value(c.tol);
    w.key("pass");
    w.value(c.pass);
    w.key("asserted");
    w.value(c.asserted);
    w.end_object();
  }
  w.end_array();
  w.key("pass");
  w.value(r.all_pass());
  w.end_object();
  return w.str();
}

std::string report_text(const SuiteReport& r) {
  std::ostringstream os;
  os << "suite " << r.suite << " (seed " << r.seed << ")\n";
  for (const auto& c : r.cases) {
    os << "  [" << (c.pass ? "PASS" : (c.asserted ? "FAIL" : "info")) << "] "
       << c.name;
    for (const auto& [k, v] : c.values) os << "  " << k << "=" << fmt(v);
    if (c.tol > 0) os << "  tol=" << fmt(c.tol);
    os << "\n";
  }
  os << (r.all_pass() ? "PASS" : "FAIL") << " (" << r.cases.size()
     << " cases, " << r.failures() << " failures)\n";
  return os.str();
}

Region dihedral_stable_body(const CoxeterArrangement& ca, double half_width) {
  if (ca.rank() != 2)
    throw std::invalid_argument("dihedral_stable_body: rank 2 only");
  auto elems = group_elements(ca);
  Region k;
  k.dim = 2;
  double hw = half_width;
  k.member = [elems, hw](const Vec& x) {
    for (const Mat& g : elems) {
      Vec y = mat_vec(g, x);
      if (std::fabs(y[0]) > hw || std::fabs(y[1]) > hw) return false;
    }
    return true;
  };
  k.box_lo = {-half_width, -half_width};
  k.box_hi = {half_width, half_width};
  k.symmetry = SymmetryTag::CoxeterStable;
  k.symmetry_type = ca.spec.str();
  return k;
}

int dihedral_sector_index(const Arrangement& a, const Vec& x) {
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
  auto sector_of = [&](double angle) {
    if (angle < 0) angle += 2.0 * kPi;
    int lo = static_cast<int>(
        std::upper_bound(rays.begin(), rays.end(), angle) - rays.begin());
    return (lo + static_cast<int>(rays.size()) - 1) %
           static_cast<int>(rays.size());
  };
  int base = sector_of(std::atan2(a.witness[1], a.witness[0]));
  int s = sector_of(std::atan2(x[1], x[0]));
  int m = static_cast<int>(rays.size());
  return (s - base + m) % m;
}

SuiteReport suite_vanishing(const VerifyOptions& opt) {
  SuiteReport rep;
  rep.suite = "vanishing";
  rep.seed = opt.seed;
  rep.config = {{"samples", std::to_string(opt.samples)}};

  struct Row {
    std::string spec;
    Vec shift;
    bool ball;  // ball of radius 1 vs stable box-orbit body
  };
  const std::vector<Row> rows = {{"B3", vec3(0.2, 0.1, 0.3), true},
                                 {"H3", vec3(0.2, 0.1, 0.3), true},
                                 {"I2(6)", {0.05, 0.08}, false}};
  int tag = 0;
  for (const Row& row : rows) {
    CoxeterArrangement ca = build_type(row.spec);
    Region body = row.ball ? region_ball(Vec(ca.rank(), 0.0), 1.0)
                           : dihedral_stable_body(ca, 1.0);
    Rng stab_rng(mix_seed(opt.seed, 900 + tag));
    CaseResult c = make_case(row.spec + (row.ball ? " ball" : " stable body"),
                             {"even-coxeter-vanishing"});
    if (!region_is_stable(ca, body, 200, stab_rng)) {
      c.asserted = false;
      c.refs.push_back("skipped: body not W-stable");
      rep.cases.push_back(std::move(c));
      continue;
    }
    Region shifted = region_shifted(body, row.shift);
    MCEstimate est =
        pizza_mc(ca.base, shifted, opt.samples, mix_seed(opt.seed, tag), opt.workers);
    push_value(c, "estimate", est.value);
    push_value(c, "stderr", est.stderr_);
    c.tol = 4.0 * est.stderr_;
    if (std::fabs(est.value) > c.tol) c.pass = false;
    if (row.ball) {
      double formula = pizza_ball_coxeter(ca, row.shift, 1.0, opt.quad);
      push_value(c, "formula", formula);
      if (std::fabs(formula) > 1e-8) c.pass = false;
    }
    rep.cases.push_back(std::move(c));
    ++tag;
  }

  {
    // A_1^3 is the one even Coxeter type with a nonzero product value.
    CoxeterArrangement ca = build_type("A1xA1xA1");
    Vec a = vec3(0.2, 0.3, 0.4);
    Region cube = region_box(vec3(-1, -1, -1), vec3(1, 1, 1));
    CaseResult c = make_case("A1^3 cube", {"product-formula"});
    double expected = 8.0 * 0.2 * 0.3 * 0.4;
    double fh = f_H(ca.base, a);
    push_value(c, "f_H", fh);
    push_value(c, "expected", expected);
    if (std::fabs(fh - expected) > 1e-12) c.pass = false;
    MCEstimate est = pizza_mc(ca.base, region_shifted(cube, a), opt.samples,
                              mix_seed(opt.seed, 50), opt.workers);
    push_value(c, "estimate", est.value);
    push_value(c, "stderr", est.stderr_);
    c.tol = 4.0 * est.stderr_;
    if (std::fabs(est.value - expected) > c.tol) c.pass = false;
    rep.cases.push_back(std::move(c));
  }
  return rep;
}

namespace {

Arrangement random_2d_lines(int count, std::uint64_t seed) {
  Rng rng(seed);
  std::vector<Vec> normals;
  while (static_cast<int>(normals.size()) < count) {
    double t = rng.uniform(0.0, kPi);
    Vec e = {std::cos(t), std::sin(t)};
    bool ok = true;
    for (const Vec& f : normals)
      if (std::fabs(inner(e, f)) > 1.0 - 1e-3) ok = false;
    if (ok) normals.push_back(e);
  }
  BuildOptions bo;
  bo.auto_orient = true;
  return build_arrangement(std::move(normals), std::nullopt, bo);
}

}  // namespace

SuiteReport suite_reduction(const VerifyOptions& opt) {
  SuiteReport rep;
  rep.suite = "reduction";
  rep.seed = opt.seed;
  rep.config = {{"samples", std::to_string(opt.samples)}};

  struct Row {
    std::string name;
    Arrangement arr;
    Region body;
    Vec shift;
  };
  std::vector<Row> rows;
  rows.push_back({"A1^2 + cube", build_type("A1xA1").base,
                  region_box({-1, -1}, {1, 1}), {0.5, 0.25}});
  rows.push_back({"random 3 lines + square", random_2d_lines(3, mix_seed(opt.seed, 71)),
                  region_box({-0.5, -0.5}, {0.5, 0.5}), {0.1, 0.07}});
  rows.push_back({"B2 + disc", build_type("B2").base, region_ball({0.0, 0.0}, 1.0),
                  {0.15, 0.1}});

  long long n_inner = std::max<long long>(50000, opt.samples / 16);
  int tag = 0;
  for (Row& row : rows) {
    CaseResult c = make_case(row.name, {"reduction-identity"});
    MCEstimate lhs1 = pizza_mc(row.arr, region_shifted(row.body, row.shift),
                               opt.samples, mix_seed(opt.seed, 100 + tag),
                               opt.workers);
    MCEstimate lhs0 = pizza_mc(row.arr, row.body, opt.samples,
                               mix_seed(opt.seed, 200 + tag), opt.workers);
    ReductionResult rhs = reduction_rhs(row.arr, row.body, row.shift, n_inner,
                                        opt.quad, mix_seed(opt.seed, 300 + tag),
                                        opt.workers);
    double lhs = lhs1.value - lhs0.value;
    double sigma = std::sqrt(lhs1.stderr_ * lhs1.stderr_ +
                             lhs0.stderr_ * lhs0.stderr_ +
                             rhs.stderr_ * rhs.stderr_);
    push_value(c, "lhs", lhs);
    push_value(c, "rhs", rhs.value);
    push_value(c, "difference", lhs - rhs.value);
    push_value(c, "stderr", sigma);
    c.tol = 4.0 * sigma;
    if (std::fabs(lhs - rhs.value) > c.tol) c.pass = false;
    rep.cases.push_back(std::move(c));
    ++tag;
  }
  return rep;
}

namespace {

// Recursive falsifier for the slice-vanishing property: P(arr, K) must be
// zero, and every e-slice of every e-orthogonal translate must pass
// recursively. Returns the number of detected violations; `root_violation`
// reports whether the top-level quantity already failed.
int suff_sym_recurse(const Arrangement& arr, const Region& body,
                     const VerifyOptions& opt, long long node_samples,
                     std::uint64_t tag, int grid, bool* root_violation) {
  if (arr.size() == 0) return 0;  // maximal: no condition here
  int violations = 0;
  MCEstimate est =
      pizza_mc(arr, body, node_samples, mix_seed(opt.seed, tag), opt.workers);
  if (std::fabs(est.value) > 4.0 * est.stderr_) {
    ++violations;
    if (root_violation) *root_violation = true;
  }
  if (arr.dim <= 1) return violations;
  // Offsets along each normal spanning the body's extent.
  double extent = 0.0;
  for (int i = 0; i < arr.dim; ++i)
    extent = std::max(extent, std::max(std::fabs(body.box_lo[i]),
                                       std::fabs(body.box_hi[i])));
  for (int e = 0; e < arr.size(); ++e) {
    RestrictionStep step = even_restricted(arr, e, arr.witness);
    for (int g = 0; g < grid; ++g) {
      double s = extent * (2.0 * g / (grid - 1) - 1.0);
      Vec offset = scale(arr.normals[e], s);
      Region slice = slice_region(body, step, offset, 1.0);
      violations += suff_sym_recurse(
          step.child, slice, opt, node_samples,
          tag * 131 + 7 * e + g + 1, grid, nullptr);
    }
  }
  return violations;
}

}  // namespace

SuiteReport suite_sufficiently_symmetric(const VerifyOptions& opt) {
  SuiteReport rep;
  rep.suite = "suffsym";
  rep.seed = opt.seed;
  long long node_samples =
      std::clamp<long long>(opt.samples / 100, 20000, 200000);
  rep.config = {{"node_samples", std::to_string(node_samples)}};

  {
    CaseResult c = make_case("B2 disc", {"slice-vanishing"});
    bool root = false;
    int v = suff_sym_recurse(build_type("B2").base, region_ball({0, 0}, 1.0),
                             opt, node_samples, 1, 9, &root);
    push_value(c, "violations", v);
    c.pass = v == 0;
    rep.cases.push_back(std::move(c));
  }
  {
    // Four lines whose alternating angle sum misses pi/2: the disc fails at
    // the top level.
    std::vector<Vec> normals;
    for (double t : {0.0, 0.5, 1.1, 2.0}) {
      double psi = t + 0.5 * kPi;
      normals.push_back({std::cos(psi), std::sin(psi)});
    }
    BuildOptions bo;
    bo.auto_orient = true;
    Arrangement arr = build_arrangement(std::move(normals), std::nullopt, bo);
    CaseResult c = make_case("4 lines, unbalanced angles", {"slice-vanishing"});
    bool root = false;
    int v = suff_sym_recurse(arr, region_ball({0, 0}, 1.0), opt, node_samples,
                             2, 9, &root);
    push_value(c, "violations", v);
    push_value(c, "root_violation", root ? 1 : 0);
    c.pass = root;  // the falsifier must detect it at the root
    rep.cases.push_back(std::move(c));
  }
  {
    // Seven planes in R^3 (pairs at slopes +-alpha, +-beta around two axes
    // plus the three coordinate planes): even, and the unit ball passes.
    const double alpha = 0.8, beta = 1.3;
    std::vector<Vec> normals = {
        {1, 0, 0},
        normalize({1, -alpha, 0}),
        normalize({1, alpha, 0}),
        {0, 1, 0},
        normalize({0, -beta, 1}),
        normalize({0, beta, 1}),
        {0, 0, 1},
    };
    BuildOptions bo;
    bo.auto_orient = true;
    Arrangement arr = build_arrangement(std::move(normals), std::nullopt, bo);
    CaseResult c = make_case("7 planes in R^3", {"slice-vanishing"});
    push_value(c, "is_even", is_even_arrangement(arr) ? 1 : 0);
    bool root = false;
    int v = suff_sym_recurse(arr, region_ball(vec3(0, 0, 0), 1.0), opt,
                             node_samples, 3, 9, &root);
    push_value(c, "violations", v);
    c.pass = v == 0 && is_even_arrangement(arr);
    rep.cases.push_back(std::move(c));
  }
  return rep;
}

SuiteReport suite_surface(const VerifyOptions& opt) {
  SuiteReport rep;
  rep.suite = "surface";
  rep.seed = opt.seed;
  rep.config = {{"samples", std::to_string(opt.samples)}};
  struct Row {
    std::string spec;
    Vec center;
  };
  const std::vector<Row> rows = {{"I2(4)", {0.3, 0.1}},
                                 {"I2(6)", {0.3, 0.1}},
                                 {"B3", vec3(0.2, 0.1, 0.3)},
                                 {"A2xE1", vec3(0.2, 0.1, 0.3)}};
  int tag = 0;
  for (const Row& row : rows) {
    CoxeterArrangement ca = build_type(row.spec);
    CaseResult c = make_case(row.spec + " sphere", {"surface-vanishing"});
    MCEstimate est = surface_alt_sum_mc(ca.base, row.center, 1.0, opt.samples,
                                        mix_seed(opt.seed, 400 + tag), opt.workers);
    assert_small(c, "estimate", est.value, 4.0 * est.stderr_);
    push_value(c, "stderr", est.stderr_);
    rep.cases.push_back(std::move(c));
    ++tag;
  }
  return rep;
}

SuiteReport suite_sharing(const VerifyOptions& opt) {
  SuiteReport rep;
  rep.suite = "sharing";
  rep.seed = opt.seed;
  rep.config = {{"samples", std::to_string(opt.samples)},
                {"k", std::to_string(opt.sharing_k)},
                {"p", std::to_string(opt.sharing_p)}};

  const int k = opt.sharing_k;
  std::vector<int> ps;
  if (opt.sharing_p > 0) {
    ps.push_back(opt.sharing_p);
  } else {
    for (int p = 2; p < k; ++p)
      if (k % p == 0) ps.push_back(p);
  }
  CoxeterArrangement ca = build_type("I2(" + std::to_string(k) + ")");
  const Vec a = {0.2, 0.3};
  const Region disc = region_ball({0.0, 0.0}, 1.0);
  const double vol = kPi;

  for (int p : ps) {
    if (k % p != 0 || p >= k) {
      CaseResult c = make_case("k=" + std::to_string(k) + " p=" + std::to_string(p),
                               {"sharing", "skipped: p must divide k"});
      c.asserted = false;
      rep.cases.push_back(std::move(c));
      continue;
    }
    // Labeled-sector estimate: each sample binned by sector index mod p.
    constexpr int kBatches = 64;
    long long per_batch = (opt.samples + kBatches - 1) / kBatches;
    std::vector<std::vector<double>> class_means(p, std::vector<double>(kBatches));
    for (int b = 0; b < kBatches; ++b) {
      Rng rng(mix_seed(opt.seed, 500 + p), b);
      std::vector<long long> counts(p, 0);
      for (long long i = 0; i < per_batch; ++i) {
        Vec x;
        int idx = -1;
        for (int attempt = 0; attempt < 1000 && idx < 0; ++attempt) {
          x = add(sample_ball({0.0, 0.0}, 1.0, rng), a);
          if (chamber_sign_or_zero(ca.base, x) != 0)
            idx = dihedral_sector_index(ca.base, x);
        }
        if (idx < 0) throw std::runtime_error("sharing: persistent wall hits");
        ++counts[idx % p];
      }
      for (int r = 0; r < p; ++r)
        class_means[r][b] = vol * static_cast<double>(counts[r]) / per_batch;
    }
    CaseResult c = make_case("k=" + std::to_string(k) + " p=" + std::to_string(p),
                             {"sharing"});
    double target = vol / p;
    push_value(c, "target", target);
    double worst = 0.0, worst_tol = 0.0;
    for (int r = 0; r < p; ++r) {
      double mean = tree_sum(class_means[r]) / kBatches;
      double ss = 0.0;
      for (double m : class_means[r]) ss += (m - mean) * (m - mean);
      double se = std::sqrt(ss / (kBatches - 1)) / std::sqrt(kBatches);
      push_value(c, "share_" + std::to_string(r), mean);
      push_value(c, "stderr_" + std::to_string(r), se);
      if (std::fabs(mean - target) > worst) {
        worst = std::fabs(mean - target);
        worst_tol = 4.0 * se;
      }
      if (std::fabs(mean - target) > 4.0 * se) c.pass = false;
    }
    push_value(c, "max_deviation", worst);
    c.tol = worst_tol;
    rep.cases.push_back(std::move(c));
  }
  return rep;
}

SuiteReport suite_classification(const VerifyOptions& opt) {
  SuiteReport rep;
  rep.suite = "classification";
  rep.seed = opt.seed;
  struct Row {
    const char* spec;
    bool expected;
  };
  const std::vector<Row> table = {
      {"A1", true},    {"A2", false},   {"A3", false}, {"A4", false},
      {"B2", true},    {"B3", true},    {"B4", true},  {"D4", true},
      {"D5", false},   {"E6", false},   {"E7", true},  {"E8", true},
      {"F4", true},    {"H3", true},    {"H4", true},  {"I2(5)", false},
      {"I2(6)", true}};
  for (const Row& row : table) {
    CoxeterArrangement ca = build_type(row.spec);
    CaseResult c = make_case(row.spec, {"minus-id-classification"});
    bool got = minus_id_in_group(ca);
    push_value(c, "minus_id", got ? 1 : 0);
    push_value(c, "expected", row.expected ? 1 : 0);
    if (got != row.expected) c.pass = false;
    if (ca.rank() <= 4) {
      bool even = is_even_arrangement(ca.base);
      push_value(c, "is_even", even ? 1 : 0);
      if (even != row.expected) c.pass = false;
    }
    rep.cases.push_back(std::move(c));
  }
  return rep;
}

SuiteReport probe_conjecture(const VerifyOptions& opt) {
  SuiteReport rep;
  rep.suite = "conjecture";
  rep.seed = opt.seed;
  const int dim = opt.conjecture_dim;
  rep.config = {{"dim", std::to_string(dim)},
                {"trials", std::to_string(opt.conjecture_trials)},
                {"samples", std::to_string(opt.samples)}};
  if (dim != 2 && dim != 3)
    throw std::invalid_argument("probe_conjecture: dim must be 2 or 3");
  CoxeterArrangement ca = build_type(dim == 2 ? "A2" : "A3");
  const bool asserted = dim == 2;
  long long per_trial = std::max<long long>(200000, opt.samples / 8);

  Rng draw(mix_seed(opt.seed, 600));
  int decided = 0, mismatches = 0;
  for (int t = 0; t < opt.conjecture_trials; ++t) {
    // Center in a chamber interior: margin above 0.05, radius in [0.3, 0.75].
    Vec a;
    for (int attempt = 0;; ++attempt) {
      if (attempt > 10000)
        throw std::runtime_error("probe_conjecture: cannot draw a center");
      a = sample_sphere(Vec(dim, 0.0), 1.0, draw);
      a = scale(a, draw.uniform(0.3, 0.75));
      double margin = std::numeric_limits<double>::infinity();
      for (const Vec& e : ca.base.normals)
        margin = std::min(margin, std::fabs(inner(e, a)));
      if (margin > 0.05) break;
    }
    int expected_sign = chamber_sign(ca.base, a);
    MCEstimate est = pizza_mc(ca.base, region_ball(a, 1.0), per_trial,
                              mix_seed(opt.seed, 700 + t), opt.workers);
    bool is_decided = std::fabs(est.value) > 4.0 * est.stderr_;
    CaseResult c = make_case("trial " + std::to_string(t), {"sign-conjecture"});
    c.asserted = false;
    push_value(c, "estimate", est.value);
    push_value(c, "stderr", est.stderr_);
    push_value(c, "chamber_sign", expected_sign);
    push_value(c, "decided", is_decided ? 1 : 0);
    if (is_decided) {
      ++decided;
      bool match = (est.value > 0) == (expected_sign > 0);
      push_value(c, "match", match ? 1 : 0);
      if (!match) {
        ++mismatches;
        c.pass = false;
      }
    }
    rep.cases.push_back(std::move(c));
  }
  CaseResult summary = make_case("summary", {"sign-conjecture"});
  push_value(summary, "decided", decided);
  push_value(summary, "mismatches", mismatches);
  summary.asserted = asserted;
  summary.pass = decided >= 20 && mismatches == 0;
  rep.cases.push_back(std::move(summary));
  return rep;
}

SuiteReport suite_r_independence(const VerifyOptions& opt) {
  SuiteReport rep;
  rep.suite = "rindep";
  rep.seed = opt.seed;
  rep.config = {{"samples", std::to_string(opt.samples)}};

  {
    CoxeterArrangement ca = build_type("A2xE1");
    Vec a = vec3(0.2, 0.1, 0.3);
    std::vector<int> subsystem = {0, 1, 2};
    auto r = r_independence_check(ca, subsystem, a, {0.4, 1.0, 2.0, 5.0},
                                  Engine::MC, opt.samples,
                                  mix_seed(opt.seed, 800), opt.workers, opt.quad);
    CaseResult c = make_case("A2xE1 ball radii", {"radius-independence"});
    for (std::size_t i = 0; i < r.scan.radii.size(); ++i)
      push_value(c, "P_R" + std::to_string(i), r.scan.values[i]);
    push_value(c, "max_deviation", r.max_deviation);
    push_value(c, "max_pair_stderr", r.max_pair_stderr);
    c.tol = 4.0 * r.max_pair_stderr;
    c.pass = r.deviations_within_4sigma;
    rep.cases.push_back(std::move(c));
  }
  {
    CoxeterArrangement ca = build_type("A1xA1xA1");
    Vec a = vec3(0.2, 0.3, 0.4);
    auto r = r_independence_check(ca, {0, 1, 2}, a, {0.6, 1.0, 2.0, 4.0},
                                  Engine::Formula, 0, opt.seed, opt.workers,
                                  opt.quad);
    CaseResult c = make_case("A1^3 ball radii", {"radius-independence"});
    push_value(c, "max_deviation", r.max_deviation);
    push_value(c, "fitted_c", r.fitted_coefficient);
    push_value(c, "expected_c", 8.0);
    c.tol = 1e-8;
    c.pass = r.max_deviation <= 1e-8 &&
             std::fabs(r.fitted_coefficient - 8.0) <= 1e-6;
    rep.cases.push_back(std::move(c));
  }
  {
    // Four lines with alternating angle sum pi/2: radius independence holds
    // without any Coxeter symmetry.
    double t1 = 0.4, t3 = 1.8;
    double t2 = t1 + t3 - 0.5 * kPi;
    std::vector<Vec> normals;
    for (double t : {0.0, t1, t2, t3}) {
      double psi = t + 0.5 * kPi;
      normals.push_back({std::cos(psi), std::sin(psi)});
    }
    BuildOptions bo;
    bo.auto_orient = true;
    Arrangement arr = build_arrangement(std::move(normals), std::nullopt, bo);
    Vec a = {0.12, 0.05};
    std::vector<double> radii = {0.5, 1.0, 2.0, 4.0};
    CaseResult c = make_case("4 balanced lines", {"radius-independence"});
    std::vector<double> vals;
    for (double radius : radii)
      vals.push_back(pizza_exact_2d(arr, a, radius, opt.quad));
    double dev = 0.0;
    for (std::size_t i = 0; i < vals.size(); ++i) {
      push_value(c, "P_R" + std::to_string(i), vals[i]);
      for (std::size_t j = i + 1; j < vals.size(); ++j)
        dev = std::max(dev, std::fabs(vals[i] - vals[j]));
    }
    assert_small(c, "max_deviation", dev, 1e-8);
    rep.cases.push_back(std::move(c));
  }
  {
    // Even powers of R only: fit the polynomial through a 7-point stencil
    // and look for odd-degree coefficients.
    CoxeterArrangement ca = build_type("B2");
    Vec a = {0.3, 0.1};
    std::vector<double> radii, values;
    for (int j = -3; j <= 3; ++j) {
      radii.push_back(1.0 + 0.05 * j);
      values.push_back(pizza_ball_coxeter(ca, a, radii.back(), opt.quad));
    }
    CaseResult c = make_case("B2 even-power stencil", {"even-radius-powers"});
    assert_small(c, "odd_component", max_odd_radius_coefficient(radii, values),
                 1e-7);
    rep.cases.push_back(std::move(c));
  }
  return rep;
}

SuiteReport suite_decay(const VerifyOptions& opt) {
  SuiteReport rep;
  rep.suite = "decay";
  rep.seed = opt.seed;
  std::vector<double> radii = {1, 2, 4, 8, 16, 32, 64};
  struct Row {
    std::string spec;
    Vec a;
  };
  const std::vector<Row> rows = {{"A2", {0.4, 0.1}}, {"I2(5)", {0.3, 0.15}}};
  for (const Row& row : rows) {
    CoxeterArrangement ca = build_type(row.spec);
    DecayReport d = decay_probe(ca, row.a, radii, Engine::Exact2D, 0, opt.seed,
                                opt.workers, opt.quad, 1e-3);
    CaseResult c = make_case(row.spec + " decay", {"radius-decay"});
    for (std::size_t i = 0; i < radii.size(); ++i)
      push_value(c, "P_R" + fmt(radii[i]), d.scan.values[i]);
    push_value(c, "final_abs", d.final_abs);
    push_value(c, "tail_monotone", d.tail_monotone ? 1 : 0);
    c.tol = d.threshold;
    c.pass = d.tail_monotone && d.below_threshold;
    rep.cases.push_back(std::move(c));
  }
  return rep;
}

SuiteReport suite_oracle_2d(const VerifyOptions& opt) {
  SuiteReport rep;
  rep.suite = "oracle2d";
  rep.seed = opt.seed;
  rep.config = {{"samples", std::to_string(opt.samples)}};
  std::vector<std::pair<std::string, Arrangement>> arrs;
  for (const char* s : {"A2", "B2", "I2(5)", "I2(6)", "I2(7)"})
    arrs.emplace_back(s, build_type(s).base);
  Rng rng(mix_seed(opt.seed, 1000));
  for (int i = 0; i < 5; ++i) {
    int lines = 3 + static_cast<int>(rng.next_u64() % 4);
    arrs.emplace_back("random" + std::to_string(lines) + "_" + std::to_string(i),
                      random_2d_lines(lines, mix_seed(opt.seed, 1100 + i)));
  }
  long long n = std::max<long long>(500000, opt.samples / 2);
  int tag = 0;
  for (auto& [name, arr] : arrs) {
    Vec a = {rng.uniform(-0.4, 0.4), rng.uniform(-0.4, 0.4)};
    double radius = rng.uniform(std::max(0.9, norm(a) + 0.1), 1.6);
    double exact = pizza_exact_2d(arr, a, radius, opt.quad);
    MCEstimate est = pizza_mc(arr, region_ball(a, radius), n,
                              mix_seed(opt.seed, 1200 + tag), opt.workers);
    CaseResult c = make_case(name, {"oracle-agreement"});
    push_value(c, "exact", exact);
    push_value(c, "mc", est.value);
    push_value(c, "stderr", est.stderr_);
    assert_small(c, "difference", est.value - exact, 4.0 * est.stderr_);
    rep.cases.push_back(std::move(c));
    ++tag;
  }
  return rep;
}

SuiteReport suite_determinism(const VerifyOptions& opt) {
  SuiteReport rep;
  rep.suite = "determinism";
  rep.seed = opt.seed;
  long long n = std::min<long long>(opt.samples, 256000);
  rep.config = {{"samples", std::to_string(n)}};

  CoxeterArrangement b3 = build_type("B3");
  Region ball = region_ball(vec3(0.2, 0.1, 0.3), 1.0);
  {
    CaseResult c = make_case("pizza_mc workers {1,4,16} + serial",
                             {"seed-determinism"});
    MCEstimate w1 = pizza_mc(b3.base, ball, n, opt.seed, 1);
    MCEstimate w4 = pizza_mc(b3.base, ball, n, opt.seed, 4);
    MCEstimate w16 = pizza_mc(b3.base, ball, n, opt.seed, 16);
    MCEstimate ser = pizza_mc_serial(b3.base, ball, n, opt.seed);
    push_value(c, "w1", w1.value);
    push_value(c, "w4", w4.value);
    push_value(c, "w16", w16.value);
    push_value(c, "serial", ser.value);
    c.pass = w1.value == w4.value && w4.value == w16.value &&
             w16.value == ser.value && w1.stderr_ == ser.stderr_;
    rep.cases.push_back(std::move(c));
  }
  {
    CaseResult c = make_case("surface report bytes workers {1,4}",
                             {"seed-determinism"});
    VerifyOptions o1 = opt;
    o1.samples = n;
    o1.workers = 1;
    VerifyOptions o4 = o1;
    o4.workers = 4;
    bool same = report_json(suite_surface(o1)) == report_json(suite_surface(o4));
    push_value(c, "bytes_equal", same ? 1 : 0);
    c.pass = same;
    rep.cases.push_back(std::move(c));
  }
  {
    CaseResult c = make_case("classification rerun bytes", {"seed-determinism"});
    bool same = report_json(suite_classification(opt)) ==
                report_json(suite_classification(opt));
    push_value(c, "bytes_equal", same ? 1 : 0);
    c.pass = same;
    rep.cases.push_back(std::move(c));
  }
  return rep;
}

}  // namespace pizza
