// Acceptance suite: one line per criterion, failure exit code when any
// asserted criterion fails. Budget: ~10 minutes on a 4-core desktop.

#include <chrono>
#include <cmath>
#include <cstdio>
#include <string>
#include <thread>

#include "pizza/formulas.hpp"
#include "pizza/integrate.hpp"
#include "pizza/verify.hpp"

using namespace pizza;

namespace {

int failures = 0;

struct Timer {
  std::chrono::steady_clock::time_point t0 = std::chrono::steady_clock::now();
  double s() const {
    return std::chrono::duration<double>(std::chrono::steady_clock::now() - t0)
        .count();
  }
};

void report(int criterion, const std::string& name, bool pass, double seconds,
            const std::string& detail) {
  std::printf("criterion %2d [%s] %s (%.1fs) %s\n", criterion, name.c_str(),
              pass ? "PASS" : "FAIL", seconds, detail.c_str());
  std::fflush(stdout);
  if (!pass) ++failures;
}

std::string fmt(const char* f, double a, double b = 0, double c = 0) {
  char buf[256];
  std::snprintf(buf, sizeof buf, f, a, b, c);
  return buf;
}

int workers() {
  unsigned hw = std::thread::hardware_concurrency();
  return hw == 0 ? 1 : static_cast<int>(hw);
}

bool suite_ok(const SuiteReport& r, std::string* detail) {
  int asserted = 0;
  for (const auto& c : r.cases)
    if (c.asserted) ++asserted;
  char buf[128];
  std::snprintf(buf, sizeof buf, "%d asserted cases, %d failures", asserted,
                r.failures());
  *detail = buf;
  return r.all_pass();
}

}  // namespace

int main() {
  const std::uint64_t seed = 42;
  const int nworkers = workers();
  VerifyOptions opt;
  opt.seed = seed;
  opt.samples = 4000000;
  opt.workers = nworkers;

  {  // 1. classical pizza theorem on I2(4) and I2(6)
    Timer t;
    bool pass = true;
    std::string detail;
    for (const char* spec : {"I2(4)", "I2(6)"}) {
      CoxeterArrangement ca = build_type(spec);
      double exact = pizza_exact_2d(ca.base, {0.3, 0.1}, 1.0);
      MCEstimate est = pizza_mc(ca.base, region_ball({0.3, 0.1}, 1.0), 4000000,
                                mix_seed(seed, 1), nworkers);
      pass = pass && std::fabs(exact) <= 1e-8 &&
             std::fabs(est.value) <= 4 * est.stderr_ && est.stderr_ < 2e-3;
      detail += fmt("|exact|=%.2e |mc|=%.2e se=%.2e  ", std::fabs(exact),
                    std::fabs(est.value), est.stderr_);
    }
    report(1, "classical-pizza", pass, t.s(), detail);
  }

  {  // 2. A1^3 product formula on the shifted cube
    Timer t;
    CoxeterArrangement axes = build_type("A1xA1xA1");
    Vec a = {0.2, 0.3, 0.4};
    double fh = f_H(axes.base, a);
    MCEstimate est =
        pizza_mc(axes.base, region_shifted(region_box({-1, -1, -1}, {1, 1, 1}), a),
                 4000000, mix_seed(seed, 2), nworkers);
    bool pass = std::fabs(fh - 0.192) <= 1e-12 &&
                std::fabs(est.value - 0.192) <= 4 * est.stderr_;
    report(2, "product-formula", pass, t.s(),
           fmt("f_H=%.17g mc=%.6f se=%.2e", fh, est.value, est.stderr_));
  }

  {  // 3. even-Coxeter vanishing for B3 and H3 balls
    Timer t;
    bool pass = true;
    std::string detail;
    for (const char* spec : {"B3", "H3"}) {
      CoxeterArrangement ca = build_type(spec);
      Vec a = {0.2, 0.1, 0.3};
      double formula = pizza_ball_coxeter(ca, a, 1.0);
      MCEstimate est = pizza_mc(ca.base, region_ball(a, 1.0), 4000000,
                                mix_seed(seed, 3), nworkers);
      pass = pass && std::fabs(formula) <= 1e-8 &&
             std::fabs(est.value) <= 4 * est.stderr_;
      detail += fmt("|formula|=%.2e |mc|=%.2e  ", std::fabs(formula),
                    std::fabs(est.value));
    }
    report(3, "even-coxeter-vanishing", pass, t.s(), detail);
  }

  {  // 4. classification table
    Timer t;
    std::string detail;
    bool pass = suite_ok(suite_classification(opt), &detail);
    report(4, "classification-table", pass, t.s(), detail);
  }

  {  // 5. reduction identity
    Timer t;
    std::string detail;
    bool pass = suite_ok(suite_reduction(opt), &detail);
    report(5, "reduction-identity", pass, t.s(), detail);
  }

  {  // 6. oracle equivalence on ten 2-D arrangements
    Timer t;
    std::string detail;
    bool pass = suite_ok(suite_oracle_2d(opt), &detail);
    report(6, "oracle-equivalence", pass, t.s(), detail);
  }

  {  // 7. radius independence + even powers
    Timer t;
    std::string detail;
    bool pass = suite_ok(suite_r_independence(opt), &detail);
    report(7, "radius-independence", pass, t.s(), detail);
  }

  {  // 8. decay on A2 out to R = 64
    Timer t;
    CoxeterArrangement a2 = build_type("A2");
    DecayReport d = decay_probe(a2, {0.4, 0.1}, {1, 2, 4, 8, 16, 32, 64},
                                Engine::Exact2D, 0, seed, nworkers);
    bool pass = d.tail_monotone && d.final_abs < 1e-3;
    report(8, "radius-decay", pass, t.s(),
           fmt("|P(64)|=%.2e monotone_tail=%.0f", d.final_abs,
               d.tail_monotone ? 1.0 : 0.0));
  }

  {  // 9. surface theorem
    Timer t;
    std::string detail;
    bool pass = suite_ok(suite_surface(opt), &detail);
    report(9, "surface-vanishing", pass, t.s(), detail);
  }

  {  // 10. sharing k=6, p in {2,3}
    Timer t;
    bool pass = true;
    std::string detail;
    for (int p : {2, 3}) {
      VerifyOptions o = opt;
      o.sharing_k = 6;
      o.sharing_p = p;
      std::string d;
      pass = suite_ok(suite_sharing(o), &d) && pass;
      detail += "p=" + std::to_string(p) + ": " + d + "  ";
    }
    report(10, "sharing", pass, t.s(), detail);
  }

  {  // 11. conjecture probe on A2
    Timer t;
    VerifyOptions o = opt;
    o.conjecture_dim = 2;
    o.conjecture_trials = 36;
    SuiteReport r = probe_conjecture(o);
    int decided = 0, mismatches = -1;
    for (const auto& c : r.cases)
      if (c.name == "summary")
        for (const auto& [k, v] : c.values) {
          if (k == "decided") decided = static_cast<int>(v);
          if (k == "mismatches") mismatches = static_cast<int>(v);
        }
    bool pass = decided >= 20 && mismatches == 0;
    report(11, "sign-conjecture-2d", pass, t.s(),
           fmt("decided=%.0f mismatches=%.0f", decided, mismatches));
  }

  {  // 12. determinism across worker counts
    Timer t;
    std::string detail;
    bool pass = suite_ok(suite_determinism(opt), &detail);
    report(12, "determinism", pass, t.s(), detail);
  }

  std::printf("%s (%d failure%s)\n", failures == 0 ? "ACCEPTANCE PASS" : "ACCEPTANCE FAIL",
              failures, failures == 1 ? "" : "s");
  return failures == 0 ? 0 : 1;
}
