// Times the OpenMP sampling kernels against the serial reference and checks
// they produce bit-identical estimates.

#include <chrono>
#include <cstdio>
#include <thread>

#include "pizza/coxeter.hpp"
#include "pizza/integrate.hpp"

using namespace pizza;
using clk = std::chrono::steady_clock;

namespace {

double seconds_since(clk::time_point t0) {
  return std::chrono::duration<double>(clk::now() - t0).count();
}

template <typename F>
double time_best_of(int reps, F&& fn) {
  double best = 1e300;
  for (int i = 0; i < reps; ++i) {
    auto t0 = clk::now();
    fn();
    best = std::min(best, seconds_since(t0));
  }
  return best;
}

}  // namespace

int main(int argc, char** argv) {
  long long n = argc > 1 ? std::atoll(argv[1]) : 2000000;
  int workers = static_cast<int>(std::thread::hardware_concurrency());
  if (workers == 0) workers = 1;

  CoxeterArrangement b3 = build_type("B3");
  Region ball = region_ball({0.2, 0.1, 0.3}, 1.0);

  MCEstimate serial_est, parallel_est;
  double t_serial = time_best_of(3, [&] {
    serial_est = pizza_mc_serial(b3.base, ball, n, 42);
  });
  double t_parallel = time_best_of(3, [&] {
    parallel_est = pizza_mc(b3.base, ball, n, 42, workers);
  });
  bool identical = serial_est.value == parallel_est.value &&
                   serial_est.stderr_ == parallel_est.stderr_;

  std::printf("pizza_mc B3 ball, N=%lld\n", n);
  std::printf("  serial      %8.3fs  %7.2f Msamples/s\n", t_serial,
              n / t_serial / 1e6);
  std::printf("  %2d threads  %8.3fs  %7.2f Msamples/s  speedup %.2fx\n",
              workers, t_parallel, n / t_parallel / 1e6,
              t_serial / t_parallel);
  std::printf("  bit-identical: %s (value %.12g)\n", identical ? "yes" : "NO",
              parallel_est.value);

  MCEstimate s2, p2;
  double ts2 = time_best_of(3, [&] {
    s2 = surface_alt_sum_mc_serial(b3.base, {0.2, 0.1, 0.3}, 1.0, n, 42);
  });
  double tp2 = time_best_of(3, [&] {
    p2 = surface_alt_sum_mc(b3.base, {0.2, 0.1, 0.3}, 1.0, n, 42, workers);
  });
  bool id2 = s2.value == p2.value;
  std::printf("surface_alt_sum_mc B3 sphere, N=%lld\n", n);
  std::printf("  serial      %8.3fs  %7.2f Msamples/s\n", ts2, n / ts2 / 1e6);
  std::printf("  %2d threads  %8.3fs  %7.2f Msamples/s  speedup %.2fx\n",
              workers, tp2, n / tp2 / 1e6, ts2 / tp2);
  std::printf("  bit-identical: %s\n", id2 ? "yes" : "NO");
  return identical && id2 ? 0 : 1;
}
