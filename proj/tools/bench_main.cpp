// Serial-vs-parallel benchmark for the hot kernels: the prefix partition sum
// and the Monte-Carlo sampler. Verifies that both code paths agree bit-for-bit
// before timing them.
#include "cfdim/classify.hpp"
#include "cfdim/pressure.hpp"

#include <chrono>
#include <cstdio>
#include <cstdlib>

#ifdef _OPENMP
#include <omp.h>
#endif

using namespace cfdim;

namespace {

template <typename F>
double time_ms(F&& f, int reps = 3) {
  double best = 1e300;
  for (int r = 0; r < reps; ++r) {
    const auto t0 = std::chrono::steady_clock::now();
    f();
    const auto t1 = std::chrono::steady_clock::now();
    best = std::min(best, std::chrono::duration<double, std::milli>(t1 - t0).count());
  }
  return best;
}

}  // namespace

int main() {
#ifdef _OPENMP
  std::printf("threads: %d\n", omp_get_max_threads());
#else
  std::printf("threads: 1 (built without OpenMP)\n");
#endif

  // Partition sum: wide alphabet, moderate depth.
  PressureProblem prob;
  prob.M = 40;
  prob.B = 2.0;
  prob.m = 2;
  prob.s = 0.62;
  const int n = 5;

  PartitionOptions serial, parallel;
  serial.method = parallel.method = PartitionMethod::prefix;
  serial.parallel = false;
  parallel.parallel = true;

  const double v_serial = partition_sum(n, prob, serial).value.log();
  const double v_parallel = partition_sum(n, prob, parallel).value.log();
  std::printf("partition n=%d M=%lld: serial=%.17g parallel=%.17g %s\n", n,
              static_cast<long long>(prob.M), v_serial, v_parallel,
              v_serial == v_parallel ? "(bit-identical)" : "(MISMATCH!)");
  if (v_serial != v_parallel) return 1;

  const double t_serial = time_ms([&] { (void)partition_sum(n, prob, serial); });
  const double t_parallel = time_ms([&] { (void)partition_sum(n, prob, parallel); });
  std::printf("partition timing: serial %.1f ms, parallel %.1f ms, speedup %.2fx\n", t_serial,
              t_parallel, t_serial / t_parallel);

  // Monte Carlo: the sampler parallelizes across samples with derived seeds,
  // so the event count is order-independent by construction.
  auto phi = GrowthFunction::power(1.0);
  const auto mc = [&] { return monte_carlo_law(phi, 200'000, 1000, 7, LawTag::borel_bernstein); };
  const double f1 = mc().fraction;
#ifdef _OPENMP
  const int saved = omp_get_max_threads();
  omp_set_num_threads(1);
  const double f0 = mc().fraction;
  omp_set_num_threads(saved);
#else
  const double f0 = mc().fraction;
#endif
  std::printf("montecarlo fraction: serial=%.17g parallel=%.17g %s\n", f0, f1,
              f0 == f1 ? "(identical)" : "(MISMATCH!)");
  if (f0 != f1) return 1;
  const double t_mc = time_ms([&] { (void)mc(); });
  std::printf("montecarlo timing: %.1f ms for 2e5 samples\n", t_mc);
  return 0;
}
