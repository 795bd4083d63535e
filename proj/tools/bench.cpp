#include <chrono>
#include <cstdio>

#ifdef _OPENMP
#include <omp.h>
#endif

#include "tr/config.hpp"
#include "tr/recursion.hpp"
#include "tr/reference.hpp"
#include "tr/selftest.hpp"

using namespace tr;

namespace {

double now() {
  return std::chrono::duration<double>(std::chrono::steady_clock::now().time_since_epoch())
      .count();
}

template <class F>
void bench_case(const CurveConfig& cc, const char* label, long g, long n) {
  double te, tr_;
  size_t keys;
  {
    auto cur = build_curve<F>(cc);
    OmegaTable<F> t(cur);
    double t0 = now();
    keys = t.omega(g, n).c.size();
    te = now() - t0;
  }
  {
    auto cur = build_curve<F>(cc);
    RefTable<F> t(cur);
    double t0 = now();
    t.canonical(g, n);
    tr_ = now() - t0;
  }
  std::printf("%-10s omega(%ld,%ld)  engine %8.3fs  reference %8.3fs  x%.1f  (%zu keys)\n",
              label, g, n, te, tr_, tr_ / te, keys);
}

}  // namespace

int main() {
#ifdef _OPENMP
  std::printf("engine threads: %d\n", omp_get_max_threads());
#else
  std::printf("engine threads: 1 (no OpenMP)\n");
#endif
  std::string dir = corpus_dir();
  auto c3 = load_curve_config(dir + "/c3.json");
  auto conifold = load_curve_config(dir + "/conifold.json");
  Prec::bits = conifold.precision;

  bench_case<Rat>(c3, "c3", 0, 4);
  bench_case<Rat>(c3, "c3", 1, 2);
  bench_case<Rat>(c3, "c3", 2, 1);
  bench_case<Rat>(c3, "c3", 1, 3);
  bench_case<CNum>(conifold, "conifold", 1, 2);
  bench_case<CNum>(conifold, "conifold", 2, 1);
  return 0;
}
