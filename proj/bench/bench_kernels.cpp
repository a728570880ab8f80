// Serial references against the OpenMP kernels. Arg is the thread count;
// the *_serial cases call the reference routines with no parallel region.

#include <benchmark/benchmark.h>

#include "pearl/io.hpp"
#include "pearl/kleinian.hpp"
#include "pearl/necklace.hpp"
#include "pearl/obc.hpp"

using namespace pearl;

namespace {

Box<std::int64_t> qbox(int d, std::int64_t lo, std::int64_t hi) {
  Box<std::int64_t> b{QPoint(d), QPoint(d)};
  for (int i = 0; i < d; ++i) {
    b.lo[i] = lo;
    b.hi[i] = hi;
  }
  return b;
}

const IncreasedNecklace& trefoil() {
  static IncreasedNecklace t = increase_necklace(build_necklace(sample_knot("trefoil", 1)));
  return t;
}

OrbitOptions orbit_opts(int threads) {
  OrbitOptions o;
  o.depth = 2;
  o.min_radius = 0.05;
  o.threads = threads;
  return o;
}

void pair_census_serial_d5(benchmark::State& s) {
  auto b = qbox(5, -4, 12);
  for (auto _ : s) benchmark::DoNotOptimize(pair_census_serial(5, b));
}

void pair_census_parallel_d5(benchmark::State& s) {
  auto b = qbox(5, -4, 12);
  for (auto _ : s) benchmark::DoNotOptimize(pair_census(5, b, static_cast<int>(s.range(0))));
}

void orbit_serial(benchmark::State& s) {
  const auto& t = trefoil();
  auto balls = t.balls();
  for (auto _ : s) benchmark::DoNotOptimize(orbit_stage_serial(balls, t.base.pearls, orbit_opts(1)));
}

void orbit_parallel(benchmark::State& s) {
  const auto& t = trefoil();
  for (auto _ : s) benchmark::DoNotOptimize(orbit_stage(t, orbit_opts(static_cast<int>(s.range(0)))));
}

void nesting(benchmark::State& s) {
  static GenerationLedger l = orbit_stage_serial(trefoil().balls(), trefoil().base.pearls, orbit_opts(1));
  NestingOptions o;
  o.threads = static_cast<int>(s.range(0));
  for (auto _ : s) benchmark::DoNotOptimize(nesting_audit(l, o));
}

void disjointness(benchmark::State& s) {
  DisjointnessOptions o;
  o.threads = static_cast<int>(s.range(0));
  auto w = cube_box(4, Rational(-2), Rational(4));
  for (auto _ : s) benchmark::DoNotOptimize(disjointness_audit(4, w, o));
}

}  // namespace

BENCHMARK(pair_census_serial_d5)->Unit(benchmark::kMillisecond);
BENCHMARK(pair_census_parallel_d5)->Arg(1)->Arg(2)->Arg(4)->Unit(benchmark::kMillisecond);
BENCHMARK(orbit_serial)->Unit(benchmark::kMillisecond);
BENCHMARK(orbit_parallel)->Arg(1)->Arg(2)->Arg(4)->Unit(benchmark::kMillisecond);
BENCHMARK(nesting)->Arg(1)->Arg(2)->Arg(4)->Unit(benchmark::kMillisecond);
BENCHMARK(disjointness)->Arg(1)->Arg(2)->Arg(4)->Unit(benchmark::kMillisecond);

BENCHMARK_MAIN();
