#include <benchmark/benchmark.h>

#include "reflexive/fan.hpp"
#include "reflexive/kernels.hpp"
#include "reflexive/polytope.hpp"
#include "reflexive/triangulate.hpp"

using namespace reflexive;
using kernels::Mode;

namespace {

IntVector row(std::initializer_list<long> xs) {
  IntVector v;
  for (long x : xs) v.emplace_back(x);
  return v;
}

// Newton polytope of the sextic fourfold: 462 lattice points.
const LatticePolytope& sextic() {
  static const auto p = hull(std::vector<IntVector>{
      row({5, -1, -1, -1, -1}), row({-1, 5, -1, -1, -1}), row({-1, -1, 5, -1, -1}), row({-1, -1, -1, 5, -1}),
      row({-1, -1, -1, -1, 5}), row({-1, -1, -1, -1, -1})});
  return p;
}

const LatticePolytope& quintic() {
  static const auto p = hull(std::vector<IntVector>{row({4, -1, -1, -1}), row({-1, 4, -1, -1}), row({-1, -1, 4, -1}),
                                                    row({-1, -1, -1, 4}), row({-1, -1, -1, -1})});
  return p;
}

Mode mode_of(const benchmark::State& state) { return state.range(0) ? Mode::parallel : Mode::serial; }

void BM_LatticePoints(benchmark::State& state) {
  const auto& p = sextic();
  const auto mode = mode_of(state);
  for (auto _ : state) benchmark::DoNotOptimize(kernels::enumerate_lattice_points(p, mode));
}
BENCHMARK(BM_LatticePoints)->Arg(0)->Arg(1)->Unit(benchmark::kMillisecond);

void BM_LatticePointsBoundingBox(benchmark::State& state) {
  const auto& p = sextic();
  for (auto _ : state) benchmark::DoNotOptimize(kernels::enumerate_lattice_points_bbox(p));
}
BENCHMARK(BM_LatticePointsBoundingBox)->Unit(benchmark::kMillisecond);

void BM_TightFacets(benchmark::State& state) {
  const auto& p = sextic();
  const auto points = kernels::enumerate_lattice_points(p, Mode::serial);
  const auto mode = mode_of(state);
  for (auto _ : state) benchmark::DoNotOptimize(kernels::tight_facet_sets(points, p.facets(), mode));
}
BENCHMARK(BM_TightFacets)->Arg(0)->Arg(1)->Unit(benchmark::kMillisecond);

void BM_ClassifyFan(benchmark::State& state) {
  static const auto fan = mpcp_fan(quintic()).fan;
  const auto mode = mode_of(state);
  for (auto _ : state) benchmark::DoNotOptimize(classify_fan(fan, mode));
}
BENCHMARK(BM_ClassifyFan)->Arg(0)->Arg(1)->Unit(benchmark::kMillisecond);

void BM_Triangulate(benchmark::State& state) {
  const auto cfg = PointConfig::all_lattice_points(quintic());
  const auto previous = kernels::default_mode();
  kernels::set_default_mode(mode_of(state));
  for (auto _ : state) benchmark::DoNotOptimize(regular_fine_triangulation(cfg));
  kernels::set_default_mode(previous);
}
BENCHMARK(BM_Triangulate)->Arg(0)->Arg(1)->Unit(benchmark::kMillisecond);

}  // namespace

BENCHMARK_MAIN();
