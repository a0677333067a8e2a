#include <benchmark/benchmark.h>

#include "undistort/undistort.hpp"

namespace {

using namespace undistort;

GenSet disjoint_pl() {
  const Homeo p = Homeo::pl(PLCircleMap::from_lift_nodes({{Rational(0), Rational(0)},
                                                          {Rational(1, 4), Rational(1, 8)},
                                                          {Rational(1, 2), Rational(1, 2)}}));
  const Homeo q = Homeo::pl(PLCircleMap::from_lift_nodes({{Rational(0), Rational(0)},
                                                          {Rational(1, 2), Rational(1, 2)},
                                                          {Rational(3, 4), Rational(5, 8)}}));
  return GenSet({{"p", p}, {"q", q}});
}

Homeo conjugated_rotation() {
  const PLCircleMap h =
      PLCircleMap::from_lift_nodes({{Rational(0), Rational(0)}, {Rational(1, 2), Rational(1, 4)}});
  return compose(Homeo::pl(h.inverse()),
                 compose(Homeo::rigid_rotation(ExactAngle(Rational(2, 5))), Homeo::pl(h)));
}

void BM_BallCommutingPL(benchmark::State& state) {
  const GenSet s = disjoint_pl();
  const auto radius = static_cast<std::uint32_t>(state.range(0));
  std::size_t nodes = 0;
  for (auto _ : state) {
    const BallResult b = ball(s, radius);
    nodes = b.nodes.size();
    benchmark::DoNotOptimize(nodes);
  }
  state.counters["nodes"] = static_cast<double>(nodes);
  state.counters["nodes/s"] = benchmark::Counter(static_cast<double>(nodes),
                                                 benchmark::Counter::kIsIterationInvariantRate);
}
BENCHMARK(BM_BallCommutingPL)->Arg(4)->Arg(8)->Arg(12)->Unit(benchmark::kMillisecond);

void BM_BallAnnulusTwists(benchmark::State& state) {
  const Homeo a = Homeo::annulus_twist(ExactAngle(Rational(0)), ExactAngle(Rational(1, 2)));
  const Homeo b = Homeo::annulus_twist(ExactAngle::symbol(Irrational::Sqrt2), ExactAngle(Rational(0)));
  const GenSet s({{"a", a}, {"b", b}});
  const auto radius = static_cast<std::uint32_t>(state.range(0));
  for (auto _ : state) benchmark::DoNotOptimize(ball(s, radius).nodes.size());
}
BENCHMARK(BM_BallAnnulusTwists)->Arg(6)->Arg(10)->Unit(benchmark::kMillisecond);

void BM_SeminormPL(benchmark::State& state) {
  const Homeo g = conjugated_rotation();
  const auto resolution = static_cast<std::size_t>(state.range(0));
  for (auto _ : state) benchmark::DoNotOptimize(seminorm(g, resolution).value);
}
BENCHMARK(BM_SeminormPL)->Arg(256)->Arg(4096)->Arg(65536);

void BM_SeminormTorusTwist(benchmark::State& state) {
  const Homeo g = Homeo::torus_twist(Rational(1, 3));
  const auto resolution = static_cast<std::size_t>(state.range(0));
  for (auto _ : state) benchmark::DoNotOptimize(seminorm(g, resolution).value);
}
BENCHMARK(BM_SeminormTorusTwist)->Arg(64)->Arg(256)->Unit(benchmark::kMillisecond);

void BM_OrbitIteratedPL(benchmark::State& state) {
  const Homeo g = conjugated_rotation();
  const std::int64_t n = state.range(0);
  for (auto _ : state) benchmark::DoNotOptimize(orbit_displacements({0.2, 0.0}, g, n).back());
  state.SetItemsProcessed(state.iterations() * n);
}
BENCHMARK(BM_OrbitIteratedPL)->Arg(1 << 10)->Arg(1 << 14)->Arg(1 << 17);

void BM_RotationClosedForm(benchmark::State& state) {
  const Homeo g = Homeo::annulus_twist(ExactAngle(Rational(0)), ExactAngle::symbol(Irrational::Sqrt2));
  for (auto _ : state) {
    benchmark::DoNotOptimize(local_rotation_number({0.0, 1.0}, g, state.range(0)).r);
  }
}
BENCHMARK(BM_RotationClosedForm)->Arg(1'000'000)->Unit(benchmark::kMillisecond);

void BM_GTableShear(benchmark::State& state) {
  const Homeo g = Homeo::torus_shear();
  for (auto _ : state) benchmark::DoNotOptimize(g_table({0.0, 0.0}, g, state.range(0)).size());
}
BENCHMARK(BM_GTableShear)->Arg(20)->Arg(64);

}  // namespace
