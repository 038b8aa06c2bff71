#include <benchmark/benchmark.h>

#include "toricmorgan/toric_dga.hpp"
#include "toricmorgan/verify.hpp"
#include "toricmorgan/wonderful_morgan.hpp"

using namespace toricmorgan;

namespace {

const verify::TestArrangement& arrangement(size_t i) {
  static const auto list = verify::test_arrangements();
  return list.at(i);
}

void BM_HermiteNormalForm(benchmark::State& state) {
  IntMatrix m(6, 6);
  for (size_t i = 0; i < 6; ++i)
    for (size_t j = 0; j < 6; ++j) m(i, j) = static_cast<long>((7 * i + 3 * j * j + 1) % 11) - 5;
  for (auto _ : state) benchmark::DoNotOptimize(hnf(m));
}
BENCHMARK(BM_HermiteNormalForm);

void BM_ResolveHyperplanes(benchmark::State& state) {
  Fan seed = projective_space_fan(2);
  std::vector<IntVector> chars{{1, -1}, {1, 2}, {3, 1}};
  for (auto _ : state) benchmark::DoNotOptimize(resolve_smooth(hyperplane_refine(seed, chars)));
}
BENCHMARK(BM_ResolveHyperplanes);

void BM_ToricC(benchmark::State& state) {
  Fan p1 = projective_space_fan(1);
  Fan fan = product_fan(product_fan(p1, p1), p1);
  for (auto _ : state) {
    ToricC c = build_C(fan);
    benchmark::DoNotOptimize(cohomology(*c.quotient, *c.dga.d).dims);
  }
}
BENCHMARK(BM_ToricC);

void BM_ArrangementBetti(benchmark::State& state) {
  const auto& t = arrangement(static_cast<size_t>(state.range(0)));
  state.SetLabel(t.name);
  for (auto _ : state) benchmark::DoNotOptimize(betti(t.arrangement).betti);
}
BENCHMARK(BM_ArrangementBetti)->DenseRange(0, 10)->Unit(benchmark::kMillisecond);

void BM_MorganDirect(benchmark::State& state) {
  const auto& t = arrangement(6);
  auto data = combinatorial_data(saturate_arrangement(t.arrangement), t.arrangement.dim);
  auto cf = build_compatible_fan(data, equal_sign_bases(data));
  for (auto _ : state) benchmark::DoNotOptimize(morgan_direct(cf, data));
}
BENCHMARK(BM_MorganDirect)->Unit(benchmark::kMillisecond);

}  // namespace
BENCHMARK_MAIN();
