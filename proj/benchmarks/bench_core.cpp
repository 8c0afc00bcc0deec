#include <benchmark/benchmark.h>

#include "qes/ensemble_run.hpp"
#include "qes/histogram.hpp"
#include "qes/sampler.hpp"
#include "qes/state.hpp"

namespace {

using namespace qes;

void BM_Observe(benchmark::State& st) {
  RealS3Sampler sampler({1, 0});
  std::vector<TwoQubitPureState> states;
  for (int k = 0; k < 4096; ++k) states.push_back(sampler.next_state());
  std::size_t k = 0;
  for (auto _ : st) {
    benchmark::DoNotOptimize(observe(states[k++ & 4095]));
  }
  st.SetItemsProcessed(st.iterations());
}
BENCHMARK(BM_Observe);

template <class Sampler>
void BM_Sampler(benchmark::State& st) {
  Sampler sampler({1, 0});
  for (auto _ : st) benchmark::DoNotOptimize(sampler.next_state());
  st.SetItemsProcessed(st.iterations());
}
BENCHMARK(BM_Sampler<RealS3Sampler>);
BENCHMARK(BM_Sampler<ComplexS7Sampler>);
BENCHMARK(BM_Sampler<ParamSampler>);
BENCHMARK(BM_Sampler<ZeroMiFamilySampler>);

void BM_Accumulate(benchmark::State& st) {
  RealS3Sampler sampler({2, 0});
  std::vector<Observation> obs;
  for (int k = 0; k < 4096; ++k) obs.push_back(observe(sampler.next_state()));
  Joint2DHistogram h(0.0025, 0.0025);
  std::size_t k = 0;
  for (auto _ : st) h.accumulate(obs[k++ & 4095]);
  benchmark::DoNotOptimize(h.total());
  st.SetItemsProcessed(st.iterations());
}
BENCHMARK(BM_Accumulate);

void BM_Merge(benchmark::State& st) {
  Joint2DHistogram a(0.0025, 0.0025), b(0.0025, 0.0025);
  b.add_count(17, 23, 5);
  for (auto _ : st) {
    a.merge(b);
    benchmark::ClobberMemory();
  }
}
BENCHMARK(BM_Merge);

void BM_SampleHistogram(benchmark::State& st) {
  const EnsembleSpec spec{EnsembleKind::RealS3, static_cast<std::uint64_t>(st.range(0)), {3, 0}};
  for (auto _ : st) benchmark::DoNotOptimize(sample_histogram(spec, BinSpec{}, hardware_workers()).total());
  st.SetItemsProcessed(st.iterations() * st.range(0));
}
BENCHMARK(BM_SampleHistogram)->Arg(1 << 20)->Unit(benchmark::kMillisecond);

}  // namespace
BENCHMARK_MAIN();
