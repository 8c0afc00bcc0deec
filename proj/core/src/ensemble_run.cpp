#include "qes/ensemble_run.hpp"

namespace qes {

unsigned hardware_workers() noexcept {
  const unsigned n = std::thread::hardware_concurrency();
  return n == 0 ? 1 : n;
}

std::vector<Joint2DHistogram> sample_histograms(const EnsembleSpec& spec, std::span<const BinSpec> bins,
                                                unsigned workers) {
  validate(spec);
  std::vector<Joint2DHistogram> empty;
  empty.reserve(bins.size());
  for (const auto& b : bins) empty.emplace_back(b.delta_c, b.delta_i);

  auto partials = run_chunks(spec.n, spec.seed, workers, empty,
                             [kind = spec.kind](std::vector<Joint2DHistogram>& hs, const ChunkRange& chunk) {
                               visit_sampler(kind, chunk.seed, [&](auto& sampler) {
                                 for (std::uint64_t j = 0; j < chunk.count; ++j) {
                                   const Observation o = observe(sampler.next_state());
                                   for (auto& h : hs) h.accumulate(o);
                                 }
                               });
                             });

  auto result = std::move(partials.front());
  for (std::size_t w = 1; w < partials.size(); ++w) {
    for (std::size_t b = 0; b < result.size(); ++b) result[b].merge(partials[w][b]);
  }
  return result;
}

Joint2DHistogram sample_histogram(const EnsembleSpec& spec, BinSpec bins, unsigned workers) {
  return std::move(sample_histograms(spec, std::span<const BinSpec>(&bins, 1), workers).front());
}

}  // namespace qes
