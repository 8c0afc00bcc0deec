#pragma once

// Deterministic parallel sampling. A run of n samples is cut into chunks of
// kChunkSize; chunk k is drawn from stream (stream_id + k) of the master
// seed. Workers claim chunks dynamically and keep private partial results,
// so the merged outcome depends only on (seed, n), never on the number of
// workers or on scheduling, as long as the merge is exact (integer counts,
// max, ...).

#include <algorithm>
#include <atomic>
#include <cstdint>
#include <exception>
#include <mutex>
#include <span>
#include <thread>
#include <vector>

#include "qes/histogram.hpp"
#include "qes/sampler.hpp"

namespace qes {

inline constexpr std::uint64_t kChunkSize = std::uint64_t{1} << 20;

/// std::thread::hardware_concurrency(), at least 1.
unsigned hardware_workers() noexcept;

struct ChunkRange {
  std::uint64_t index = 0;  // chunk number, also the stream offset
  std::uint64_t count = 0;  // samples in this chunk
  SeedSpec seed;            // stream that draws this chunk
};

/// Runs body(partial, chunk) over every chunk of an n-sample run using
/// `workers` threads, each owning a copy of `init`. Returns one partial per
/// worker, in worker order. Exceptions thrown by body are rethrown here.
template <class Partial, class Body>
std::vector<Partial> run_chunks(std::uint64_t n, SeedSpec base, unsigned workers, const Partial& init,
                                Body body) {
  const std::uint64_t chunks = (n + kChunkSize - 1) / kChunkSize;
  workers = static_cast<unsigned>(std::clamp<std::uint64_t>(workers, 1, std::max<std::uint64_t>(chunks, 1)));

  std::vector<Partial> partials(workers, init);
  std::atomic<std::uint64_t> next{0};
  std::exception_ptr failure;
  std::mutex failure_mutex;

  auto work = [&](unsigned w) {
    try {
      for (std::uint64_t k = next.fetch_add(1); k < chunks; k = next.fetch_add(1)) {
        const std::uint64_t begin = k * kChunkSize;
        const ChunkRange chunk{k, std::min(kChunkSize, n - begin),
                               SeedSpec{base.master_seed, base.stream_id + k}};
        body(partials[w], chunk);
      }
    } catch (...) {
      std::lock_guard lock(failure_mutex);
      if (!failure) failure = std::current_exception();
      next.store(chunks);
    }
  };

  if (workers == 1) {
    work(0);
  } else {
    std::vector<std::jthread> threads;
    threads.reserve(workers);
    for (unsigned w = 0; w < workers; ++w) threads.emplace_back(work, w);
  }
  if (failure) std::rethrow_exception(failure);
  return partials;
}

struct BinSpec {
  double delta_c = 0.01;
  double delta_i = 0.01;
};

/// Samples spec.n states and histograms (C, I) at every requested binning
/// in a single pass. Output order follows `bins`.
std::vector<Joint2DHistogram> sample_histograms(const EnsembleSpec& spec, std::span<const BinSpec> bins,
                                                unsigned workers);

Joint2DHistogram sample_histogram(const EnsembleSpec& spec, BinSpec bins, unsigned workers);

}  // namespace qes
