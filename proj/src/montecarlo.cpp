#include "lmp/montecarlo.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

#ifdef _OPENMP
#include <omp.h>
#endif

namespace lmp {

DoubleMap::DoubleMap(const PAMap& f) {
  xs.reserve(f.points().size());
  ys.reserve(f.points().size());
  for (const auto& p : f.points()) {
    xs.push_back(to_double(p.x));
    ys.push_back(to_double(p.y));
  }
}

double DoubleMap::operator()(double x) const {
  auto it = std::upper_bound(xs.begin(), xs.end(), x);
  std::size_t i = static_cast<std::size_t>(it - xs.begin());
  if (i == 0) i = 1;
  if (i >= xs.size()) i = xs.size() - 1;
  double x0 = xs[i - 1], x1 = xs[i];
  return ys[i - 1] + (ys[i] - ys[i - 1]) * (x - x0) / (x1 - x0);
}

namespace {

constexpr std::uint64_t kBlockSize = 1 << 16;

// splitmix64; one independent stream per sample block
struct SplitMix {
  std::uint64_t state;
  std::uint64_t next() {
    std::uint64_t z = (state += 0x9e3779b97f4a7c15ULL);
    z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ULL;
    z = (z ^ (z >> 27)) * 0x94d049bb133111ebULL;
    return z ^ (z >> 31);
  }
  double uniform01() { return static_cast<double>(next() >> 11) * 0x1.0p-53; }
};

// Stratified sampling: sample s of the block draws uniformly from its own
// stratum [(base+s)/total, (base+s+1)/total). Keeps the estimate unbiased
// while the per-bin variance drops far below the iid multinomial level.
void run_block(const DoubleMap& dm, std::uint64_t rng_seed, std::uint64_t block,
               std::uint64_t count, std::uint64_t total, std::uint32_t bins,
               std::uint64_t* counts) {
  SplitMix rng{rng_seed * 0x2545f4914f6cdd1dULL + block};
  const double inv_total = 1.0 / static_cast<double>(total);
  const std::uint64_t base = block * kBlockSize;
  for (std::uint64_t s = 0; s < count; ++s) {
    double x = (static_cast<double>(base + s) + rng.uniform01()) * inv_total;
    double y = dm(x);
    auto b = static_cast<std::int64_t>(y * bins);
    if (b < 0) b = 0;
    if (b >= bins) b = bins - 1;
    ++counts[b];
  }
}

}  // namespace

PushforwardStats montecarlo_pushforward(const PAMap& f, std::uint64_t samples,
                                        std::uint32_t bins, std::uint64_t rng_seed,
                                        Execution exec) {
  if (samples == 0 || bins == 0)
    throw std::invalid_argument("montecarlo_pushforward: samples and bins must be >= 1");
  DoubleMap dm(f);
  const std::uint64_t nblocks = (samples + kBlockSize - 1) / kBlockSize;
  PushforwardStats st;
  st.samples = samples;
  st.counts.assign(bins, 0);

  if (exec == Execution::Parallel) {
#ifdef _OPENMP
#pragma omp parallel
    {
      std::vector<std::uint64_t> local(bins, 0);
#pragma omp for schedule(static)
      for (std::int64_t blk = 0; blk < static_cast<std::int64_t>(nblocks); ++blk) {
        std::uint64_t base = static_cast<std::uint64_t>(blk) * kBlockSize;
        std::uint64_t count = std::min<std::uint64_t>(kBlockSize, samples - base);
        run_block(dm, rng_seed, static_cast<std::uint64_t>(blk), count, samples, bins, local.data());
      }
#pragma omp critical
      for (std::uint32_t b = 0; b < bins; ++b) st.counts[b] += local[b];
    }
#else
    exec = Execution::Serial;
#endif
  }
  if (exec == Execution::Serial) {
    for (std::uint64_t blk = 0; blk < nblocks; ++blk) {
      std::uint64_t base = blk * kBlockSize;
      std::uint64_t count = std::min<std::uint64_t>(kBlockSize, samples - base);
      run_block(dm, rng_seed, blk, count, samples, bins, st.counts.data());
    }
  }

  double sup = 0.0;
  for (std::uint32_t b = 0; b < bins; ++b) {
    double density = static_cast<double>(st.counts[b]) * bins / static_cast<double>(samples);
    sup = std::max(sup, std::abs(density - 1.0));
  }
  st.sup_deviation = sup;
  return st;
}

}  // namespace lmp
