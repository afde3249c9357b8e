#pragma once

#include <cstdint>
#include <vector>

#include "lmp/pa_map.hpp"

namespace lmp {

enum class Execution { Serial, Parallel };

struct PushforwardStats {
  std::vector<std::uint64_t> counts;
  std::uint64_t samples = 0;
  // sup over bins of |empirical density - 1|
  double sup_deviation = 0.0;
};

// Stochastic oracle for the exact certifier: pushes uniform samples through
// f and compares the empirical density against the flat one. Sampling is
// blocked with per-block RNG streams derived from rng_seed, so serial and
// parallel execution produce identical counts.
PushforwardStats montecarlo_pushforward(const PAMap& f, std::uint64_t samples,
                                        std::uint32_t bins, std::uint64_t rng_seed,
                                        Execution exec = Execution::Parallel);

// Lossy double-precision view of a PAMap used by sampling kernels.
struct DoubleMap {
  std::vector<double> xs;
  std::vector<double> ys;
  explicit DoubleMap(const PAMap& f);
  double operator()(double x) const;
};

}  // namespace lmp
