// Benchmark of the OpenMP kernels against their serial references.

#include <chrono>
#include <cstdio>

#include "lmp/analysis.hpp"
#include "lmp/constructions.hpp"
#include "lmp/montecarlo.hpp"

using namespace lmp;

namespace {

template <typename F>
double time_ms(F&& fn) {
  auto t0 = std::chrono::steady_clock::now();
  fn();
  auto t1 = std::chrono::steady_clock::now();
  return std::chrono::duration<double, std::milli>(t1 - t0).count();
}

void report(const char* name, double serial_ms, double parallel_ms, bool identical) {
  std::printf("%-28s serial %9.1f ms   parallel %9.1f ms   speedup %5.2fx   %s\n", name,
              serial_ms, parallel_ms, serial_ms / parallel_ms,
              identical ? "results identical" : "RESULTS DIFFER");
}

}  // namespace

int main() {
  PAMap map = seed(4);
  std::printf("map: seed level 4, %zu segments\n\n", map.segment_count());

  {
    PushforwardStats s, p;
    double ts = time_ms([&] { s = montecarlo_pushforward(map, 4'000'000, 128, 9, Execution::Serial); });
    double tp = time_ms([&] { p = montecarlo_pushforward(map, 4'000'000, 128, 9, Execution::Parallel); });
    report("montecarlo_pushforward", ts, tp, s.counts == p.counts);
  }
  {
    std::vector<unsigned> scales{2, 4, 6, 8};
    std::vector<DiniEnvelope> s, p;
    double ts = time_ms([&] { s = dini_envelopes(map, 256, scales, 10, Execution::Serial); });
    double tp = time_ms([&] { p = dini_envelopes(map, 256, scales, 10, Execution::Parallel); });
    bool same = s.size() == p.size();
    for (std::size_t i = 0; same && i < s.size(); ++i)
      same = envelope_sup({s[i]}) == envelope_sup({p[i]});
    report("dini_envelopes", ts, tp, same);
  }
  {
    std::vector<unsigned> scales{8, 10, 12, 14};
    BoxCountTable s, p;
    double ts = time_ms([&] { s = box_dimension(map, scales, Execution::Serial); });
    double tp = time_ms([&] { p = box_dimension(map, scales, Execution::Parallel); });
    bool same = s.slope == p.slope;
    for (std::size_t i = 0; same && i < s.rows.size(); ++i) same = s.rows[i].boxes == p.rows[i].boxes;
    report("box_dimension", ts, tp, same);
  }
  return 0;
}
