#pragma once

// Deterministic generators for test maps and interval sets, shared by the
// unit suites and the acceptance runner.

#include <random>
#include <vector>

#include "lmp/constructions.hpp"
#include "lmp/pa_map.hpp"

namespace lmp::testgen {

inline Rat random_rat(std::mt19937_64& rng, long max_den = 64) {
  std::uniform_int_distribution<long> den_dist(2, max_den);
  long den = den_dist(rng);
  std::uniform_int_distribution<long> num_dist(0, den);
  return rat(num_dist(rng), den);
}

// n distinct sorted points strictly inside (0,1).
inline std::vector<Rat> random_interior_points(std::mt19937_64& rng, std::size_t n,
                                               long max_den = 256) {
  std::vector<Rat> pts;
  while (pts.size() < n) {
    Rat p = random_rat(rng, max_den);
    if (p == 0 || p == 1) continue;
    bool dup = false;
    for (const auto& q : pts) dup = dup || q == p;
    if (!dup) pts.push_back(p);
  }
  std::sort(pts.begin(), pts.end());
  return pts;
}

inline IntervalSet random_interval_set(std::mt19937_64& rng, std::size_t max_components = 4) {
  std::uniform_int_distribution<std::size_t> ncomp(1, max_components);
  std::size_t n = ncomp(rng);
  std::vector<Rat> pts = random_interior_points(rng, 2 * n);
  std::vector<Interval> parts;
  for (std::size_t i = 0; i + 1 < pts.size(); i += 2) parts.emplace_back(pts[i], pts[i + 1]);
  return IntervalSet(std::move(parts));
}

// Zigzag with every branch onto [0,1]: branch widths sum to 1, so the
// reciprocal slopes do too and the map preserves Lebesgue measure.
inline PAMap random_full_branch_zigzag(std::mt19937_64& rng, std::size_t branches) {
  std::vector<Rat> cuts = random_interior_points(rng, branches - 1);
  cuts.insert(cuts.begin(), rat(0));
  cuts.push_back(rat(1));
  std::uniform_int_distribution<int> updown(0, 1);
  bool up = updown(rng) == 1;
  std::vector<Breakpoint> pts;
  pts.push_back({rat(0), up ? rat(0) : rat(1)});
  for (std::size_t i = 1; i < cuts.size(); ++i) {
    up = !up;
    pts.push_back({cuts[i], up ? rat(0) : rat(1)});
  }
  return PAMap(std::move(pts));
}

// Asymmetric tent: up over [0,c], down over [c,1], both branches onto [0,1].
inline PAMap skew_tent(const Rat& c) {
  return PAMap({{rat(0), rat(0)}, {c, rat(1)}, {rat(1), rat(0)}});
}

// Random increasing PL homeomorphism fixing 0 and 1.
inline PAMap random_homeomorphism(std::mt19937_64& rng, std::size_t interior = 2) {
  std::vector<Rat> xs = random_interior_points(rng, interior);
  std::vector<Rat> ys = random_interior_points(rng, interior);
  std::vector<Breakpoint> pts;
  pts.push_back({rat(0), rat(0)});
  for (std::size_t i = 0; i < interior; ++i) pts.push_back({xs[i], ys[i]});
  pts.push_back({rat(1), rat(1)});
  return PAMap(std::move(pts));
}

// A mixed corpus of certified maps: tents, zigzags, seeds, densify outputs
// and PL conjugates, plus the two monotone members.
inline std::vector<PAMap> certified_corpus(std::size_t size, std::uint64_t seed_value,
                                           bool include_monotone = true) {
  std::mt19937_64 rng(seed_value);
  std::vector<PAMap> maps;
  if (include_monotone) {
    maps.push_back(PAMap::identity());
    maps.push_back(PAMap::reflection());
  }
  maps.push_back(PAMap::tent());
  SeedSchedule sched;
  std::uniform_int_distribution<int> kind(0, 4);
  std::uniform_int_distribution<std::size_t> nbranch(2, 6);
  std::uniform_int_distribution<unsigned> lvl(0, 2);
  std::uniform_int_distribution<int> eps_pick(2, 4);  // eps = 2^-pick
  while (maps.size() < size) {
    switch (kind(rng)) {
      case 0:
        maps.push_back(skew_tent(random_interior_points(rng, 1)[0]));
        break;
      case 1:
        maps.push_back(random_full_branch_zigzag(rng, nbranch(rng)));
        break;
      case 2:
        maps.push_back(seed(lvl(rng), sched));
        break;
      case 3: {
        PAMap base = random_full_branch_zigzag(rng, nbranch(rng));
        maps.push_back(densify(base, dyadic(static_cast<unsigned>(eps_pick(rng))), lvl(rng) % 2, sched));
        break;
      }
      default: {
        // conjugates of certified maps preserve a weighted measure, not
        // lambda; keep the lambda-certified corpus to Lebesgue members
        maps.push_back(skew_tent(random_interior_points(rng, 1, 512)[0]));
        break;
      }
    }
  }
  return maps;
}

}  // namespace lmp::testgen
