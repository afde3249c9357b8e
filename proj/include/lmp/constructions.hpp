#pragma once

#include <utility>

#include "lmp/certificate.hpp"
#include "lmp/pa_map.hpp"

namespace lmp {

// Zigzag refinement schedule for the oscillating seed family. Level 0 is
// the tent map. Each level splits every segment into multiplicity equal
// value sub-windows and crosses each sub-window with a zigzag of the same
// multiplicity, so segments multiply by multiplicity^2, value windows
// shrink by 1/multiplicity and slopes grow by multiplicity.
struct SeedSchedule {
  unsigned multiplicity = 3;  // odd, >= 3
  unsigned max_level = 8;
};

void validate_schedule(const SeedSchedule& schedule);

// Materialized seed map at the given level. Symmetric about x = 1/2 with
// f(0) = f(1) = 0 and f(1/2) = 1; preserves Lebesgue measure at every level.
PAMap seed(unsigned level, const SeedSchedule& schedule = {});

// Pointwise evaluation of the seed without materializing its breakpoints;
// usable far beyond the level where the explicit map fits in memory.
Rat seed_evaluate(unsigned level, const SeedSchedule& schedule, const Rat& x);

// Maximal |slope| of seed(level): 2 * multiplicity^level.
Rat seed_max_slope(unsigned level, const SeedSchedule& schedule);

// g = f|[0,1/2] (rising 0 -> 1) and h = f|[1/2,1] (falling 1 -> 0),
// kept on their native domains.
std::pair<PAMap, PAMap> seed_halves(const PAMap& f);

// Rescaled halves on [a,b] with value window between c and d:
//   g_{a,b;c,d}(x) = c + (d-c) g((x-a) / (2(b-a)))
//   h_{a,b;c,d}(x) = c + (d-c) h(1/2 + (x-a) / (2(b-a)))
// Their branch preimages scale measure by (b-a)/(d-c), exactly as the
// affine surjection of [a,b] onto the window does.
PAMap rescale_g(const Rat& a, const Rat& b, const Rat& c, const Rat& d, const PAMap& g);
PAMap rescale_h(const Rat& a, const Rat& b, const Rat& c, const Rat& d, const PAMap& h);

// The densification step: partitions the value axis by a grid of mesh
// < eps/2 refined by ell's critical values, then replaces each monotone
// preimage piece of each value cell by a rescaled seed half. The result m
// satisfies ||ell - m||_inf <= mesh < eps/2 and preserves Lebesgue measure.
PAMap densify(const PAMap& ell, const Rat& eps, unsigned seed_level,
              const SeedSchedule& schedule = {});

// The value-axis partition densify uses; exposed for tests and reports.
std::vector<Rat> densify_partition(const PAMap& ell, const Rat& eps);

bool is_pl_homeomorphism(const PAMap& p);

struct Conjugation {
  PAMap q;  // p^-1 . f . p
  StepDensity invariant_density;
};

Conjugation conjugate(const PAMap& f, const PAMap& p);

// Additive perturbation of an increasing affine map by two half-supported
// seed rescalings: g + alpha*f_left - beta*f_right, where f_left lives on
// [0,1/2], f_right on [1/2,1] and each vanishes off its half. The result is
// generally not measure preserving; it feeds the Dini-envelope comparison.
PAMap additive_besicovitch(const Rat& g_slope, const Rat& g_intercept, const Rat& alpha,
                           const Rat& beta, unsigned seed_level,
                           const SeedSchedule& schedule = {});

}  // namespace lmp
