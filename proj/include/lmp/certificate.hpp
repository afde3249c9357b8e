#pragma once

#include <optional>
#include <stdexcept>
#include <vector>

#include "lmp/pa_map.hpp"

namespace lmp {

// Thrown when a map has a flat segment: such a map pulls positive measure
// back from a single value and can never preserve Lebesgue measure.
class NotCertifiable : public std::runtime_error {
 public:
  NotCertifiable(std::size_t segment, std::string what)
      : std::runtime_error(std::move(what)), segment_(segment) {}
  std::size_t segment() const { return segment_; }

 private:
  std::size_t segment_;
};

struct CertificateBranch {
  Interval source;
  Rat slope;
};

struct RangeCell {
  Interval cell;
  std::vector<CertificateBranch> branches;
  Rat reciprocal_sum;  // sum over branches of 1/|slope|
};

// Per value-cell inventory of covering branches. A map on [0,1] preserves
// Lebesgue measure iff every cell balances: sum of 1/|slope| equals 1.
struct PreservationCertificate {
  bool pass = false;
  std::vector<RangeCell> cells;
  // On failure, the first unbalanced cell and its deficiency (sum - 1).
  std::optional<std::size_t> failing_cell;
  Rat deficiency;
};

// `collect_branches` controls whether the per-cell branch inventories are
// materialized (O(segments * cells) memory); the verdict itself only needs
// the O(segments + cells) reciprocal sweep.
PreservationCertificate certify_preservation(const PAMap& f, bool collect_branches = false);

// Piecewise-constant density on [0,1]: value dens[i] on [cuts[i], cuts[i+1]].
struct StepDensity {
  std::vector<Rat> cuts;  // 0 = cuts[0] < ... < cuts[n] = 1
  std::vector<Rat> values;
};

// Invariant density of the conjugated map: q = p^-1 . f . p preserves the
// measure with density equal to the slope of p.
StepDensity density_from_homeomorphism(const PAMap& p);

// Certifies preservation of the weighted measure rho(x)dx: per value cell,
// sum of rho(source)/|slope| must equal rho(cell).
PreservationCertificate certify_preservation_weighted(const PAMap& f, const StepDensity& rho);

}  // namespace lmp
