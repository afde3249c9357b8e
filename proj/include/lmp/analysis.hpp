#pragma once

#include <functional>
#include <optional>
#include <vector>

#include "lmp/certificate.hpp"
#include "lmp/interval_set.hpp"
#include "lmp/montecarlo.hpp"
#include "lmp/pa_map.hpp"

namespace lmp {

// ---------------------------------------------------------------------------
// Density points

// D(A) for a finite union of closed intervals: component interiors, with an
// endpoint included only where the one-sided definition applies (0 and 1).
struct DensityComponent {
  Interval closure;
  bool open_lo = false;
  bool open_hi = false;
};

struct DensitySet {
  std::vector<DensityComponent> components;
  Rat measure() const;
  // Closure as a plain IntervalSet; differs from D(A) by finitely many
  // points, so all measure computations agree.
  IntervalSet closure() const;
};

DensitySet density_points(const IntervalSet& a);

// Truncated density approximant at window 1/m and threshold 1 - 1/n:
// the set where (m/2) * lambda(A intersect [x-1/m, x+1/m]) > 1 - 1/n,
// computed exactly (returned as the closure of that open set).
IntervalSet density_approx(const IntervalSet& a, unsigned m, unsigned n);

// ---------------------------------------------------------------------------
// The exact identity lambda({x in A : x in D(A), f(x) in D(f(A))}) = lambda(A)

struct Lemma2Result {
  IntervalSet b;  // closure of the set in question
  Rat b_measure;
  Rat a_measure;
  bool pass = false;
};

Lemma2Result lemma2_check(const PAMap& f, const IntervalSet& a);

// ---------------------------------------------------------------------------
// Non-invertibility witness

struct WitnessReport {
  IntervalSet y;
  Rat image_measure;
  Rat set_measure;
  Rat margin;  // image_measure - set_measure, strictly positive
};

// A certified nonmonotone map always yields a single-branch witness: some
// value cell is covered by at least two branches, hence by a branch of
// |slope| > 1 whose cell preimage Y satisfies lambda(f(Y)) > lambda(Y).
// Monotone maps return nullopt.
std::optional<WitnessReport> find_witness(const PAMap& f);

// ---------------------------------------------------------------------------
// Entropy

// Exact rational-weighted combination of logarithms: sum w_i * log(b_i).
struct ExactLog {
  struct Term {
    Rat weight;
    Rat base;  // > 0, never 1 in canonical form
  };
  std::vector<Term> terms;
  double value() const;
  // Exact sign; certified maps only have bases >= 1, so the sign is the
  // sign test "any term present".
  int sign() const;
};

// Metric entropy of a certified map: sum over segments of length * log|slope|.
ExactLog rokhlin_entropy(const PAMap& f);

struct LapTableRow {
  unsigned n;
  std::size_t laps;
  double estimate;  // log(laps) / n
};

struct LapTable {
  std::vector<LapTableRow> rows;
  bool truncated = false;  // an iterate guard tripped before n_max
  // Valid lower bound for the estimate at n_target: lap counts are
  // nondecreasing in n, so log(lap(f^{n*})) / n_target works even when the
  // table stops at n* < n_target.
  double lower_bound_estimate(unsigned n_target) const;
};

LapTable topological_entropy_lower(const PAMap& f, unsigned n_max,
                                   const IterateGuard& guard = {});

// ---------------------------------------------------------------------------
// Dini envelopes

struct ScaleEnvelope {
  unsigned scale_exp;  // scale = 2^-scale_exp
  std::optional<Rat> max_right, min_right, max_left, min_left;
};

struct DiniEnvelope {
  Rat x;
  std::vector<ScaleEnvelope> scales;
};

using PointEvaluator = std::function<Rat(const Rat&)>;

// One-sided difference-quotient envelopes over a geometric increment ladder
// h = scale / 2^t, t = 0..increments-1, at uniformly spaced grid points.
// The evaluator form serves maps too large to materialize.
std::vector<DiniEnvelope> dini_envelopes(const PointEvaluator& f, unsigned grid_points,
                                         const std::vector<unsigned>& scale_exps,
                                         unsigned increments,
                                         Execution exec = Execution::Parallel);

std::vector<DiniEnvelope> dini_envelopes(const PAMap& f, unsigned grid_points,
                                         const std::vector<unsigned>& scale_exps,
                                         unsigned increments,
                                         Execution exec = Execution::Parallel);

// Share of grid points whose finest-scale envelopes exceed +-threshold
// in all four directions (the knot-point proxy).
double knot_fraction(const std::vector<DiniEnvelope>& envelopes, const Rat& threshold);

// min over grid points of the max right quotient at the given scale.
std::optional<Rat> min_max_right_quotient(const std::vector<DiniEnvelope>& envelopes,
                                          unsigned scale_exp);

// Largest |quotient| anywhere in the envelope table.
Rat envelope_sup(const std::vector<DiniEnvelope>& envelopes);

// ---------------------------------------------------------------------------
// Box dimension of the graph

struct BoxCountRow {
  unsigned scale_exp;  // boxes of side 2^-scale_exp
  std::uint64_t boxes;
};

struct BoxCountTable {
  std::vector<BoxCountRow> rows;
  double slope;  // least-squares slope of log(boxes) vs log(2^scale_exp)
};

// Exact per-column counting: boxes are [k s, (k+1) s) with the top row
// closed, and a column's count comes from the exact min/max of f there.
BoxCountTable box_dimension(const PAMap& f, const std::vector<unsigned>& scale_exps,
                            Execution exec = Execution::Parallel);

// ---------------------------------------------------------------------------
// Crookedness

// g is delta-crooked iff for all a < b there are a <= c < d <= b with
// |g(c) - g(b)| <= delta and |g(d) - g(a)| <= delta. Decided exactly over
// the breakpoint-induced candidate family (breakpoints plus band-edge
// preimages); a violating pair is reported when found.
struct CrookednessRow {
  unsigned n;
  bool crooked;
  std::optional<std::pair<Rat, Rat>> violating_pair;
};

bool is_delta_crooked(const PAMap& g, const Rat& delta,
                      std::optional<std::pair<Rat, Rat>>* violating = nullptr);

std::vector<CrookednessRow> crookedness_check(const PAMap& f, const Rat& delta,
                                              unsigned n_max,
                                              const IterateGuard& guard = {});

}  // namespace lmp
