#pragma once

#include <cstddef>
#include <optional>
#include <vector>

#include "lmp/interval_set.hpp"
#include "lmp/rational.hpp"

namespace lmp {

struct Breakpoint {
  Rat x;
  Rat y;
  bool operator==(const Breakpoint& o) const = default;
};

// Continuous piecewise-affine map given by its breakpoints. The map is
// affine between consecutive x-coordinates. Canonical form: x strictly
// increasing, no collinear interior breakpoints. Most maps live on [0,1];
// restrictions (seed halves) keep their native domain.
class PAMap {
 public:
  PAMap() = default;
  explicit PAMap(std::vector<Breakpoint> points);

  static PAMap identity();
  static PAMap tent();
  static PAMap reflection();  // 1 - id
  static PAMap affine(const Rat& x0, const Rat& x1, const Rat& y0, const Rat& y1);

  const std::vector<Breakpoint>& points() const { return pts_; }
  std::size_t segment_count() const { return pts_.size() - 1; }

  Rat domain_lo() const { return pts_.front().x; }
  Rat domain_hi() const { return pts_.back().x; }
  bool unit_domain() const { return domain_lo() == 0 && domain_hi() == 1; }

  // Slope of segment i, i.e. between points i and i+1.
  Rat slope(std::size_t i) const;
  bool has_zero_slope() const;
  Rat max_abs_slope() const;
  Rat min_value() const;
  Rat max_value() const;

  Rat evaluate(const Rat& x) const;

  // Number of maximal monotone pieces.
  std::size_t lap_count() const;
  bool monotone() const { return lap_count() == 1; }

  // If strictly increasing with fixed endpoints on its domain, the inverse.
  std::optional<PAMap> inverse() const;

  IntervalSet preimage(const IntervalSet& values) const;
  IntervalSet image(const IntervalSet& domain) const;

  // Largest denominator among breakpoint coordinates.
  mpz_class max_denominator() const;

  bool operator==(const PAMap& o) const = default;

 private:
  std::size_t segment_index(const Rat& x) const;
  void canonicalize();

  std::vector<Breakpoint> pts_;
};

// f after g, i.e. x -> f(g(x)). g's values must stay inside f's domain.
PAMap compose(const PAMap& f, const PAMap& g);

struct IterateGuard {
  mpz_class max_denominator = mpz_class(1) << 256;
  std::size_t max_segments = 2'000'000;
};

// f^n, or nullopt when a guard trips before reaching n.
std::optional<PAMap> compose_power(const PAMap& f, unsigned n, const IterateGuard& guard = {});

// Pointwise alpha*f + beta*g on the common domain (used by the additive
// perturbation construction); breakpoints are merged.
PAMap linear_combination(const Rat& alpha, const PAMap& f, const Rat& beta, const PAMap& g);

// Exact sup-norm distance between two maps on a common domain; both are
// piecewise affine so the sup is attained on the merged breakpoint set.
Rat sup_distance(const PAMap& f, const PAMap& g);

}  // namespace lmp
