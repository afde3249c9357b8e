#pragma once

#include <vector>

#include "lmp/rational.hpp"

namespace lmp {

// Closed interval [lo, hi] with lo <= hi. Degenerate (lo == hi) intervals
// are allowed; they carry measure zero but are tracked through set algebra.
struct Interval {
  Rat lo;
  Rat hi;

  Interval() = default;
  Interval(Rat l, Rat h) : lo(std::move(l)), hi(std::move(h)) {}

  Rat length() const { return hi - lo; }
  bool degenerate() const { return lo == hi; }
  bool contains(const Rat& x) const { return lo <= x && x <= hi; }

  bool operator==(const Interval& o) const = default;
};

// Finite union of disjoint closed subintervals of [0,1], sorted by left
// endpoint. Touching intervals are merged on normalization, so components
// are separated by open gaps.
class IntervalSet {
 public:
  IntervalSet() = default;
  explicit IntervalSet(std::vector<Interval> parts) { assign(std::move(parts)); }
  static IntervalSet unit() { return IntervalSet({Interval(rat(0), rat(1))}); }
  static IntervalSet single(Rat lo, Rat hi) {
    return IntervalSet({Interval(std::move(lo), std::move(hi))});
  }

  const std::vector<Interval>& components() const { return parts_; }
  bool empty() const { return parts_.empty(); }

  Rat measure() const {
    Rat m = 0;
    for (const auto& p : parts_) m += p.length();
    return m;
  }

  bool contains(const Rat& x) const;
  bool contains(const IntervalSet& other) const;

  IntervalSet intersect(const IntervalSet& other) const;
  IntervalSet unite(const IntervalSet& other) const;
  // Complement within [0,1].
  IntervalSet complement() const;

  bool operator==(const IntervalSet& o) const = default;

 private:
  void assign(std::vector<Interval> parts);

  std::vector<Interval> parts_;
};

}  // namespace lmp
