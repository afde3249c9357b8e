#include "lmp/interval_set.hpp"

#include <algorithm>
#include <stdexcept>

namespace lmp {

void IntervalSet::assign(std::vector<Interval> parts) {
  for (const auto& p : parts) {
    if (p.lo > p.hi) throw std::invalid_argument("interval with lo > hi");
  }
  std::sort(parts.begin(), parts.end(), [](const Interval& a, const Interval& b) {
    return a.lo < b.lo || (a.lo == b.lo && a.hi < b.hi);
  });
  parts_.clear();
  for (auto& p : parts) {
    if (!parts_.empty() && p.lo <= parts_.back().hi) {
      if (p.hi > parts_.back().hi) parts_.back().hi = p.hi;
    } else {
      parts_.push_back(std::move(p));
    }
  }
}

bool IntervalSet::contains(const Rat& x) const {
  for (const auto& p : parts_) {
    if (p.contains(x)) return true;
    if (p.lo > x) break;
  }
  return false;
}

bool IntervalSet::contains(const IntervalSet& other) const {
  for (const auto& q : other.parts_) {
    bool covered = false;
    for (const auto& p : parts_) {
      if (p.lo <= q.lo && q.hi <= p.hi) {
        covered = true;
        break;
      }
    }
    if (!covered) return false;
  }
  return true;
}

IntervalSet IntervalSet::intersect(const IntervalSet& other) const {
  std::vector<Interval> out;
  std::size_t i = 0, j = 0;
  while (i < parts_.size() && j < other.parts_.size()) {
    const Interval& a = parts_[i];
    const Interval& b = other.parts_[j];
    Rat lo = std::max(a.lo, b.lo);
    Rat hi = std::min(a.hi, b.hi);
    if (lo <= hi) out.emplace_back(lo, hi);
    if (a.hi < b.hi) {
      ++i;
    } else {
      ++j;
    }
  }
  return IntervalSet(std::move(out));
}

IntervalSet IntervalSet::unite(const IntervalSet& other) const {
  std::vector<Interval> out = parts_;
  out.insert(out.end(), other.parts_.begin(), other.parts_.end());
  return IntervalSet(std::move(out));
}

IntervalSet IntervalSet::complement() const {
  std::vector<Interval> out;
  Rat cursor = rat(0);
  for (const auto& p : parts_) {
    if (p.lo > cursor) out.emplace_back(cursor, p.lo);
    if (p.hi > cursor) cursor = p.hi;
  }
  if (cursor < 1) out.emplace_back(cursor, rat(1));
  return IntervalSet(std::move(out));
}

}  // namespace lmp
