#include "lmp/pa_map.hpp"

#include <algorithm>
#include <stdexcept>

namespace lmp {

PAMap::PAMap(std::vector<Breakpoint> points) : pts_(std::move(points)) {
  if (pts_.size() < 2) throw std::invalid_argument("PAMap needs at least two breakpoints");
  for (std::size_t i = 0; i + 1 < pts_.size(); ++i) {
    if (!(pts_[i].x < pts_[i + 1].x))
      throw std::invalid_argument("PAMap breakpoints must be strictly increasing in x");
  }
  canonicalize();
}

void PAMap::canonicalize() {
  std::vector<Breakpoint> out;
  out.reserve(pts_.size());
  out.push_back(pts_.front());
  for (std::size_t i = 1; i + 1 < pts_.size(); ++i) {
    const Breakpoint& a = out.back();
    const Breakpoint& b = pts_[i];
    const Breakpoint& c = pts_[i + 1];
    // b is redundant iff a,b,c are collinear.
    if ((b.y - a.y) * (c.x - b.x) == (c.y - b.y) * (b.x - a.x)) continue;
    out.push_back(b);
  }
  out.push_back(pts_.back());
  pts_ = std::move(out);
}

PAMap PAMap::identity() {
  return PAMap({{rat(0), rat(0)}, {rat(1), rat(1)}});
}

PAMap PAMap::tent() {
  return PAMap({{rat(0), rat(0)}, {rat(1, 2), rat(1)}, {rat(1), rat(0)}});
}

PAMap PAMap::reflection() {
  return PAMap({{rat(0), rat(1)}, {rat(1), rat(0)}});
}

PAMap PAMap::affine(const Rat& x0, const Rat& x1, const Rat& y0, const Rat& y1) {
  return PAMap({{x0, y0}, {x1, y1}});
}

Rat PAMap::slope(std::size_t i) const {
  return (pts_[i + 1].y - pts_[i].y) / (pts_[i + 1].x - pts_[i].x);
}

bool PAMap::has_zero_slope() const {
  for (std::size_t i = 0; i + 1 < pts_.size(); ++i) {
    if (pts_[i].y == pts_[i + 1].y) return true;
  }
  return false;
}

Rat PAMap::max_abs_slope() const {
  Rat best = 0;
  for (std::size_t i = 0; i + 1 < pts_.size(); ++i) {
    Rat s = rat_abs(slope(i));
    if (s > best) best = s;
  }
  return best;
}

Rat PAMap::min_value() const {
  Rat m = pts_.front().y;
  for (const auto& p : pts_)
    if (p.y < m) m = p.y;
  return m;
}

Rat PAMap::max_value() const {
  Rat m = pts_.front().y;
  for (const auto& p : pts_)
    if (p.y > m) m = p.y;
  return m;
}

std::size_t PAMap::segment_index(const Rat& x) const {
  auto it = std::upper_bound(pts_.begin(), pts_.end(), x,
                             [](const Rat& v, const Breakpoint& p) { return v < p.x; });
  std::size_t i = static_cast<std::size_t>(it - pts_.begin());
  if (i == 0) throw std::out_of_range("evaluation point below domain");
  if (i >= pts_.size()) {
    if (x == pts_.back().x) return pts_.size() - 2;
    throw std::out_of_range("evaluation point above domain");
  }
  return i - 1;
}

Rat PAMap::evaluate(const Rat& x) const {
  std::size_t i = segment_index(x);
  const Breakpoint& a = pts_[i];
  const Breakpoint& b = pts_[i + 1];
  return a.y + (b.y - a.y) * (x - a.x) / (b.x - a.x);
}

std::size_t PAMap::lap_count() const {
  std::size_t laps = 1;
  int prev = 0;
  for (std::size_t i = 0; i + 1 < pts_.size(); ++i) {
    int sgn = sgn_of(pts_[i + 1].y - pts_[i].y);
    if (sgn == 0) continue;
    if (prev != 0 && sgn != prev) ++laps;
    prev = sgn;
  }
  return laps;
}

std::optional<PAMap> PAMap::inverse() const {
  std::vector<Breakpoint> inv;
  inv.reserve(pts_.size());
  for (const auto& p : pts_) {
    if (!inv.empty() && !(inv.back().x < p.y)) return std::nullopt;
    inv.push_back({p.y, p.x});
  }
  return PAMap(std::move(inv));
}

IntervalSet PAMap::preimage(const IntervalSet& values) const {
  std::vector<Interval> out;
  for (std::size_t i = 0; i + 1 < pts_.size(); ++i) {
    const Breakpoint& a = pts_[i];
    const Breakpoint& b = pts_[i + 1];
    Rat lo = std::min(a.y, b.y);
    Rat hi = std::max(a.y, b.y);
    for (const auto& comp : values.components()) {
      Rat clo = std::max(lo, comp.lo);
      Rat chi = std::min(hi, comp.hi);
      if (clo > chi) continue;
      if (a.y == b.y) {  // flat segment: whole domain piece maps to one value
        out.emplace_back(a.x, b.x);
        continue;
      }
      Rat s = (b.y - a.y) / (b.x - a.x);
      Rat x1 = a.x + (clo - a.y) / s;
      Rat x2 = a.x + (chi - a.y) / s;
      if (x1 > x2) std::swap(x1, x2);
      out.emplace_back(x1, x2);
    }
  }
  return IntervalSet(std::move(out));
}

IntervalSet PAMap::image(const IntervalSet& domain) const {
  std::vector<Interval> out;
  for (const auto& comp : domain.components()) {
    for (std::size_t i = 0; i + 1 < pts_.size(); ++i) {
      const Breakpoint& a = pts_[i];
      const Breakpoint& b = pts_[i + 1];
      Rat clo = std::max(a.x, comp.lo);
      Rat chi = std::min(b.x, comp.hi);
      if (clo > chi) continue;
      Rat y1 = evaluate(clo);
      Rat y2 = evaluate(chi);
      if (y1 > y2) std::swap(y1, y2);
      out.emplace_back(y1, y2);
    }
  }
  return IntervalSet(std::move(out));
}

mpz_class PAMap::max_denominator() const {
  mpz_class m = 1;
  for (const auto& p : pts_) {
    if (p.x.get_den() > m) m = p.x.get_den();
    if (p.y.get_den() > m) m = p.y.get_den();
  }
  return m;
}

PAMap compose(const PAMap& f, const PAMap& g) {
  const auto& gp = g.points();
  const auto& fp = f.points();
  std::vector<Rat> xs;
  xs.reserve(gp.size());
  for (const auto& p : gp) xs.push_back(p.x);
  // g-preimages of f's breakpoints, segment by segment.
  for (std::size_t i = 0; i + 1 < gp.size(); ++i) {
    const Breakpoint& a = gp[i];
    const Breakpoint& b = gp[i + 1];
    if (a.y == b.y) continue;
    Rat lo = std::min(a.y, b.y);
    Rat hi = std::max(a.y, b.y);
    Rat s = (b.y - a.y) / (b.x - a.x);
    auto first = std::upper_bound(fp.begin(), fp.end(), lo,
                                  [](const Rat& v, const Breakpoint& p) { return v < p.x; });
    for (auto it = first; it != fp.end() && it->x < hi; ++it) {
      xs.push_back(a.x + (it->x - a.y) / s);
    }
  }
  std::sort(xs.begin(), xs.end());
  xs.erase(std::unique(xs.begin(), xs.end()), xs.end());
  std::vector<Breakpoint> out;
  out.reserve(xs.size());
  for (auto& x : xs) {
    Rat y = f.evaluate(g.evaluate(x));
    out.push_back({std::move(x), std::move(y)});
  }
  return PAMap(std::move(out));
}

std::optional<PAMap> compose_power(const PAMap& f, unsigned n, const IterateGuard& guard) {
  PAMap acc = PAMap::identity();
  if (!f.unit_domain()) throw std::invalid_argument("compose_power requires a map on [0,1]");
  for (unsigned k = 0; k < n; ++k) {
    acc = compose(f, acc);
    if (acc.segment_count() > guard.max_segments) return std::nullopt;
    if (acc.max_denominator() > guard.max_denominator) return std::nullopt;
  }
  return acc;
}

PAMap linear_combination(const Rat& alpha, const PAMap& f, const Rat& beta, const PAMap& g) {
  if (f.domain_lo() != g.domain_lo() || f.domain_hi() != g.domain_hi())
    throw std::invalid_argument("linear_combination: domain mismatch");
  std::vector<Rat> xs;
  for (const auto& p : f.points()) xs.push_back(p.x);
  for (const auto& p : g.points()) xs.push_back(p.x);
  std::sort(xs.begin(), xs.end());
  xs.erase(std::unique(xs.begin(), xs.end()), xs.end());
  std::vector<Breakpoint> out;
  out.reserve(xs.size());
  for (auto& x : xs) {
    Rat y = alpha * f.evaluate(x) + beta * g.evaluate(x);
    out.push_back({std::move(x), std::move(y)});
  }
  return PAMap(std::move(out));
}

Rat sup_distance(const PAMap& f, const PAMap& g) {
  if (f.domain_lo() != g.domain_lo() || f.domain_hi() != g.domain_hi())
    throw std::invalid_argument("sup_distance: domain mismatch");
  Rat best = 0;
  auto consider = [&](const Rat& x) {
    Rat d = rat_abs(f.evaluate(x) - g.evaluate(x));
    if (d > best) best = d;
  };
  for (const auto& p : f.points()) consider(p.x);
  for (const auto& p : g.points()) consider(p.x);
  return best;
}

}  // namespace lmp
