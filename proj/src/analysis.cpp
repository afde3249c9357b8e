#include "lmp/analysis.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

namespace lmp {

// ---------------------------------------------------------------------------
// Density points

Rat DensitySet::measure() const {
  Rat m = 0;
  for (const auto& c : components) m += c.closure.length();
  return m;
}

IntervalSet DensitySet::closure() const {
  std::vector<Interval> parts;
  for (const auto& c : components) parts.push_back(c.closure);
  return IntervalSet(std::move(parts));
}

DensitySet density_points(const IntervalSet& a) {
  DensitySet d;
  for (const auto& comp : a.components()) {
    if (comp.degenerate()) continue;  // an isolated point has density 0
    DensityComponent c;
    c.closure = comp;
    // Interior endpoints have one-sided density 1/2; the endpoints 0 and 1
    // use the one-sided definition and stay in.
    c.open_lo = comp.lo != 0;
    c.open_hi = comp.hi != 1;
    d.components.push_back(std::move(c));
  }
  return d;
}

IntervalSet density_approx(const IntervalSet& a, unsigned m, unsigned n) {
  if (m == 0 || n == 0) throw std::invalid_argument("density_approx: m, n >= 1");
  const Rat h = rat(1, static_cast<long>(m));
  const Rat threshold = (Rat(1) - rat(1, static_cast<long>(n))) * 2 * h;
  // phi(x) = lambda(A intersect [x-h, x+h]) is piecewise linear with
  // breakpoints where the window edges cross component endpoints.
  std::vector<Rat> xs{rat(0), rat(1)};
  for (const auto& comp : a.components()) {
    for (const Rat& e : {comp.lo, comp.hi}) {
      for (const Rat& cand : {Rat(e - h), Rat(e + h)}) {
        if (cand > 0 && cand < 1) xs.push_back(cand);
      }
    }
  }
  std::sort(xs.begin(), xs.end());
  xs.erase(std::unique(xs.begin(), xs.end()), xs.end());

  auto phi = [&](const Rat& x) {
    Rat total = 0;
    for (const auto& comp : a.components()) {
      Rat lo = std::max(comp.lo, Rat(x - h));
      Rat hi = std::min(comp.hi, Rat(x + h));
      if (lo < hi) total += hi - lo;
    }
    return total;
  };

  std::vector<Rat> vals;
  vals.reserve(xs.size());
  for (const auto& x : xs) vals.push_back(phi(x));

  std::vector<Interval> out;
  for (std::size_t i = 0; i + 1 < xs.size(); ++i) {
    const Rat &u = xs[i], &v = xs[i + 1];
    const Rat &fu = vals[i], &fv = vals[i + 1];
    bool above_u = fu > threshold, above_v = fv > threshold;
    if (!above_u && !above_v) continue;
    if (above_u && above_v) {
      out.emplace_back(u, v);
      continue;
    }
    // single crossing inside the affine piece
    Rat cross = u + (threshold - fu) * (v - u) / (fv - fu);
    if (above_u) {
      out.emplace_back(u, cross);
    } else {
      out.emplace_back(cross, v);
    }
  }
  return IntervalSet(std::move(out));
}

// ---------------------------------------------------------------------------

Lemma2Result lemma2_check(const PAMap& f, const IntervalSet& a) {
  Lemma2Result r;
  IntervalSet fa = f.image(a);
  IntervalSet d_fa = density_points(fa).closure();
  IntervalSet d_a = density_points(a).closure();
  r.b = d_a.intersect(f.preimage(d_fa)).intersect(a);
  r.b_measure = r.b.measure();
  r.a_measure = a.measure();
  r.pass = r.b_measure == r.a_measure;
  return r;
}

// ---------------------------------------------------------------------------
// Witness

std::optional<WitnessReport> find_witness(const PAMap& f) {
  if (!f.unit_domain()) throw std::invalid_argument("find_witness: map must live on [0,1]");
  const auto& pts = f.points();
  std::vector<Rat> vals;
  vals.reserve(pts.size());
  for (const auto& p : pts) vals.push_back(p.y);
  std::sort(vals.begin(), vals.end());
  vals.erase(std::unique(vals.begin(), vals.end()), vals.end());
  auto idx = [&](const Rat& v) {
    return static_cast<std::size_t>(std::lower_bound(vals.begin(), vals.end(), v) - vals.begin());
  };
  const std::size_t ncells = vals.size() - 1;
  std::vector<long> diff(ncells + 1, 0);
  for (std::size_t i = 0; i + 1 < pts.size(); ++i) {
    Rat lo = std::min(pts[i].y, pts[i + 1].y);
    Rat hi = std::max(pts[i].y, pts[i + 1].y);
    if (lo == hi) continue;
    ++diff[idx(lo)];
    --diff[idx(hi)];
  }
  long cover = 0;
  std::optional<std::size_t> cell;
  for (std::size_t k = 0; k < ncells; ++k) {
    cover += diff[k];
    if (cover >= 2) {
      cell = k;
      break;
    }
  }
  if (!cell) return std::nullopt;

  const Rat clo = vals[*cell], chi = vals[*cell + 1];
  for (std::size_t i = 0; i + 1 < pts.size(); ++i) {
    Rat lo = std::min(pts[i].y, pts[i + 1].y);
    Rat hi = std::max(pts[i].y, pts[i + 1].y);
    if (!(lo <= clo && chi <= hi)) continue;
    Rat s = f.slope(i);
    if (rat_abs(s) <= 1) continue;
    Rat x1 = pts[i].x + (clo - pts[i].y) / s;
    Rat x2 = pts[i].x + (chi - pts[i].y) / s;
    if (x1 > x2) std::swap(x1, x2);
    WitnessReport w;
    w.y = IntervalSet::single(x1, x2);
    w.image_measure = chi - clo;
    w.set_measure = w.y.measure();
    w.margin = w.image_measure - w.set_measure;
    return w;
  }
  // A doubly covered cell with no |slope| > 1 branch cannot happen for a
  // certified map (the reciprocal slopes over the cell sum to 1).
  return std::nullopt;
}

// ---------------------------------------------------------------------------
// Entropy

double ExactLog::value() const {
  double v = 0;
  for (const auto& t : terms) v += to_double(t.weight) * std::log(to_double(t.base));
  return v;
}

int ExactLog::sign() const {
  if (terms.empty()) return 0;
  bool pos = false, neg = false;
  for (const auto& t : terms) {
    int dir = (t.base > 1) ? sgn_of(t.weight) : -sgn_of(t.weight);
    (dir > 0 ? pos : neg) = true;
  }
  if (pos && !neg) return 1;
  if (neg && !pos) return -1;
  // Mixed combinations do not arise from certified maps; fall back to the
  // float rendering for the exploratory ones.
  double v = value();
  return v > 0 ? 1 : (v < 0 ? -1 : 0);
}

ExactLog rokhlin_entropy(const PAMap& f) {
  const auto& pts = f.points();
  std::vector<ExactLog::Term> raw;
  for (std::size_t i = 0; i + 1 < pts.size(); ++i) {
    if (pts[i].y == pts[i + 1].y)
      throw NotCertifiable(i, "rokhlin_entropy: flat segment");
    Rat base = rat_abs(f.slope(i));
    if (base == 1) continue;
    raw.push_back({pts[i + 1].x - pts[i].x, std::move(base)});
  }
  std::sort(raw.begin(), raw.end(),
            [](const auto& a, const auto& b) { return a.base < b.base; });
  ExactLog out;
  for (auto& t : raw) {
    if (!out.terms.empty() && out.terms.back().base == t.base) {
      out.terms.back().weight += t.weight;
    } else {
      out.terms.push_back(std::move(t));
    }
  }
  return out;
}

double LapTable::lower_bound_estimate(unsigned n_target) const {
  if (rows.empty()) return 0.0;
  const LapTableRow& last = rows.back();
  unsigned n = std::max(n_target, last.n);
  return std::log(static_cast<double>(last.laps)) / static_cast<double>(n);
}

LapTable topological_entropy_lower(const PAMap& f, unsigned n_max, const IterateGuard& guard) {
  if (n_max < 1) throw std::invalid_argument("topological_entropy_lower: nMax >= 1");
  LapTable table;
  PAMap acc = f;
  for (unsigned n = 1; n <= n_max; ++n) {
    std::size_t laps = acc.lap_count();
    table.rows.push_back({n, laps, std::log(static_cast<double>(laps)) / n});
    if (n == n_max) break;
    if (acc.segment_count() * f.segment_count() > guard.max_segments) {
      table.truncated = true;
      break;
    }
    acc = compose(f, acc);
    if (acc.max_denominator() > guard.max_denominator) {
      table.truncated = true;
      break;
    }
  }
  return table;
}

// ---------------------------------------------------------------------------
// Dini envelopes

namespace {

DiniEnvelope envelope_at(const PointEvaluator& f, const Rat& x,
                         const std::vector<unsigned>& scale_exps, unsigned increments) {
  DiniEnvelope env;
  env.x = x;
  Rat fx = f(x);
  for (unsigned j : scale_exps) {
    ScaleEnvelope se;
    se.scale_exp = j;
    Rat h = dyadic(j);
    for (unsigned t = 0; t < increments; ++t, h /= 2) {
      if (x + h <= 1) {
        Rat q = (f(x + h) - fx) / h;
        if (!se.max_right || q > *se.max_right) se.max_right = q;
        if (!se.min_right || q < *se.min_right) se.min_right = q;
      }
      if (x - h >= 0) {
        Rat q = (fx - f(x - h)) / h;
        if (!se.max_left || q > *se.max_left) se.max_left = q;
        if (!se.min_left || q < *se.min_left) se.min_left = q;
      }
    }
    env.scales.push_back(std::move(se));
  }
  return env;
}

}  // namespace

std::vector<DiniEnvelope> dini_envelopes(const PointEvaluator& f, unsigned grid_points,
                                         const std::vector<unsigned>& scale_exps,
                                         unsigned increments, Execution exec) {
  if (grid_points == 0 || increments == 0)
    throw std::invalid_argument("dini_envelopes: counts must be positive");
  std::vector<Rat> grid;
  grid.reserve(grid_points);
  for (unsigned i = 0; i < grid_points; ++i)
    grid.push_back(rat(static_cast<long>(i), static_cast<long>(grid_points)));
  std::vector<DiniEnvelope> out(grid_points);
  if (exec == Execution::Parallel) {
#pragma omp parallel for schedule(dynamic, 8)
    for (std::int64_t i = 0; i < static_cast<std::int64_t>(grid_points); ++i) {
      out[static_cast<std::size_t>(i)] =
          envelope_at(f, grid[static_cast<std::size_t>(i)], scale_exps, increments);
    }
  } else {
    for (unsigned i = 0; i < grid_points; ++i)
      out[i] = envelope_at(f, grid[i], scale_exps, increments);
  }
  return out;
}

std::vector<DiniEnvelope> dini_envelopes(const PAMap& f, unsigned grid_points,
                                         const std::vector<unsigned>& scale_exps,
                                         unsigned increments, Execution exec) {
  return dini_envelopes([&f](const Rat& x) { return f.evaluate(x); }, grid_points,
                        scale_exps, increments, exec);
}

double knot_fraction(const std::vector<DiniEnvelope>& envelopes, const Rat& threshold) {
  if (envelopes.empty()) return 0.0;
  std::size_t finest = 0;
  for (std::size_t s = 0; s < envelopes.front().scales.size(); ++s) {
    if (envelopes.front().scales[s].scale_exp > envelopes.front().scales[finest].scale_exp)
      finest = s;
  }
  std::size_t hits = 0;
  for (const auto& env : envelopes) {
    const auto& se = env.scales[finest];
    bool knot = se.max_right && *se.max_right >= threshold && se.max_left &&
                *se.max_left >= threshold && se.min_right && *se.min_right <= -threshold &&
                se.min_left && *se.min_left <= -threshold;
    if (knot) ++hits;
  }
  return static_cast<double>(hits) / static_cast<double>(envelopes.size());
}

std::optional<Rat> min_max_right_quotient(const std::vector<DiniEnvelope>& envelopes,
                                          unsigned scale_exp) {
  std::optional<Rat> out;
  for (const auto& env : envelopes) {
    for (const auto& se : env.scales) {
      if (se.scale_exp != scale_exp || !se.max_right) continue;
      if (!out || *se.max_right < *out) out = se.max_right;
    }
  }
  return out;
}

Rat envelope_sup(const std::vector<DiniEnvelope>& envelopes) {
  Rat sup = 0;
  auto consider = [&sup](const std::optional<Rat>& q) {
    if (q && rat_abs(*q) > sup) sup = rat_abs(*q);
  };
  for (const auto& env : envelopes) {
    for (const auto& se : env.scales) {
      consider(se.max_right);
      consider(se.min_right);
      consider(se.max_left);
      consider(se.min_left);
    }
  }
  return sup;
}

// ---------------------------------------------------------------------------
// Box counting

namespace {

std::uint64_t column_boxes(const PAMap& f, unsigned j, std::uint64_t col) {
  const mpz_class scale_den = mpz_class(1) << j;
  Rat x_lo = Rat(static_cast<long>(col)) / Rat(scale_den);
  Rat x_hi = Rat(static_cast<long>(col) + 1) / Rat(scale_den);
  const auto& pts = f.points();
  // min/max of f over [x_lo, x_hi]: endpoint values plus interior breakpoints
  Rat lo = f.evaluate(x_lo), hi = lo;
  auto consider = [&](const Rat& v) {
    if (v < lo) lo = v;
    if (v > hi) hi = v;
  };
  consider(f.evaluate(x_hi));
  auto it = std::upper_bound(pts.begin(), pts.end(), x_lo,
                             [](const Rat& v, const Breakpoint& p) { return v < p.x; });
  for (; it != pts.end() && it->x < x_hi; ++it) consider(it->y);
  // rows are [k/2^j, (k+1)/2^j) with the top row closed
  auto row = [&](const Rat& v) {
    mpz_class k = rat_floor(v * scale_den);
    if (k >= scale_den) k = scale_den - 1;
    if (k < 0) k = 0;
    return k;
  };
  mpz_class count = row(hi) - row(lo) + 1;
  return count.get_ui();
}

}  // namespace

BoxCountTable box_dimension(const PAMap& f, const std::vector<unsigned>& scale_exps,
                            Execution exec) {
  if (!f.unit_domain()) throw std::invalid_argument("box_dimension: map must live on [0,1]");
  BoxCountTable table;
  for (unsigned j : scale_exps) {
    const std::int64_t cols = std::int64_t(1) << j;
    std::uint64_t total = 0;
    if (exec == Execution::Parallel) {
#pragma omp parallel for schedule(dynamic, 16) reduction(+ : total)
      for (std::int64_t c = 0; c < cols; ++c)
        total += column_boxes(f, j, static_cast<std::uint64_t>(c));
    } else {
      for (std::int64_t c = 0; c < cols; ++c)
        total += column_boxes(f, j, static_cast<std::uint64_t>(c));
    }
    table.rows.push_back({j, total});
  }
  // least squares: log(boxes) against log(2^j)
  double sx = 0, sy = 0, sxx = 0, sxy = 0;
  const double n = static_cast<double>(table.rows.size());
  for (const auto& r : table.rows) {
    double x = static_cast<double>(r.scale_exp) * std::log(2.0);
    double y = std::log(static_cast<double>(r.boxes));
    sx += x;
    sy += y;
    sxx += x * x;
    sxy += x * y;
  }
  table.slope = (n * sxy - sx * sy) / (n * sxx - sx * sx);
  return table;
}

// ---------------------------------------------------------------------------
// Crookedness

namespace {

// First x in [a,b] with g(x) inside [band_lo, band_hi], or nullopt.
std::optional<Rat> first_in_band(const PAMap& g, const Rat& a, const Rat& b,
                                 const Rat& band_lo, const Rat& band_hi) {
  const auto& pts = g.points();
  for (std::size_t i = 0; i + 1 < pts.size(); ++i) {
    Rat x0 = std::max(a, pts[i].x);
    Rat x1 = std::min(b, pts[i + 1].x);
    if (x0 > x1) continue;
    Rat y0 = g.evaluate(x0);
    Rat y1 = g.evaluate(x1);
    if (y0 >= band_lo && y0 <= band_hi) return x0;
    if (x0 == x1) continue;
    if (y0 < band_lo && y1 >= band_lo) {
      Rat s = (y1 - y0) / (x1 - x0);
      return x0 + (band_lo - y0) / s;
    }
    if (y0 > band_hi && y1 <= band_hi) {
      Rat s = (y1 - y0) / (x1 - x0);
      return x0 + (band_hi - y0) / s;
    }
  }
  return std::nullopt;
}

// Last x in [a,b] with g(x) inside the band, or nullopt.
std::optional<Rat> last_in_band(const PAMap& g, const Rat& a, const Rat& b,
                                const Rat& band_lo, const Rat& band_hi) {
  const auto& pts = g.points();
  for (std::size_t ii = pts.size() - 1; ii-- > 0;) {
    Rat x0 = std::max(a, pts[ii].x);
    Rat x1 = std::min(b, pts[ii + 1].x);
    if (x0 > x1) continue;
    Rat y0 = g.evaluate(x0);
    Rat y1 = g.evaluate(x1);
    if (y1 >= band_lo && y1 <= band_hi) return x1;
    if (x0 == x1) continue;
    if (y1 < band_lo && y0 >= band_lo) {
      Rat s = (y1 - y0) / (x1 - x0);
      return x0 + (band_lo - y0) / s;
    }
    if (y1 > band_hi && y0 <= band_hi) {
      Rat s = (y1 - y0) / (x1 - x0);
      return x0 + (band_hi - y0) / s;
    }
  }
  return std::nullopt;
}

}  // namespace

bool is_delta_crooked(const PAMap& g, const Rat& delta,
                      std::optional<std::pair<Rat, Rat>>* violating) {
  if (delta <= 0) throw std::invalid_argument("is_delta_crooked: delta > 0 required");
  if (delta >= 1 && g.min_value() >= 0 && g.max_value() <= 1) return true;  // vacuous

  // Candidate endpoints: breakpoints plus preimages of band edges
  // g(breakpoint) +- delta. Failure regions in the (a,b) plane are bounded
  // by these alignments, so extremal violating pairs sit on the grid.
  std::vector<Rat> cand;
  std::vector<Rat> edges;
  for (const auto& p : g.points()) {
    cand.push_back(p.x);
    edges.push_back(p.y + delta);
    edges.push_back(p.y - delta);
  }
  std::sort(edges.begin(), edges.end());
  edges.erase(std::unique(edges.begin(), edges.end()), edges.end());
  const auto& pts = g.points();
  for (std::size_t i = 0; i + 1 < pts.size(); ++i) {
    Rat lo = std::min(pts[i].y, pts[i + 1].y);
    Rat hi = std::max(pts[i].y, pts[i + 1].y);
    if (lo == hi) continue;
    Rat s = g.slope(i);
    for (const Rat& v : edges) {
      if (v <= lo || v >= hi) continue;
      cand.push_back(pts[i].x + (v - pts[i].y) / s);
    }
  }
  std::sort(cand.begin(), cand.end());
  cand.erase(std::unique(cand.begin(), cand.end()), cand.end());

  for (std::size_t ia = 0; ia < cand.size(); ++ia) {
    for (std::size_t ib = ia + 1; ib < cand.size(); ++ib) {
      const Rat& a = cand[ia];
      const Rat& b = cand[ib];
      Rat ga = g.evaluate(a), gb = g.evaluate(b);
      auto c = first_in_band(g, a, b, Rat(gb - delta), Rat(gb + delta));
      auto d = last_in_band(g, a, b, Rat(ga - delta), Rat(ga + delta));
      if (!c || !d || !(*c < *d)) {
        if (violating) *violating = std::make_pair(a, b);
        return false;
      }
    }
  }
  return true;
}

std::vector<CrookednessRow> crookedness_check(const PAMap& f, const Rat& delta,
                                              unsigned n_max, const IterateGuard& guard) {
  std::vector<CrookednessRow> rows;
  PAMap acc = f;
  for (unsigned n = 1; n <= n_max; ++n) {
    CrookednessRow row;
    row.n = n;
    row.crooked = is_delta_crooked(acc, delta, &row.violating_pair);
    rows.push_back(std::move(row));
    if (n == n_max) break;
    acc = compose(f, acc);
    if (acc.segment_count() > guard.max_segments ||
        acc.max_denominator() > guard.max_denominator)
      break;
  }
  return rows;
}

}  // namespace lmp
