#include "lmp/constructions.hpp"

#include <algorithm>
#include <stdexcept>

namespace lmp {

void validate_schedule(const SeedSchedule& schedule) {
  if (schedule.multiplicity < 3 || schedule.multiplicity % 2 == 0)
    throw std::invalid_argument("seed schedule multiplicity must be odd and >= 3");
}

namespace {

// One refinement pass: each segment (x0,y0)-(x1,y1) becomes M groups of M
// zigzag sub-segments; group i spans the i-th value sub-window in traversal
// order, alternating orientation so the path stays continuous.
std::vector<Breakpoint> refine_once(const std::vector<Breakpoint>& pts, unsigned m) {
  std::vector<Breakpoint> out;
  out.reserve((pts.size() - 1) * m * m + 1);
  const Rat mm(static_cast<long>(m) * m);
  for (std::size_t s = 0; s + 1 < pts.size(); ++s) {
    const Rat& x0 = pts[s].x;
    const Rat& y0 = pts[s].y;
    Rat dx = (pts[s + 1].x - x0) / mm;
    Rat dy = (pts[s + 1].y - y0) / static_cast<long>(m);
    for (unsigned i = 0; i < m; ++i) {
      Rat wlo = y0 + dy * static_cast<long>(i);
      Rat whi = wlo + dy;
      for (unsigned z = 0; z < m; ++z) {
        Rat x = x0 + dx * static_cast<long>(i * m + z);
        out.push_back({std::move(x), z % 2 == 0 ? wlo : whi});
      }
    }
  }
  out.push_back(pts.back());
  return out;
}

}  // namespace

PAMap seed(unsigned level, const SeedSchedule& schedule) {
  validate_schedule(schedule);
  if (level > schedule.max_level)
    throw std::invalid_argument("seed level exceeds schedule maxLevel");
  std::vector<Breakpoint> pts = PAMap::tent().points();
  for (unsigned k = 0; k < level; ++k) pts = refine_once(pts, schedule.multiplicity);
  return PAMap(std::move(pts));
}

Rat seed_evaluate(unsigned level, const SeedSchedule& schedule, const Rat& x) {
  validate_schedule(schedule);
  if (x < 0 || x > 1) throw std::out_of_range("seed_evaluate: x outside [0,1]");
  const long m = schedule.multiplicity;
  // current segment [x0,x1] traversed from y0 to y1
  Rat x0, x1, y0, y1;
  if (x <= rat(1, 2)) {
    x0 = 0;
    x1 = rat(1, 2);
    y0 = 0;
    y1 = 1;
  } else {
    x0 = rat(1, 2);
    x1 = 1;
    y0 = 1;
    y1 = 0;
  }
  for (unsigned k = 0; k < level; ++k) {
    Rat width = x1 - x0;
    Rat t = (x - x0) * (m * m) / width;
    mpz_class idx = rat_floor(t);
    if (idx >= m * m) idx = m * m - 1;  // x at the right edge
    long id = idx.get_si();
    long i = id / m, z = id % m;
    Rat dy = (y1 - y0) / m;
    Rat wlo = y0 + dy * i;
    Rat whi = wlo + dy;
    x0 += width * id / (m * m);
    x1 = x0 + width / (m * m);
    if (z % 2 == 0) {
      y0 = wlo;
      y1 = whi;
    } else {
      y0 = whi;
      y1 = wlo;
    }
  }
  return y0 + (y1 - y0) * (x - x0) / (x1 - x0);
}

Rat seed_max_slope(unsigned level, const SeedSchedule& schedule) {
  Rat s = 2;
  for (unsigned k = 0; k < level; ++k) s *= static_cast<long>(schedule.multiplicity);
  return s;
}

std::pair<PAMap, PAMap> seed_halves(const PAMap& f) {
  const Rat half = rat(1, 2);
  if (!f.unit_domain() || f.evaluate(half) != 1)
    throw std::invalid_argument("seed_halves requires a map on [0,1] with f(1/2) = 1");
  std::vector<Breakpoint> left, right;
  for (const auto& p : f.points()) {
    if (p.x <= half) left.push_back(p);
    if (p.x >= half) right.push_back(p);
  }
  if (left.empty() || left.back().x != half) left.push_back({half, rat(1)});
  if (right.empty() || right.front().x != half)
    right.insert(right.begin(), {half, rat(1)});
  return {PAMap(std::move(left)), PAMap(std::move(right))};
}

PAMap rescale_g(const Rat& a, const Rat& b, const Rat& c, const Rat& d, const PAMap& g) {
  if (!(a < b) || c == d) throw std::invalid_argument("rescale: degenerate domain or window");
  if (g.domain_lo() != 0 || g.domain_hi() != rat(1, 2))
    throw std::invalid_argument("rescale_g expects the left seed half on [0,1/2]");
  std::vector<Breakpoint> pts;
  pts.reserve(g.points().size());
  Rat span = 2 * (b - a);
  for (const auto& p : g.points()) {
    pts.push_back({a + span * p.x, c + (d - c) * p.y});
  }
  return PAMap(std::move(pts));
}

PAMap rescale_h(const Rat& a, const Rat& b, const Rat& c, const Rat& d, const PAMap& h) {
  if (!(a < b) || c == d) throw std::invalid_argument("rescale: degenerate domain or window");
  if (h.domain_lo() != rat(1, 2) || h.domain_hi() != 1)
    throw std::invalid_argument("rescale_h expects the right seed half on [1/2,1]");
  std::vector<Breakpoint> pts;
  pts.reserve(h.points().size());
  Rat span = 2 * (b - a);
  for (const auto& p : h.points()) {
    pts.push_back({a + span * (p.x - rat(1, 2)), c + (d - c) * p.y});
  }
  return PAMap(std::move(pts));
}

std::vector<Rat> densify_partition(const PAMap& ell, const Rat& eps) {
  if (eps <= 0) throw std::invalid_argument("densify: eps must be positive");
  // Uniform grid at mesh <= eps/4, refined by the critical values of ell
  // (values at interior local extrema). Mesh stays < eps/2.
  mpz_class n = rat_ceil(Rat(4) / eps);
  std::vector<Rat> pts;
  for (mpz_class i = 0; i <= n; ++i) pts.emplace_back(Rat(i) / Rat(n));
  const auto& bp = ell.points();
  // Lap endpoint values: interior local extrema plus the boundary values,
  // so every lap range decomposes exactly into value cells.
  pts.push_back(bp.front().y);
  pts.push_back(bp.back().y);
  for (std::size_t i = 1; i + 1 < bp.size(); ++i) {
    int left = sgn_of(bp[i].y - bp[i - 1].y);
    int right = sgn_of(bp[i + 1].y - bp[i].y);
    if (left != right) pts.push_back(bp[i].y);
  }
  std::sort(pts.begin(), pts.end());
  pts.erase(std::unique(pts.begin(), pts.end()), pts.end());
  return pts;
}

namespace {

// Maximal monotone runs of breakpoints: [first, last] index pairs.
std::vector<std::pair<std::size_t, std::size_t>> laps_of(const PAMap& f) {
  const auto& p = f.points();
  std::vector<std::pair<std::size_t, std::size_t>> laps;
  std::size_t start = 0;
  int dir = sgn_of(p[1].y - p[0].y);
  for (std::size_t i = 1; i + 1 < p.size(); ++i) {
    int next = sgn_of(p[i + 1].y - p[i].y);
    if (next != dir && next != 0 && dir != 0) {
      laps.emplace_back(start, i);
      start = i;
      dir = next;
    } else if (dir == 0) {
      dir = next;
    }
  }
  laps.emplace_back(start, p.size() - 1);
  return laps;
}

// x with f(x) = v inside the monotone breakpoint run [first,last].
Rat invert_on_lap(const PAMap& f, std::size_t first, std::size_t last, const Rat& v) {
  const auto& p = f.points();
  bool increasing = p[last].y > p[first].y;
  std::size_t lo = first, hi = last;
  while (hi - lo > 1) {
    std::size_t mid = (lo + hi) / 2;
    bool goRight = increasing ? (p[mid].y <= v) : (p[mid].y >= v);
    if (goRight) {
      lo = mid;
    } else {
      hi = mid;
    }
  }
  Rat s = (p[hi].y - p[lo].y) / (p[hi].x - p[lo].x);
  return p[lo].x + (v - p[lo].y) / s;
}

}  // namespace

PAMap densify(const PAMap& ell, const Rat& eps, unsigned seed_level,
              const SeedSchedule& schedule) {
  auto cert = certify_preservation(ell);
  if (!cert.pass) throw std::invalid_argument("densify: input map is not measure preserving");
  std::vector<Rat> part = densify_partition(ell, eps);

  PAMap base = seed(seed_level, schedule);
  auto [g, h] = seed_halves(base);

  // Monotone preimage pieces of the value cells, enumerated lap by lap.
  // Every critical value of ell is a partition point, so each cell meets
  // each lap in at most one interval.
  struct Piece {
    Rat a, b;
    Rat c, d;  // value cell [c,d], c < d
    bool increasing;
  };
  std::vector<Piece> pieces;
  for (const auto& [first, last] : laps_of(ell)) {
    const auto& p = ell.points();
    bool inc = p[last].y > p[first].y;
    Rat vlo = inc ? p[first].y : p[last].y;
    Rat vhi = inc ? p[last].y : p[first].y;
    for (std::size_t i = 0; i + 1 < part.size(); ++i) {
      if (part[i] < vlo || part[i + 1] > vhi) continue;
      Rat xa = invert_on_lap(ell, first, last, inc ? part[i] : part[i + 1]);
      Rat xb = invert_on_lap(ell, first, last, inc ? part[i + 1] : part[i]);
      pieces.push_back({std::move(xa), std::move(xb), part[i], part[i + 1], inc});
    }
  }
  std::sort(pieces.begin(), pieces.end(),
            [](const Piece& u, const Piece& v) { return u.a < v.a; });

  std::vector<Breakpoint> out;
  for (const auto& piece : pieces) {
    PAMap replaced = piece.increasing ? rescale_g(piece.a, piece.b, piece.c, piece.d, g)
                                      : rescale_h(piece.a, piece.b, piece.c, piece.d, h);
    const auto& rp = replaced.points();
    std::size_t skip = (!out.empty() && out.back().x == rp.front().x) ? 1 : 0;
    out.insert(out.end(), rp.begin() + skip, rp.end());
  }
  return PAMap(std::move(out));
}

bool is_pl_homeomorphism(const PAMap& p) {
  return p.unit_domain() && p.points().front().y == 0 && p.points().back().y == 1 &&
         p.inverse().has_value();
}

Conjugation conjugate(const PAMap& f, const PAMap& p) {
  if (!is_pl_homeomorphism(p))
    throw std::invalid_argument("conjugate: p is not an increasing PL homeomorphism of [0,1]");
  PAMap q = compose(*p.inverse(), compose(f, p));
  return {std::move(q), density_from_homeomorphism(p)};
}

PAMap additive_besicovitch(const Rat& g_slope, const Rat& g_intercept, const Rat& alpha,
                           const Rat& beta, unsigned seed_level, const SeedSchedule& schedule) {
  PAMap f = seed(seed_level, schedule);
  // f_left(x) = f(2x) on [0,1/2], 0 on [1/2,1]; f_right mirrors on [1/2,1].
  std::vector<Breakpoint> lp, rp;
  for (const auto& p : f.points()) lp.push_back({p.x / 2, p.y});
  lp.push_back({rat(1), rat(0)});
  rp.push_back({rat(0), rat(0)});
  for (const auto& p : f.points()) rp.push_back({rat(1, 2) + p.x / 2, p.y});
  PAMap f_left(std::move(lp)), f_right(std::move(rp));

  PAMap g_affine = PAMap::affine(rat(0), rat(1), g_intercept, g_intercept + g_slope);
  PAMap acc = linear_combination(rat(1), g_affine, alpha, f_left);
  acc = linear_combination(rat(1), acc, -beta, f_right);
  if (acc.min_value() < 0 || acc.max_value() > 1)
    throw std::domain_error("additive_besicovitch: values escape [0,1]");
  return acc;
}

}  // namespace lmp
