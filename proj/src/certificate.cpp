#include "lmp/certificate.hpp"

#include <algorithm>

namespace lmp {

namespace {

// Sorted unique cell boundaries: all segment endpoint values, plus 0 and 1
// so that uncovered parts of the range show up as unbalanced cells.
std::vector<Rat> cell_boundaries(const PAMap& f, const std::vector<Rat>& extra) {
  std::vector<Rat> vals;
  vals.reserve(f.points().size() + extra.size() + 2);
  vals.push_back(rat(0));
  vals.push_back(rat(1));
  for (const auto& p : f.points()) vals.push_back(p.y);
  for (const auto& v : extra) vals.push_back(v);
  std::sort(vals.begin(), vals.end());
  vals.erase(std::unique(vals.begin(), vals.end()), vals.end());
  return vals;
}

std::size_t boundary_index(const std::vector<Rat>& vals, const Rat& v) {
  return static_cast<std::size_t>(
      std::lower_bound(vals.begin(), vals.end(), v) - vals.begin());
}

void check_slopes(const PAMap& f) {
  for (std::size_t i = 0; i + 1 < f.points().size(); ++i) {
    if (f.points()[i].y == f.points()[i + 1].y)
      throw NotCertifiable(i, "flat segment " + std::to_string(i) +
                                  " on [" + format_rat(f.points()[i].x) + ", " +
                                  format_rat(f.points()[i + 1].x) + "]");
  }
}

struct SegmentSpan {
  std::size_t lo_idx;
  std::size_t hi_idx;
  Rat recip;  // 1/|slope|, or a weighted variant
};

PreservationCertificate sweep(const PAMap& f, const std::vector<Rat>& vals,
                              const std::vector<SegmentSpan>& spans,
                              const std::vector<Rat>& targets, bool collect_branches) {
  const std::size_t ncells = vals.size() - 1;
  std::vector<Rat> diff(ncells + 1, Rat(0));
  for (const auto& s : spans) {
    diff[s.lo_idx] += s.recip;
    diff[s.hi_idx] -= s.recip;
  }
  PreservationCertificate cert;
  cert.pass = true;
  cert.deficiency = 0;
  Rat sum = 0;
  std::vector<Rat> sums(ncells);
  for (std::size_t k = 0; k < ncells; ++k) {
    sum += diff[k];
    sums[k] = sum;
    if (cert.pass && sum != targets[k]) {
      cert.pass = false;
      cert.failing_cell = k;
      cert.deficiency = sum - targets[k];
    }
  }
  if (collect_branches) {
    cert.cells.resize(ncells);
    for (std::size_t k = 0; k < ncells; ++k) {
      cert.cells[k].cell = Interval(vals[k], vals[k + 1]);
      cert.cells[k].reciprocal_sum = sums[k];
    }
    for (std::size_t i = 0; i + 1 < f.points().size(); ++i) {
      const auto& a = f.points()[i];
      const auto& b = f.points()[i + 1];
      Rat s = f.slope(i);
      for (std::size_t k = boundary_index(vals, std::min(a.y, b.y));
           k < ncells && vals[k] < std::max(a.y, b.y); ++k) {
        Rat x1 = a.x + (vals[k] - a.y) / s;
        Rat x2 = a.x + (vals[k + 1] - a.y) / s;
        if (x1 > x2) std::swap(x1, x2);
        cert.cells[k].branches.push_back({Interval(x1, x2), s});
      }
    }
  } else {
    // keep only the failing cell, if any, for reporting
    if (cert.failing_cell) {
      std::size_t k = *cert.failing_cell;
      cert.cells.push_back({Interval(vals[k], vals[k + 1]), {}, sums[k]});
    }
  }
  return cert;
}

}  // namespace

PreservationCertificate certify_preservation(const PAMap& f, bool collect_branches) {
  if (!f.unit_domain())
    throw std::invalid_argument("certify_preservation requires a map on [0,1]");
  check_slopes(f);
  std::vector<Rat> vals = cell_boundaries(f, {});
  std::vector<SegmentSpan> spans;
  spans.reserve(f.segment_count());
  for (std::size_t i = 0; i + 1 < f.points().size(); ++i) {
    const Rat& ya = f.points()[i].y;
    const Rat& yb = f.points()[i + 1].y;
    Rat lo = std::min(ya, yb);
    Rat hi = std::max(ya, yb);
    spans.push_back({boundary_index(vals, lo), boundary_index(vals, hi),
                     Rat(1) / rat_abs(f.slope(i))});
  }
  std::vector<Rat> targets(vals.size() - 1, Rat(1));
  return sweep(f, vals, spans, targets, collect_branches);
}

StepDensity density_from_homeomorphism(const PAMap& p) {
  auto pinv = p.inverse();
  if (!pinv || !p.unit_domain())
    throw std::invalid_argument("density_from_homeomorphism: not an increasing homeomorphism of [0,1]");
  // nu = (p^-1)_* lambda, i.e. nu(A) = lambda(p(A)); its density is p'.
  StepDensity d;
  for (const auto& bp : p.points()) d.cuts.push_back(bp.x);
  for (std::size_t i = 0; i + 1 < p.points().size(); ++i) d.values.push_back(p.slope(i));
  return d;
}

PreservationCertificate certify_preservation_weighted(const PAMap& f, const StepDensity& rho) {
  if (!f.unit_domain())
    throw std::invalid_argument("certify_preservation_weighted requires a map on [0,1]");
  check_slopes(f);
  // Refine cells so that every cell lies in one density piece and every
  // branch's source interval lies in one density piece.
  std::vector<Rat> extra = rho.cuts;
  for (std::size_t i = 0; i + 1 < f.points().size(); ++i) {
    const auto& a = f.points()[i];
    const auto& b = f.points()[i + 1];
    for (const auto& c : rho.cuts) {
      if (a.x < c && c < b.x) extra.push_back(f.evaluate(c));
    }
  }
  std::vector<Rat> vals = cell_boundaries(f, extra);
  const std::size_t ncells = vals.size() - 1;

  auto rho_at = [&](const Rat& x) -> Rat {
    auto it = std::upper_bound(rho.cuts.begin(), rho.cuts.end(), x);
    std::size_t i = static_cast<std::size_t>(it - rho.cuts.begin());
    if (i == 0 || i > rho.values.size()) {
      if (x == rho.cuts.front()) return rho.values.front();
      if (x == rho.cuts.back()) return rho.values.back();
      throw std::invalid_argument("density lookup outside [0,1]");
    }
    return rho.values[i - 1];
  };

  // Sources may differ in weight cell by cell, so accumulate per cell.
  std::vector<Rat> sums(ncells, Rat(0));
  for (std::size_t i = 0; i + 1 < f.points().size(); ++i) {
    const auto& a = f.points()[i];
    const auto& b = f.points()[i + 1];
    Rat lo = std::min(a.y, b.y);
    Rat hi = std::max(a.y, b.y);
    Rat s = f.slope(i);
    Rat recip = Rat(1) / rat_abs(s);
    for (std::size_t k = boundary_index(vals, lo); k < ncells && vals[k] < hi; ++k) {
      Rat x1 = a.x + (vals[k] - a.y) / s;
      Rat x2 = a.x + (vals[k + 1] - a.y) / s;
      Rat mid = (x1 + x2) / 2;
      sums[k] += rho_at(mid) * recip;
    }
  }
  PreservationCertificate cert;
  cert.pass = true;
  cert.deficiency = 0;
  for (std::size_t k = 0; k < ncells; ++k) {
    Rat target = rho_at((vals[k] + vals[k + 1]) / 2);
    if (sums[k] != target) {
      cert.pass = false;
      cert.failing_cell = k;
      cert.deficiency = sums[k] - target;
      cert.cells.push_back({Interval(vals[k], vals[k + 1]), {}, sums[k]});
      break;
    }
  }
  return cert;
}

}  // namespace lmp
