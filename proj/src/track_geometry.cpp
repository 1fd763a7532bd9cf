#include "tt/track_geometry.hpp"

#include <algorithm>

namespace tt {

namespace {

std::vector<Step> component_path(const CarriedMulticurve& mc, int comp) {
  std::vector<Step> p;
  for (const Traversal& tr : mc.components.at(comp)) p.push_back(Step{tr.branch, tr.forward});
  return p;
}

}  // namespace

Slope component_slope(const TrainTrack& t, const CarriedMulticurve& mc, int comp) {
  if (!t.has_chart() || !t.surface)
    throw std::invalid_argument("track carries no slope chart");
  ChartElem g = chart_of_path(t, component_path(mc, comp));
  if (g.flip)
    throw std::invalid_argument("component is not a closed curve in the covering chart");
  Int dx = g.dx, dy = g.dy;
  if (*t.surface == SurfaceTag::S04) {
    if (dx % 2 != 0 || dy % 2 != 0)
      throw std::invalid_argument("component class is not a covering translation");
    dx /= 2;
    dy /= 2;
  }
  if (dx == 0 && dy == 0) throw std::invalid_argument("component is inessential");
  return make_slope(dy, dx, *t.surface);
}

Slope measure_slope(const TrainTrack& t, const MeasureZ& w) {
  CarriedMulticurve mc = realize_multicurve(t, w);
  if (mc.num_components() == 0) throw std::invalid_argument("zero measure has no slope");
  Slope s = component_slope(t, mc, 0);
  for (int c = 1; c < mc.num_components(); ++c) {
    Slope o = component_slope(t, mc, c);
    if (!(o == s))
      throw std::runtime_error("multicurve components realize different slopes");
  }
  return s;
}

std::vector<Slope> vertex_cycle_slopes(const TrainTrack& t) {
  std::vector<Slope> out;
  for (const MeasureZ& w : vertex_cycle_measures(t)) out.push_back(measure_slope(t, w));
  return out;
}

SlopeInterval carried_slope_interval(const TrainTrack& t) {
  auto rays = vertex_cycle_measures(t);
  SlopeInterval iv;
  if (rays.size() < 2) {
    iv.degenerate = true;
    if (rays.size() == 1) {
      iv.lo = iv.hi = iv.sample = measure_slope(t, rays[0]);
    } else {
      throw std::invalid_argument("track carries no curves");
    }
    return iv;
  }
  if (rays.size() > 2) iv.degenerate = true;  // flagged; endpoints still reported
  Slope a = measure_slope(t, rays.front());
  Slope b = measure_slope(t, rays.back());
  MeasureZ mid(rays.front());
  for (std::size_t i = 0; i < mid.size(); ++i) mid[i] += rays.back()[i];
  iv.lo = std::min(a, b);
  iv.hi = std::max(a, b);
  iv.sample = measure_slope(t, mid);
  return iv;
}

namespace {

// Linear order on slopes as extended rationals, with 1/0 largest.
int slope_cmp(const Slope& x, const Slope& y) {
  if (x.p == y.p && x.q == y.q) return 0;
  if (x.is_infinity()) return 1;
  if (y.is_infinity()) return -1;
  Int lhs = x.p * y.q, rhs = y.p * x.q;
  return lhs < rhs ? -1 : (lhs > rhs ? 1 : 0);
}

bool in_linear(const Slope& x, const Slope& a, const Slope& b) {
  return slope_cmp(a, x) <= 0 && slope_cmp(x, b) <= 0;
}

}  // namespace

bool slope_in_closed_interval(const Slope& x, const SlopeInterval& iv) {
  Slope a = iv.lo, b = iv.hi;
  if (slope_cmp(b, a) < 0) std::swap(a, b);
  if (iv.lo == iv.hi) return x == iv.lo;
  if (in_linear(iv.sample, a, b)) return in_linear(x, a, b);
  return slope_cmp(x, a) <= 0 || slope_cmp(x, b) >= 0;
}

std::optional<MeasureZ> slope_measure(const TrainTrack& t, const Slope& x) {
  auto rays = vertex_cycle_measures(t);
  if (rays.empty()) return std::nullopt;
  Slope s0 = measure_slope(t, rays.front());
  if (rays.size() == 1) return x == s0 ? std::optional<MeasureZ>(rays.front()) : std::nullopt;
  Slope s1 = measure_slope(t, rays.back());
  if (x == s0) return rays.front();
  if (x == s1) return rays.back();

  // Work in the frame sending the endpoints to 0/1 and 1/0; the carried arc
  // becomes the nonnegative slopes and the descent is Stern-Brocot.
  Int a = s0.q, c = s0.p;  // columns (lo | hi)
  Int b = s1.q, d = s1.p;
  Int det = a * d - b * c;
  if (int_abs(det) != 1) throw std::runtime_error("vertex-cycle slopes not Farey adjacent");
  if (det < 0) {
    a = -a;
    c = -c;
  }
  Mat2 u{d, -b, -c, a};  // inverse of the column matrix
  auto frame = [&](const Slope& s) {
    Int q2 = u.a * s.q + u.b * s.p;
    Int p2 = u.c * s.q + u.d * s.p;
    if (q2 < 0 || (q2 == 0 && p2 < 0)) {
      q2 = -q2;
      p2 = -p2;
    }
    return std::pair<Int, Int>(p2, q2);  // slope p2/q2
  };
  auto [sp, sq] = frame(carried_slope_interval(t).sample);
  bool negate = sp < 0;
  auto framed = [&](const Slope& s) {
    auto [p2, q2] = frame(s);
    if (negate) p2 = -p2;
    return std::pair<Int, Int>(p2, q2);
  };
  auto [tp, tq] = framed(x);
  if (tp < 0) return std::nullopt;  // outside the carried arc
  // Descend: state fractions lo = 0/1, hi = 1/0 with measures.
  Int lop = 0, loq = 1, hip = 1, hiq = 0;
  MeasureZ wlo = rays.front(), whi = rays.back();
  for (int guard = 0; guard < 4000000; ++guard) {
    if (tp * loq == lop * tq) return wlo;
    if (tp * hiq == hip * tq) return whi;
    Int mp = lop + hip, mq = loq + hiq;
    MeasureZ wm(wlo.size());
    for (std::size_t i = 0; i < wm.size(); ++i) wm[i] = wlo[i] + whi[i];
    if (tp * mq == mp * tq) return wm;
    if (tp * mq < mp * tq) {
      hip = mp;
      hiq = mq;
      whi = std::move(wm);
    } else {
      lop = mp;
      loq = mq;
      wlo = std::move(wm);
    }
  }
  throw std::runtime_error("slope_measure descent exceeded iteration guard");
}

bool is_carried_slope(const Slope& x, const TrainTrack& t) {
  auto w = slope_measure(t, x);
  if (!w) return false;
  return measure_slope(t, *w) == x;
}

CombingReport slope_combing(const TrainTrack& t, const Slope& x) {
  auto w = slope_measure(t, x);
  if (!w) throw std::invalid_argument("slope is not carried");
  CarriedMulticurve mc = realize_multicurve(t, *w);
  if (mc.num_components() != 1) throw std::invalid_argument("slope measure is not a curve");
  return combing_from_germs(germs_along_component(t, mc, 0));
}

bool is_dual_slope(const TrainTrack& t, const Slope& x) {
  SlopeInterval iv = carried_slope_interval(t);
  if (iv.degenerate) {
    // No two-dimensional cone: treat every non-carried essential slope as dual
    // and carried ones by combing.
    if (!is_carried_slope(x, t)) return true;
    return slope_combing(t, x).side_combed();
  }
  if (!slope_in_closed_interval(x, iv)) return true;
  bool endpoint = (x == iv.lo) || (x == iv.hi);
  if (!endpoint && is_carried_slope(x, t)) return false;
  if (endpoint) return slope_combing(t, x).side_combed();
  // In the closed interval but not carried: off-cone slope of a degenerate arc.
  return true;
}

}  // namespace tt
