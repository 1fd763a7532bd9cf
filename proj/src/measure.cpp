#include "tt/measure.hpp"

#include <algorithm>
#include <functional>

namespace tt {

std::vector<std::vector<Int>> switch_condition_rows(const TrainTrack& t) {
  std::vector<std::vector<Int>> rows;
  for (int s = 0; s < t.num_switches(); ++s) {
    std::vector<Int> row(t.num_branches(), 0);
    row[t.switches[s].at(Slot::large).branch] -= 1;
    row[t.switches[s].at(Slot::small_left).branch] += 1;
    row[t.switches[s].at(Slot::small_right).branch] += 1;
    rows.push_back(std::move(row));
  }
  return rows;
}

std::vector<Rat> switch_defect(const TrainTrack& t, const MeasureQ& w) {
  if (static_cast<int>(w.size()) != t.num_branches())
    throw std::invalid_argument("measure does not cover all branches");
  std::vector<Rat> out;
  for (int s = 0; s < t.num_switches(); ++s) {
    Rat d = w[t.switches[s].at(Slot::small_left).branch] +
            w[t.switches[s].at(Slot::small_right).branch] -
            w[t.switches[s].at(Slot::large).branch];
    out.push_back(d);
  }
  return out;
}

bool is_measure(const TrainTrack& t, const MeasureQ& w) {
  if (static_cast<int>(w.size()) != t.num_branches()) return false;
  for (const Rat& x : w)
    if (x < Rat(0)) return false;
  for (const Rat& d : switch_defect(t, w))
    if (d != Rat(0)) return false;
  return true;
}

bool is_integral_measure(const TrainTrack& t, const MeasureZ& w) {
  MeasureQ q = to_rational(w);
  return is_measure(t, q);
}

std::vector<MeasureZ> vertex_cycle_measures(const TrainTrack& t) {
  return extreme_rays(t.num_branches(), switch_condition_rows(t), {});
}

std::vector<MeasureZ> integral_measures_up_to(const TrainTrack& t, const Int& maxw) {
  return integral_points(t.num_branches(), switch_condition_rows(t), maxw);
}

bool is_recurrent(const TrainTrack& t) {
  return has_strictly_positive_point(t.num_branches(), switch_condition_rows(t), {});
}

std::vector<std::vector<Int>> tangential_inequality_rows(const TrainTrack& t) {
  std::vector<std::vector<Int>> rows;
  BoundaryData bd = boundary_walk(t);
  for (std::size_t r = 0; r < bd.cycles.size(); ++r) {
    if (t.punctured_regions.count(static_cast<int>(r))) continue;
    const BoundaryCycle& cyc = bd.cycles[r];
    const int m = static_cast<int>(cyc.arrivals.size());
    // Cut the cycle into sides at cusps; an arrival at a small_left slot ends
    // its side (the cusp follows it in the walk).
    std::vector<int> cusp_pos;
    for (int i = 0; i < m; ++i) {
      const EndRef& a = cyc.arrivals[i];
      if (t.branches[a.branch].ends[a.end].slot == Slot::small_left) cusp_pos.push_back(i);
    }
    if (cusp_pos.empty()) continue;  // cornerless; validate() reports it
    const int k = static_cast<int>(cusp_pos.size());
    std::vector<std::vector<Int>> side_count(k, std::vector<Int>(t.num_branches(), 0));
    for (int j = 0; j < k; ++j) {
      int begin = (cusp_pos[(j + k - 1) % k] + 1) % m;
      int i = begin;
      while (true) {
        side_count[j][cyc.arrivals[i].branch] += 1;
        if (i == cusp_pos[j]) break;
        i = (i + 1) % m;
      }
    }
    // Polygon inequality: no side longer than the sum of the others.
    for (int i = 0; i < k; ++i) {
      std::vector<Int> row(t.num_branches(), 0);
      for (int j = 0; j < k; ++j)
        for (int b = 0; b < t.num_branches(); ++b)
          row[b] += (j == i ? -side_count[j][b] : side_count[j][b]);
      rows.push_back(std::move(row));
    }
  }
  return rows;
}

bool is_transversely_recurrent(const TrainTrack& t) {
  return has_strictly_positive_point(t.num_branches(), {}, tangential_inequality_rows(t));
}

MeasureQ CarryingMap::apply(const MeasureQ& w_child) const {
  if (static_cast<int>(w_child.size()) != child_branches)
    throw std::invalid_argument("carrying map dimension mismatch");
  MeasureQ out(parent_branches, Rat(0));
  for (int p = 0; p < parent_branches; ++p)
    for (int c = 0; c < child_branches; ++c)
      if (m[p][c] != 0) out[p] += Rat(m[p][c], 1) * w_child[c];
  return out;
}

MeasureZ CarryingMap::apply_int(const MeasureZ& w_child) const {
  if (static_cast<int>(w_child.size()) != child_branches)
    throw std::invalid_argument("carrying map dimension mismatch");
  MeasureZ out(parent_branches, Int(0));
  for (int p = 0; p < parent_branches; ++p)
    for (int c = 0; c < child_branches; ++c)
      if (m[p][c] != 0) out[p] += m[p][c] * w_child[c];
  return out;
}

CarryingMap CarryingMap::compose(const CarryingMap& outer, const CarryingMap& inner) {
  // outer: mid -> parent, inner: child -> mid.
  if (outer.child_branches != inner.parent_branches)
    throw std::invalid_argument("carrying map composition mismatch");
  CarryingMap r;
  r.parent_branches = outer.parent_branches;
  r.child_branches = inner.child_branches;
  r.m.assign(r.parent_branches, std::vector<Int>(r.child_branches, 0));
  for (int p = 0; p < r.parent_branches; ++p)
    for (int k = 0; k < outer.child_branches; ++k) {
      if (outer.m[p][k] == 0) continue;
      for (int c = 0; c < r.child_branches; ++c)
        if (inner.m[k][c] != 0) r.m[p][c] += outer.m[p][k] * inner.m[k][c];
    }
  return r;
}

CarryingMap CarryingMap::identity(int n) {
  CarryingMap r;
  r.parent_branches = r.child_branches = n;
  r.m.assign(n, std::vector<Int>(n, 0));
  for (int i = 0; i < n; ++i) r.m[i][i] = 1;
  return r;
}

namespace {

// Solve sum_i q_i * cols_i = w exactly with q >= 0, if possible.
std::optional<std::vector<Rat>> solve_nonneg(const std::vector<MeasureZ>& cols,
                                             const MeasureZ& w) {
  const int n = static_cast<int>(w.size());
  const int k = static_cast<int>(cols.size());
  // Gaussian elimination on [cols | w].
  std::vector<std::vector<Rat>> a(n, std::vector<Rat>(k + 1));
  for (int i = 0; i < n; ++i) {
    for (int j = 0; j < k; ++j) a[i][j] = Rat(cols[j][i], 1);
    a[i][k] = Rat(w[i], 1);
  }
  std::vector<int> pivot_of_col(k, -1);
  int row = 0;
  for (int col = 0; col < k && row < n; ++col) {
    int sel = row;
    while (sel < n && a[sel][col] == Rat(0)) ++sel;
    if (sel == n) continue;
    std::swap(a[row], a[sel]);
    Rat inv = a[row][col];
    for (int c = col; c <= k; ++c) a[row][c] /= inv;
    for (int r2 = 0; r2 < n; ++r2) {
      if (r2 == row || a[r2][col] == Rat(0)) continue;
      Rat f = a[r2][col];
      for (int c = col; c <= k; ++c) a[r2][c] -= f * a[row][c];
    }
    pivot_of_col[col] = row;
    ++row;
  }
  // Consistency: zero rows must have zero rhs.
  for (int r2 = row; r2 < n; ++r2)
    if (a[r2][k] != Rat(0)) return std::nullopt;
  // Free columns get q = 0.
  std::vector<Rat> q(k, Rat(0));
  for (int col = 0; col < k; ++col)
    if (pivot_of_col[col] >= 0) q[col] = a[pivot_of_col[col]][k];
  for (const Rat& x : q)
    if (x < Rat(0)) return std::nullopt;
  return q;
}

}  // namespace

std::optional<VertexDecomposition> decompose_into_vertex_cycles(const TrainTrack& t,
                                                                const MeasureZ& w) {
  if (!is_integral_measure(t, w)) return std::nullopt;
  auto rays = vertex_cycle_measures(t);
  auto try_cols = [&](const std::vector<MeasureZ>& cols,
                      const std::vector<int>& which) -> std::optional<VertexDecomposition> {
    auto q = solve_nonneg(cols, w);
    if (!q) return std::nullopt;
    VertexDecomposition d;
    d.coeffs.assign(rays.size(), Int(0));
    Int lcm = 1;
    for (const Rat& x : *q) lcm = lcm / int_gcd(lcm, x.denominator()) * x.denominator();
    d.m = lcm;
    for (std::size_t i = 0; i < which.size(); ++i) {
      const Rat& x = (*q)[i];
      d.coeffs[which[i]] = x.numerator() * (lcm / x.denominator());
    }
    return d;
  };
  std::vector<int> all(rays.size());
  for (std::size_t i = 0; i < rays.size(); ++i) all[i] = static_cast<int>(i);
  if (auto d = try_cols(rays, all)) return d;
  // Degenerate cones: search subsets (Caratheodory).
  const int k = static_cast<int>(rays.size());
  for (int mask = 1; mask < (1 << k); ++mask) {
    std::vector<MeasureZ> cols;
    std::vector<int> which;
    for (int i = 0; i < k; ++i)
      if (mask & (1 << i)) {
        cols.push_back(rays[i]);
        which.push_back(i);
      }
    if (auto d = try_cols(cols, which)) return d;
  }
  return std::nullopt;
}

MeasureQ to_rational(const MeasureZ& w) {
  MeasureQ q(w.size());
  for (std::size_t i = 0; i < w.size(); ++i) q[i] = Rat(w[i], 1);
  return q;
}

std::optional<MeasureZ> to_integral(const MeasureQ& w) {
  MeasureZ z(w.size());
  for (std::size_t i = 0; i < w.size(); ++i) {
    if (w[i].denominator() != 1) return std::nullopt;
    z[i] = w[i].numerator();
  }
  return z;
}

}  // namespace tt
