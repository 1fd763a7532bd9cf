#include "tt/cone.hpp"

#include <algorithm>
#include <functional>

namespace tt {

void make_primitive(std::vector<Int>& v) {
  Int g = 0;
  for (const Int& x : v) g = int_gcd(g, int_abs(x));
  if (g > 1)
    for (Int& x : v) x /= g;
}

namespace {

Int dot(const std::vector<Int>& a, const std::vector<Int>& x) {
  Int s = 0;
  for (std::size_t i = 0; i < a.size(); ++i) s += a[i] * x[i];
  return s;
}

struct Ray {
  std::vector<Int> v;
  // Zero set over (orthant coordinates + processed constraint rows), used for
  // the standard adjacency test.
  std::vector<char> tight;
};

bool subset(const std::vector<char>& a, const std::vector<char>& b) {
  for (std::size_t i = 0; i < a.size(); ++i)
    if (a[i] && !b[i]) return false;
  return true;
}

std::vector<char> meet(const std::vector<char>& a, const std::vector<char>& b) {
  std::vector<char> r(a.size());
  for (std::size_t i = 0; i < a.size(); ++i) r[i] = a[i] && b[i];
  return r;
}

// Double description step: impose a.x >= 0 (or = 0) on the current ray list.
void impose(std::vector<Ray>& rays, const std::vector<Int>& a, bool equality, int tight_slot) {
  std::vector<Ray> plus, minus, zero;
  std::vector<Int> val;
  for (Ray& r : rays) {
    Int d = dot(a, r.v);
    if (d == 0) {
      r.tight[tight_slot] = 1;
      zero.push_back(std::move(r));
    } else if (d > 0) {
      plus.push_back(std::move(r));
      val.push_back(d);
    } else {
      minus.push_back(std::move(r));
      val.push_back(d);
    }
  }
  // Values were collected in mixed order; recompute per list for clarity.
  auto value_of = [&](const Ray& r) { return dot(a, r.v); };

  std::vector<Ray> next = std::move(zero);
  if (!equality)
    for (Ray& r : plus) next.push_back(std::move(r));

  // Combine adjacent (+,-) pairs.
  auto all_old = [&](const std::vector<Ray>& xs) { return xs; };
  (void)all_old;
  for (const Ray& p : plus) {
    for (const Ray& m : minus) {
      std::vector<char> common = meet(p.tight, m.tight);
      // Adjacency: no third ray's tight set contains the common tight set.
      bool adjacent = true;
      auto check = [&](const Ray& o) {
        if (&o == &p || &o == &m) return;
        if (subset(common, o.tight)) adjacent = false;
      };
      for (const Ray& o : plus) check(o);
      for (const Ray& o : minus) check(o);
      for (const Ray& o : next)
        if (subset(common, o.tight)) adjacent = false;
      if (!adjacent) continue;
      Int dp = value_of(p);
      Int dm = value_of(m);
      Ray n;
      n.v.resize(p.v.size());
      for (std::size_t i = 0; i < p.v.size(); ++i) n.v[i] = dp * m.v[i] - dm * p.v[i];
      make_primitive(n.v);
      n.tight = common;
      n.tight[tight_slot] = 1;
      // Refresh orthant tightness after the combination.
      for (std::size_t i = 0; i < n.v.size(); ++i)
        if (i < n.tight.size()) n.tight[i] = n.tight[i] || (n.v[i] == 0);
      next.push_back(std::move(n));
    }
  }
  rays = std::move(next);
}

std::vector<Ray> run_dd(int n, const std::vector<std::vector<Int>>& equalities,
                        const std::vector<std::vector<Int>>& inequalities) {
  const int slots = n + static_cast<int>(equalities.size() + inequalities.size());
  std::vector<Ray> rays;
  for (int i = 0; i < n; ++i) {
    Ray r;
    r.v.assign(n, 0);
    r.v[i] = 1;
    r.tight.assign(slots, 0);
    for (int j = 0; j < n; ++j) r.tight[j] = (j != i);
    rays.push_back(std::move(r));
  }
  int slot = n;
  for (const auto& a : equalities) impose(rays, a, /*equality=*/true, slot++);
  for (const auto& a : inequalities) impose(rays, a, /*equality=*/false, slot++);
  return rays;
}

}  // namespace

std::vector<std::vector<Int>> extreme_rays(int n,
                                           const std::vector<std::vector<Int>>& equalities,
                                           const std::vector<std::vector<Int>>& inequalities) {
  auto rays = run_dd(n, equalities, inequalities);
  std::vector<std::vector<Int>> out;
  out.reserve(rays.size());
  for (auto& r : rays) {
    make_primitive(r.v);
    out.push_back(std::move(r.v));
  }
  std::sort(out.begin(), out.end());
  out.erase(std::unique(out.begin(), out.end()), out.end());
  return out;
}

bool has_strictly_positive_point(int n,
                                 const std::vector<std::vector<Int>>& equalities,
                                 const std::vector<std::vector<Int>>& inequalities) {
  auto rays = extreme_rays(n, equalities, inequalities);
  // The sum of all extreme rays is a relative interior point.
  std::vector<Int> sum(n, 0);
  for (const auto& r : rays)
    for (int i = 0; i < n; ++i) sum[i] += r[i];
  for (int i = 0; i < n; ++i)
    if (sum[i] <= 0) return false;
  return !rays.empty();
}

std::vector<std::vector<Int>> integral_points(int n,
                                              const std::vector<std::vector<Int>>& equalities,
                                              const Int& maxw) {
  // Exact RREF over Q to find pivot/free split.
  std::vector<std::vector<Rat>> m;
  for (const auto& row : equalities) {
    std::vector<Rat> r(n);
    for (int i = 0; i < n; ++i) r[i] = Rat(row[i], 1);
    m.push_back(std::move(r));
  }
  std::vector<int> pivot_col;
  std::size_t rank = 0;
  for (int col = 0; col < n && rank < m.size(); ++col) {
    std::size_t sel = rank;
    while (sel < m.size() && m[sel][col] == Rat(0)) ++sel;
    if (sel == m.size()) continue;
    std::swap(m[rank], m[sel]);
    Rat inv = m[rank][col];
    for (int c = 0; c < n; ++c) m[rank][c] /= inv;
    for (std::size_t r2 = 0; r2 < m.size(); ++r2) {
      if (r2 == rank || m[r2][col] == Rat(0)) continue;
      Rat f = m[r2][col];
      for (int c = 0; c < n; ++c) m[r2][c] -= f * m[rank][c];
    }
    pivot_col.push_back(col);
    ++rank;
  }
  std::vector<int> free_cols;
  {
    std::vector<char> is_pivot(n, 0);
    for (int c : pivot_col) is_pivot[c] = 1;
    for (int c = 0; c < n; ++c)
      if (!is_pivot[c]) free_cols.push_back(c);
  }
  std::vector<std::vector<Int>> out;
  std::vector<Int> freev(free_cols.size(), 0);
  std::function<void(std::size_t)> rec = [&](std::size_t k) {
    if (k == free_cols.size()) {
      std::vector<Int> x(n, 0);
      for (std::size_t i = 0; i < free_cols.size(); ++i) x[free_cols[i]] = freev[i];
      for (std::size_t r = 0; r < rank; ++r) {
        Rat v(0);
        for (std::size_t i = 0; i < free_cols.size(); ++i)
          v -= m[r][free_cols[i]] * Rat(freev[i], 1);
        if (v.denominator() != 1) return;
        if (v.numerator() < 0 || v.numerator() > maxw) return;
        x[pivot_col[r]] = v.numerator();
      }
      out.push_back(std::move(x));
      return;
    }
    for (Int v = 0; v <= maxw; ++v) {
      freev[k] = v;
      rec(k + 1);
    }
  };
  rec(0);
  std::sort(out.begin(), out.end());
  return out;
}

}  // namespace tt
