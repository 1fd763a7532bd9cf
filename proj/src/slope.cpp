#include "tt/slope.hpp"

#include <algorithm>
#include <map>
#include <queue>
#include <sstream>

namespace tt {

Slope make_slope(Int p, Int q, SurfaceTag surface) {
  if (p == 0 && q == 0) throw std::invalid_argument("slope 0/0");
  if (q < 0) {
    p = -p;
    q = -q;
  }
  Int g = int_gcd(int_abs(p), q);
  if (g > 1) {
    p /= g;
    q /= g;
  }
  if (q == 0) p = 1;
  if (q != 0 && p == 0) p = 0;
  Slope s;
  s.p = p;
  s.q = q;
  s.surface = surface;
  return s;
}

std::optional<Slope> parse_slope(const std::string& s, SurfaceTag surface) {
  auto slash = s.find('/');
  std::optional<Int> p, q;
  if (slash == std::string::npos) {
    p = parse_int(s);
    q = Int(1);
  } else {
    p = parse_int(s.substr(0, slash));
    q = parse_int(s.substr(slash + 1));
  }
  if (!p || !q) return std::nullopt;
  if (*p == 0 && *q == 0) return std::nullopt;
  return make_slope(*p, *q, surface);
}

Int intersection_number(const Slope& a, const Slope& b) {
  if (a.surface != b.surface)
    throw std::invalid_argument("intersection number across different surfaces");
  Int det = int_abs(a.p * b.q - b.p * a.q);
  return a.surface == SurfaceTag::S04 ? Int(2 * det) : det;
}

bool farey_adjacent(const Slope& a, const Slope& b) {
  if (a.surface != b.surface) throw std::invalid_argument("surface mismatch");
  return int_abs(a.p * b.q - b.p * a.q) == 1;
}

namespace {

// Unimodular U with U*(q,p)^T of the core = (0,1)^T and U*reference = (1,0)^T.
Mat2 annulus_frame(const Slope& core, const Slope& ref) {
  // Columns (ref | core) as vectors (q, p); invert.
  Int a = ref.q, c = ref.p;  // first column
  Int b = core.q, d = core.p;
  Int det = a * d - b * c;
  if (int_abs(det) != 1) throw std::invalid_argument("reference not adjacent to core");
  if (det < 0) {  // flip the sign of the reference column
    a = -a;
    c = -c;
    det = -det;
  }
  Mat2 u;
  u.a = d;
  u.b = -b;
  u.c = -c;
  u.d = a;
  return u;
}

using PQ = std::pair<Int, Int>;  // (p, q) canonical

PQ canon(Int p, Int q) {
  if (q < 0) {
    p = -p;
    q = -q;
  }
  Int g = int_gcd(int_abs(p), q);
  if (g > 1) {
    p /= g;
    q /= g;
  }
  if (q == 0) p = 1;
  return {p, q};
}

// Distance to the vertical slope 1/0 in the Farey graph.
Int dist_to_infinity(Int p, Int q, std::map<PQ, Int>& memo) {
  auto key = canon(p, q);
  p = key.first;
  q = key.second;
  if (q == 0) return 0;
  if (q == 1) return 1;
  auto it = memo.find(key);
  if (it != memo.end()) return it->second;
  memo[key] = Int(1) << 30;  // guard against cycles (none expected)
  Int lo = floor_div(p, q);
  Int best = -1;
  for (int step = 0; step <= 1; ++step) {
    Int n = lo + step;
    // d(p/q, n/1) = d(p - n q / q, 0/1) = d(-q/(p - n q), infinity).
    Int pp = p - n * q;  // x - n, in (-1, 1)
    if (pp == 0) {
      best = 0;  // p/q == n, should have been caught by q == 1
      break;
    }
    Int d = dist_to_infinity(-q, pp, memo);
    if (best < 0 || d < best) best = d;
  }
  Int r = best + 1;
  memo[key] = r;
  return r;
}

}  // namespace

Int farey_distance(const Slope& a, const Slope& b) {
  if (a.surface != b.surface) throw std::invalid_argument("surface mismatch");
  if (a.p == b.p && a.q == b.q) return 0;
  // Move b to infinity with a unimodular matrix.
  Slope ref = annulus_reference(b);
  Mat2 u = annulus_frame(b, ref);
  Int q2 = u.a * a.q + u.b * a.p;
  Int p2 = u.c * a.q + u.d * a.p;
  std::map<PQ, Int> memo;
  return dist_to_infinity(p2, q2, memo);
}

Int farey_distance_bfs(const Slope& a, const Slope& b, const Int& maxden) {
  if (a.surface != b.surface) throw std::invalid_argument("surface mismatch");
  if (a == b) return 0;
  auto key = [](const Slope& s) { return PQ{s.p, s.q}; };
  std::map<PQ, Int> dist;
  std::queue<Slope> q;
  dist[key(a)] = 0;
  q.push(a);
  auto within = [&](const Int& p, const Int& qq) {
    return int_abs(p) <= maxden && qq <= maxden;
  };
  while (!q.empty()) {
    Slope cur = q.front();
    q.pop();
    Int d = dist[key(cur)];
    // Neighbors r/s: |p s - q r| = 1; all solutions are one Bezout solution
    // plus integer multiples of (q, p)... enumerated within the box.
    for (int sign = -1; sign <= 1; sign += 2) {
      // Solve p*s - q*r = sign via extended gcd.
      Int x, y;  // with p*x + q*y = 1 (gcd is 1)
      {
        // extended euclid on (p, q)
        Int old_r = cur.p, r = cur.q, old_s = 1, s = 0, old_t = 0, tt = 1;
        while (r != 0) {
          Int quo = old_r / r;
          Int tmp = old_r - quo * r;
          old_r = r;
          r = tmp;
          tmp = old_s - quo * s;
          old_s = s;
          s = tmp;
          tmp = old_t - quo * tt;
          old_t = tt;
          tt = tmp;
        }
        // old_r = gcd = +-1; p*old_s + q*old_t = old_r
        if (old_r < 0) {
          old_s = -old_s;
          old_t = -old_t;
        }
        x = old_s;
        y = old_t;
      }
      // p*(sign*x) + q*(sign*y) = sign ; want s0 = sign*x, r0 = -sign*y.
      Int s0 = sign * x, r0 = -(sign * y);
      // family: (r, s) = (r0 + t*p, s0 + t*q)
      for (Int t = -2 * maxden - 2; t <= 2 * maxden + 2; ++t) {
        Int r = r0 + t * cur.p, s = s0 + t * cur.q;
        if (r == 0 && s == 0) continue;
        if (!within(r, s) && !within(-r, -s)) continue;
        Slope nb = make_slope(r, s, cur.surface);
        if (!within(nb.p, nb.q)) continue;
        if (dist.count(key(nb))) continue;
        dist[key(nb)] = d + 1;
        if (nb == b) return d + 1;
        q.push(nb);
      }
    }
  }
  throw std::runtime_error("farey_distance_bfs: target unreachable within bound");
}

Int farey_diameter(const std::vector<Slope>& xs) {
  Int best = 0;
  for (std::size_t i = 0; i < xs.size(); ++i)
    for (std::size_t j = i + 1; j < xs.size(); ++j)
      best = std::max(best, farey_distance(xs[i], xs[j]));
  return best;
}

std::vector<Slope> farey_geodesic_pivots(const Slope& a, const Slope& b) {
  if (a.surface != b.surface) throw std::invalid_argument("surface mismatch");
  if (a == b) return {};
  if (farey_adjacent(a, b)) return {};
  // Work in the frame where b = infinity; expand a as a continued fraction and
  // collect the convergents (these are the pivots of any geodesic fan).
  Slope ref = annulus_reference(b);
  Mat2 u = annulus_frame(b, ref);
  Int q2 = u.a * a.q + u.b * a.p;
  Int p2 = u.c * a.q + u.d * a.p;
  if (q2 < 0) {
    q2 = -q2;
    p2 = -p2;
  }
  // Convergents of p2/q2 via the Euclidean algorithm.
  std::vector<Int> coeffs;
  {
    Int p = p2, q = q2;
    while (q != 0) {
      Int a0 = floor_div(p, q);
      coeffs.push_back(a0);
      Int r = p - a0 * q;
      p = q;
      q = r;
    }
  }
  Mat2 uinv;  // inverse of u (det 1): [[d,-b],[-c,a]]
  uinv.a = u.d;
  uinv.b = -u.b;
  uinv.c = -u.c;
  uinv.d = u.a;
  std::set<Slope> out;
  Int h0 = 1, h1 = coeffs.empty() ? Int(0) : coeffs[0];  // numerators p
  Int k0 = 0, k1 = 1;                                    // denominators q
  if (!coeffs.empty()) {
    for (std::size_t i = 0;; ++i) {
      // current convergent h1/k1
      Slope cv = make_slope(h1, k1, a.surface);
      out.insert(apply(uinv, cv));
      if (i + 1 >= coeffs.size()) break;
      Int h2 = coeffs[i + 1] * h1 + h0;
      Int k2 = coeffs[i + 1] * k1 + k0;
      h0 = h1;
      h1 = h2;
      k0 = k1;
      k1 = k2;
    }
  }
  out.erase(a);
  out.erase(b);
  return std::vector<Slope>(out.begin(), out.end());
}

Slope apply(const Mat2& m, const Slope& s) {
  if (int_abs(m.det()) != 1) throw std::invalid_argument("matrix not unimodular");
  Int q2 = m.a * s.q + m.b * s.p;
  Int p2 = m.c * s.q + m.d * s.p;
  return make_slope(p2, q2, s.surface);
}

Mat2 mat_mul(const Mat2& x, const Mat2& y) {
  Mat2 r;
  r.a = x.a * y.a + x.b * y.c;
  r.b = x.a * y.b + x.b * y.d;
  r.c = x.c * y.a + x.d * y.c;
  r.d = x.c * y.b + x.d * y.d;
  return r;
}

Slope dehn_twist(const Slope& curve, const Slope& about, const Int& k) {
  if (curve.surface != about.surface) throw std::invalid_argument("surface mismatch");
  // v -> v + k * det(about, v) * about on (q, p) vectors.
  Int det = about.q * curve.p - about.p * curve.q;
  Int q2 = curve.q + k * det * about.q;
  Int p2 = curve.p + k * det * about.p;
  return make_slope(p2, q2, curve.surface);
}

Slope annulus_reference(const Slope& core) {
  // Minimal-height Farey neighbor, ties broken by (p, q).
  // Neighbors of (q0, p0): solve p0*s - q0*r = +-1, family + t*(q0, p0).
  Slope best = core;
  bool have = false;
  auto consider = [&](Int r, Int s) {
    if (r == 0 && s == 0) return;
    Slope cand = make_slope(r, s, core.surface);
    auto height = [](const Slope& x) { return std::max(int_abs(x.p), x.q); };
    if (!have || std::tuple(height(cand), cand.p, cand.q) <
                     std::tuple(height(best), best.p, best.q)) {
      best = cand;
      have = true;
    }
  };
  // Bezout for p0*s - q0*r = 1.
  Int p0 = core.p, q0 = core.q;
  Int old_r = p0, r = q0, old_s = 1, s = 0, old_t = 0, tt = 1;
  while (r != 0) {
    Int quo = old_r / r;
    Int tmp = old_r - quo * r;
    old_r = r;
    r = tmp;
    tmp = old_s - quo * s;
    old_s = s;
    s = tmp;
    tmp = old_t - quo * tt;
    old_t = tt;
    tt = tmp;
  }
  if (old_r < 0) {
    old_s = -old_s;
    old_t = -old_t;
  }
  // p0*old_s + q0*old_t = 1 -> neighbor numerator r1 = -old_t, denominator s1 = old_s.
  Int r1 = -old_t, s1 = old_s;
  for (Int t = -3; t <= 3; ++t) consider(r1 + t * p0, s1 + t * q0);
  for (Int t = -3; t <= 3; ++t) consider(-r1 + t * p0, -s1 + t * q0);
  if (!have) throw std::runtime_error("no Farey neighbor found");
  return best;
}

Int twist_value(const Slope& curve, const Slope& core, const Slope& reference) {
  Mat2 u = annulus_frame(core, reference);
  Int q2 = u.a * curve.q + u.b * curve.p;
  Int p2 = u.c * curve.q + u.d * curve.p;
  if (q2 == 0) throw std::invalid_argument("curve misses the annulus");
  if (q2 < 0) {
    q2 = -q2;
    p2 = -p2;
  }
  return floor_div(p2, q2);
}

std::optional<TwistCoordinate> annular_projection(const Slope& curve, const Slope& core) {
  if (curve.surface != core.surface) throw std::invalid_argument("surface mismatch");
  if (intersection_number(curve, core) == 0) return std::nullopt;
  TwistCoordinate t;
  t.core = core;
  t.reference = annulus_reference(core);
  t.value = twist_value(curve, core, t.reference);
  return t;
}

Int annular_distance(const TwistCoordinate& x, const TwistCoordinate& y) {
  if (!(x.core == y.core) || !(x.reference == y.reference))
    throw std::invalid_argument("twist coordinates from different annuli or references");
  if (x.value == y.value) return 0;
  return Int(1) + int_abs(x.value - y.value);
}

Int annular_diameter(const std::vector<Int>& twists) {
  if (twists.size() < 2) return 0;
  Int lo = twists[0], hi = twists[0];
  for (const Int& t : twists) {
    lo = std::min(lo, t);
    hi = std::max(hi, t);
  }
  if (lo == hi) return 0;
  return Int(1) + (hi - lo);
}

Marking make_marking(const Slope& base, const Slope& transversal) {
  Int want = base.surface == SurfaceTag::S04 ? 2 : 1;
  if (intersection_number(base, transversal) != want)
    throw std::invalid_argument("marking requires a Farey-adjacent pair");
  return Marking{base, transversal};
}

std::vector<Slope> candidate_annuli(const std::vector<Slope>& mu, const std::vector<Slope>& nu) {
  std::vector<Slope> all(mu);
  all.insert(all.end(), nu.begin(), nu.end());
  std::set<Slope> cand(all.begin(), all.end());
  for (std::size_t i = 0; i < all.size(); ++i)
    for (std::size_t j = i + 1; j < all.size(); ++j)
      if (!(all[i] == all[j]))
        for (const Slope& s : farey_geodesic_pivots(all[i], all[j])) cand.insert(s);
  return std::vector<Slope>(cand.begin(), cand.end());
}

Int marking_distance_estimate(const std::vector<Slope>& mu, const std::vector<Slope>& nu,
                              const Int& cutoff_c) {
  if (mu.empty() || nu.empty()) throw std::invalid_argument("empty slope set");
  std::vector<Slope> all(mu);
  all.insert(all.end(), nu.begin(), nu.end());
  bool fills = false;
  for (std::size_t i = 0; i < all.size() && !fills; ++i)
    for (std::size_t j = i + 1; j < all.size() && !fills; ++j)
      if (intersection_number(all[i], all[j]) > 0) fills = true;
  if (!fills) throw std::invalid_argument("slope sets do not fill the surface");

  Int total = cutoff(farey_diameter(all), cutoff_c);
  for (const Slope& g : candidate_annuli(mu, nu)) {
    bool mu_cuts = false, nu_cuts = false;
    std::vector<Int> twists;
    for (const Slope& s : mu)
      if (intersection_number(s, g) > 0) {
        mu_cuts = true;
        twists.push_back(twist_value(s, g, annulus_reference(g)));
      }
    for (const Slope& s : nu)
      if (intersection_number(s, g) > 0) {
        nu_cuts = true;
        twists.push_back(twist_value(s, g, annulus_reference(g)));
      }
    if (!mu_cuts || !nu_cuts) continue;
    total += cutoff(annular_diameter(twists), cutoff_c);
  }
  return total;
}

std::string slope_set_str(const std::vector<Slope>& xs) {
  std::ostringstream os;
  os << "{";
  for (std::size_t i = 0; i < xs.size(); ++i) {
    if (i) os << ",";
    os << xs[i].str();
  }
  os << "}";
  return os.str();
}

}  // namespace tt
