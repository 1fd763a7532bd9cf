#pragma once

#include <optional>
#include <set>
#include <vector>

#include "tt/numeric.hpp"
#include "tt/track.hpp"

namespace tt {

// A curve on S_{1,1} or S_{0,4} named by its slope p/q (q >= 0, gcd 1; the
// vertical curve is 1/0).  The underlying vector is (q, p).
struct Slope {
  Int p = 0;
  Int q = 1;
  SurfaceTag surface = SurfaceTag::S11;

  bool operator==(const Slope&) const = default;
  bool operator<(const Slope& o) const {
    if (p != o.p) return p < o.p;
    if (q != o.q) return q < o.q;
    return surface < o.surface;
  }
  bool is_infinity() const { return q == 0; }
  std::string str() const { return p.str() + "/" + q.str(); }
};

Slope make_slope(Int p, Int q, SurfaceTag surface);
std::optional<Slope> parse_slope(const std::string& s, SurfaceTag surface);

// Geometric intersection number: |p_a q_b - p_b q_a|, doubled on S_{0,4}.
Int intersection_number(const Slope& a, const Slope& b);

// Farey adjacency: one intersection point on S11, two on S04.
bool farey_adjacent(const Slope& a, const Slope& b);

// Exact distance in the Farey graph (continued-fraction descent).
Int farey_distance(const Slope& a, const Slope& b);

// Breadth-first search restricted to slopes with |p|, q <= maxden; oracle for
// the descent algorithm.
Int farey_distance_bfs(const Slope& a, const Slope& b, const Int& maxden);

// diam of the union of two finite slope sets in the Farey graph.
Int farey_diameter(const std::vector<Slope>& xs);

// Continued-fraction pivot slopes between a and b: a superset of every curve
// whose annular projection separates a from b by distance >= 3.
std::vector<Slope> farey_geodesic_pivots(const Slope& a, const Slope& b);

// Integral 2x2 matrix acting on slopes; |det| must be 1.
struct Mat2 {
  Int a = 1, b = 0, c = 0, d = 1;  // acts on column vectors (q, p)
  Int det() const { return a * d - b * c; }
};
Slope apply(const Mat2& m, const Slope& s);
Mat2 mat_mul(const Mat2& x, const Mat2& y);

// k-fold Dehn twist about `about`.
Slope dehn_twist(const Slope& curve, const Slope& about, const Int& k);

// Twist coordinate of an arc class in the annulus around `core`, measured
// against the canonical reference (the minimal-height Farey neighbor of the
// core).
struct TwistCoordinate {
  Slope core;
  Slope reference;
  Int value = 0;
};

// The canonical reference slope for an annulus.
Slope annulus_reference(const Slope& core);

// nullopt exactly when the curve misses the annulus (i == 0).
std::optional<TwistCoordinate> annular_projection(const Slope& curve, const Slope& core);

// Twist value with an explicit reference (used to check reference invariance).
Int twist_value(const Slope& curve, const Slope& core, const Slope& reference);

// 0 for equal classes, else 1 + |difference|; throws on core/reference
// mismatch.
Int annular_distance(const TwistCoordinate& x, const TwistCoordinate& y);

// diam of a set of twist values in the annulus complex.
Int annular_diameter(const std::vector<Int>& twists);

// A filling Farey-adjacent pair.
struct Marking {
  Slope base;
  Slope transversal;
};
Marking make_marking(const Slope& base, const Slope& transversal);

// Cut-off function: 0 below the threshold, identity at or above it.
inline Int cutoff(const Int& x, const Int& c) { return x < c ? Int(0) : x; }

// Sum of the cut-off curve-complex term and the cut-off annular terms over the
// candidate annuli (pivots of all pairs drawn from the two sets, plus the
// slopes themselves).  Throws std::invalid_argument on non-filling input.
Int marking_distance_estimate(const std::vector<Slope>& mu, const std::vector<Slope>& nu,
                              const Int& cutoff_c);

// The candidate annuli used by the estimate (exposed for analysis).
std::vector<Slope> candidate_annuli(const std::vector<Slope>& mu, const std::vector<Slope>& nu);

std::string slope_set_str(const std::vector<Slope>& xs);

}  // namespace tt
