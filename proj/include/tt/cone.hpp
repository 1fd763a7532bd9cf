#pragma once

#include <vector>

#include "tt/numeric.hpp"

namespace tt {

// Exact double-description enumeration for small polyhedral cones.
//
// Cones are given inside the nonnegative orthant of dimension n; `equalities`
// rows a impose a.x = 0 and `inequalities` rows impose a.x >= 0.  Returns the
// primitive integral generator of every extreme ray, sorted lexicographically.
std::vector<std::vector<Int>> extreme_rays(int n,
                                           const std::vector<std::vector<Int>>& equalities,
                                           const std::vector<std::vector<Int>>& inequalities);

// True iff the cone {x >= 0, Ax = 0, Bx >= 0} contains a strictly positive
// point (every coordinate > 0).
bool has_strictly_positive_point(int n,
                                 const std::vector<std::vector<Int>>& equalities,
                                 const std::vector<std::vector<Int>>& inequalities);

// Divide by the gcd of the entries; zero vectors pass through.
void make_primitive(std::vector<Int>& v);

// All integral points of {x >= 0, Ax = 0} with every coordinate <= maxw,
// enumerated by exact elimination.  Intended for oracle-grade brute force on
// small systems only.
std::vector<std::vector<Int>> integral_points(int n,
                                              const std::vector<std::vector<Int>>& equalities,
                                              const Int& maxw);

}  // namespace tt
