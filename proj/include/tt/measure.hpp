#pragma once

#include <optional>
#include <vector>

#include "tt/cone.hpp"
#include "tt/track.hpp"

namespace tt {

// Weights indexed by branch id.  Switch conditions: at every switch the two
// small half-branch weights sum to the large half-branch weight.
using MeasureQ = std::vector<Rat>;
using MeasureZ = std::vector<Int>;

// One row per switch over branch variables: +1 per small end, -1 per large
// end (a branch incident twice contributes twice).
std::vector<std::vector<Int>> switch_condition_rows(const TrainTrack& t);

// Per-switch residuals w(small_left) + w(small_right) - w(large); the zero
// vector exactly when w is a transverse measure.
std::vector<Rat> switch_defect(const TrainTrack& t, const MeasureQ& w);

bool is_measure(const TrainTrack& t, const MeasureQ& w);
bool is_integral_measure(const TrainTrack& t, const MeasureZ& w);

// Primitive integral generators of the extreme rays of the transverse-measure
// cone, in canonical (lexicographic) order.
std::vector<MeasureZ> vertex_cycle_measures(const TrainTrack& t);

// All integral measures with every weight <= maxw (oracle-grade enumeration).
std::vector<MeasureZ> integral_measures_up_to(const TrainTrack& t, const Int& maxw);

// Strictly positive rational solution of the switch conditions exists.
bool is_recurrent(const TrainTrack& t);

// Strictly positive tangential measure satisfying the per-region polygon
// inequalities exists (no inequality for once-punctured regions).
bool is_transversely_recurrent(const TrainTrack& t);

// The tangential inequality rows over branch variables, one family per
// unpunctured region; exposed for the brute-force cross-check.
std::vector<std::vector<Int>> tangential_inequality_rows(const TrainTrack& t);

// Nonnegative integer matrix transporting child measures to parent measures.
struct CarryingMap {
  int parent_branches = 0;
  int child_branches = 0;
  std::vector<std::vector<Int>> m;  // m[parent][child]

  MeasureQ apply(const MeasureQ& w_child) const;
  MeasureZ apply_int(const MeasureZ& w_child) const;
  static CarryingMap compose(const CarryingMap& outer, const CarryingMap& inner);
  static CarryingMap identity(int n);
};

struct VertexDecomposition {
  Int m = 1;                  // minimal positive multiplier
  std::vector<Int> coeffs;    // one per vertex cycle, m*w = sum coeffs[i]*v_i
};

// Exact decomposition of an integral measure over the vertex cycles; nullopt
// only when w violates the switch conditions.
std::optional<VertexDecomposition> decompose_into_vertex_cycles(const TrainTrack& t,
                                                                const MeasureZ& w);

MeasureQ to_rational(const MeasureZ& w);
std::optional<MeasureZ> to_integral(const MeasureQ& w);

}  // namespace tt
