#pragma once

#include <optional>
#include <vector>

#include "tt/measure.hpp"
#include "tt/track.hpp"

namespace tt {

// One pass of a multicurve strand over a branch rectangle.  `strand` indexes
// from the intrinsic top of the rectangle (the left side of the end0 -> end1
// direction); `forward` is the traversal direction relative to end0 -> end1.
struct Traversal {
  int branch = -1;
  int strand = 0;
  bool forward = true;
  bool operator==(const Traversal&) const = default;
};

// Realization of an integral measure: w(b) horizontal arcs per rectangle glued
// at switches as the switch conditions dictate.  Components carry a default
// orientation (the construction order); wideness searches over flips.
struct CarriedMulticurve {
  MeasureZ w;
  std::vector<std::vector<Traversal>> components;

  int num_components() const { return static_cast<int>(components.size()); }
};

CarriedMulticurve realize_multicurve(const TrainTrack& t, const MeasureZ& w);

// Per-rectangle arc counts; inverse of realize_multicurve on measures.
MeasureZ measure_of(const CarriedMulticurve& mc, int num_branches);

// Wide: some orientation of the components puts, in every rectangle, at most
// two arcs, anti-parallel, with the top arc running forward.
bool is_wide(const TrainTrack& t, const CarriedMulticurve& mc);
bool is_wide_measure(const TrainTrack& t, const MeasureZ& w);

// Tie surgery on a non-wide carried curve: produces mult * w = u + v with
// u, v nonzero measures (and u != v when mult == 2).  Returns nullopt for wide
// curves; requires a single-component input.
struct SurgeryResult {
  Int mult = 1;
  MeasureZ u, v;
};
std::optional<SurgeryResult> wideness_surgery(const TrainTrack& t, const CarriedMulticurve& mc);

enum class TwistDir { left, right };
enum class SideComb { combed_left, combed_right, uncombed, vacuous };

inline const char* side_comb_name(SideComb s) {
  switch (s) {
    case SideComb::combed_left: return "combed_left";
    case SideComb::combed_right: return "combed_right";
    case SideComb::uncombed: return "uncombed";
    default: return "vacuous";
  }
}

// A half-branch abutting an oriented carried curve at one of its switch
// passages: the side of the curve it attaches on and the way it twists.
struct Germ {
  int sw = -1;
  int passage = -1;  // index into the component's traversal list
  bool on_left = false;
  TwistDir twist = TwistDir::right;
};

std::vector<Germ> germs_along_component(const TrainTrack& t, const CarriedMulticurve& mc,
                                        int component);

struct CombingReport {
  SideComb left = SideComb::vacuous;
  SideComb right = SideComb::vacuous;
  bool side_combed() const {
    return left != SideComb::uncombed || right != SideComb::uncombed;
  }
};

CombingReport combing_from_germs(const std::vector<Germ>& germs);

// Per-side combing classification of a carried curve with weights <= 1.
CombingReport combing_sides(const TrainTrack& t, const MeasureZ& w);

}  // namespace tt
