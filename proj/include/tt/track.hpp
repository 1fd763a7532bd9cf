#pragma once

#include <array>
#include <optional>
#include <set>
#include <string>
#include <vector>

#include "tt/numeric.hpp"

namespace tt {

// Slots at a trivalent switch.  Cyclic order (large, small_left, small_right)
// is counterclockwise in the oriented surface; the single cusp of the switch
// sits between small_left and small_right.  "Left"/"right" are read standing
// on the switch facing along the large half-branch.
enum class Slot : int { large = 0, small_left = 1, small_right = 2 };

inline Slot ccw_next(Slot s) { return static_cast<Slot>((static_cast<int>(s) + 1) % 3); }

inline const char* slot_name(Slot s) {
  switch (s) {
    case Slot::large: return "large";
    case Slot::small_left: return "small_left";
    default: return "small_right";
  }
}

struct EndRef {
  int branch = -1;
  int end = -1;  // 0 or 1
  bool operator==(const EndRef&) const = default;
};

struct SlotRef {
  int sw = -1;
  Slot slot = Slot::large;
  bool operator==(const SlotRef&) const = default;
};

struct SwitchRec {
  // Indexed by Slot. ends[0] = large, ends[1] = small_left, ends[2] = small_right.
  std::array<EndRef, 3> ends;
  const EndRef& at(Slot s) const { return ends[static_cast<int>(s)]; }
  EndRef& at(Slot s) { return ends[static_cast<int>(s)]; }
};

struct BranchRec {
  std::array<SlotRef, 2> ends;  // end0, end1
};

enum class BranchClass { large, mixed, small };

inline const char* branch_class_name(BranchClass c) {
  switch (c) {
    case BranchClass::large: return "large";
    case BranchClass::mixed: return "mixed";
    default: return "small";
  }
}

enum class SurfaceTag { S11, S04 };

inline const char* surface_name(SurfaceTag t) { return t == SurfaceTag::S11 ? "S11" : "S04"; }

// Deck element of the covering used for slope bookkeeping: x -> sign*x + (dx,dy).
// On S11 all elements are translations (flip == false); on S04 the branched
// double cover contributes flips.  Closed essential curves compose to a pure
// translation whose vector determines the slope.
struct ChartElem {
  Int dx = 0, dy = 0;
  bool flip = false;
  bool operator==(const ChartElem&) const = default;
};

inline ChartElem chart_compose(const ChartElem& a, const ChartElem& b) {
  // (a then b as deck transformations applied to a path run left to right):
  // g_ab = g_a * g_b with (u,s)(v,t) = (u + s*v, s*t).
  ChartElem r;
  r.dx = a.dx + (a.flip ? -b.dx : b.dx);
  r.dy = a.dy + (a.flip ? -b.dy : b.dy);
  r.flip = a.flip != b.flip;
  return r;
}

inline ChartElem chart_inverse(const ChartElem& a) {
  ChartElem r;
  r.flip = a.flip;
  r.dx = a.flip ? a.dx : -a.dx;
  r.dy = a.flip ? a.dy : -a.dy;
  return r;
}

inline ChartElem chart_identity() { return ChartElem{}; }

// A directed traversal of a branch: positive means end0 -> end1.
struct Step {
  int branch = -1;
  bool forward = true;
  bool operator==(const Step&) const = default;
};

struct TrainTrack {
  std::vector<SwitchRec> switches;
  std::vector<BranchRec> branches;
  // Indices into the canonical region list (see BoundaryData); each named
  // region contains exactly one puncture.
  std::set<int> punctured_regions;

  std::optional<SurfaceTag> surface;
  // Per-branch deck element for the end0 -> end1 traversal; empty when the
  // track carries no slope chart.
  std::vector<ChartElem> chart;

  int num_switches() const { return static_cast<int>(switches.size()); }
  int num_branches() const { return static_cast<int>(branches.size()); }
  bool has_chart() const { return !chart.empty(); }
};

// One boundary cycle of the fattened track.  `arrivals` lists the arrival
// half-branches (branch, end) in walk order; `cusp_switches` the switches
// whose cusp lies on this cycle.
struct BoundaryCycle {
  std::vector<EndRef> arrivals;
  std::vector<int> cusp_switches;
  int cusps() const { return static_cast<int>(cusp_switches.size()); }
};

struct BoundaryData {
  std::vector<BoundaryCycle> cycles;      // canonical order
  std::vector<std::vector<int>> region_of_side;  // [branch][end] -> cycle index
  int total_cusps() const;
};

struct ValidityReport {
  std::vector<std::string> violations;
  bool ok() const { return violations.empty(); }
  std::string summary() const;
};

struct Signature {
  int genus = 0;
  int punctures = 0;
  bool operator==(const Signature&) const = default;
};

// Structural well-formedness: every slot matched to exactly one branch end and
// vice versa.  Throws std::invalid_argument describing the first defect; the
// boundary walk requires this.
void require_matched(const TrainTrack& t);
bool is_matched(const TrainTrack& t, std::string* why = nullptr);

// Boundary cycles of the fattened graph, with cusps.  Each half-branch side
// appears in exactly one cycle; the cusp total equals the switch count.
BoundaryData boundary_walk(const TrainTrack& t);

BranchClass classify_branch(const TrainTrack& t, int branch);

// Full invariant check per the track definition; violations are entries, not
// exceptions.
ValidityReport validate(const TrainTrack& t);

// Derived surface signature, assuming validate() is clean.
Signature signature(const TrainTrack& t);

bool is_connected(const TrainTrack& t);

// Canonical relabeling key: minimal BFS encoding over all start switches.
// Equal keys <=> isomorphic tracks (orientation-preserving, puncture-aware).
std::string canonical_key(const TrainTrack& t);

// JSON round-trip (exact).
std::string to_json(const TrainTrack& t, bool pretty = true);
TrainTrack track_from_json(const std::string& text);

// Chart evaluation along a directed path of branches.
ChartElem chart_of_path(const TrainTrack& t, const std::vector<Step>& path);

}  // namespace tt
