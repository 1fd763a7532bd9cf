#pragma once

#include <optional>
#include <vector>

#include "tt/measure.hpp"
#include "tt/track.hpp"

namespace tt {

enum class MoveKind { split_left, split_central, split_right, slide };

inline const char* move_kind_name(MoveKind k) {
  switch (k) {
    case MoveKind::split_left: return "split_left";
    case MoveKind::split_central: return "split_central";
    case MoveKind::split_right: return "split_right";
    default: return "slide";
  }
}

std::optional<MoveKind> move_kind_from_name(const std::string& s);

enum class SplitDir { left, central, right };

inline MoveKind split_kind(SplitDir d) {
  switch (d) {
    case SplitDir::left: return MoveKind::split_left;
    case SplitDir::central: return MoveKind::split_central;
    default: return MoveKind::split_right;
  }
}

struct MoveRecord {
  MoveKind kind = MoveKind::slide;
  int branch = -1;         // acted-on branch in the parent track
  CarryingMap carrying;    // transports child measures to parent measures
};

struct MoveResult {
  TrainTrack track;  // child
  MoveRecord record;
  // Parent route of every child branch (end0 -> end1); extension steps all run
  // over the removed large branch (splits) or the slid branch (slides).
  std::vector<std::vector<Step>> child_paths;
};

// Split along a large branch.  The directions are named by our convention:
// looking along the branch from its end0 switch, the right split's diagonal
// joins the end0-side small_right strand to the end1-side small_right strand.
// Throws std::invalid_argument when the branch is not large or when the result
// fails validate (the split kills the track).
MoveResult split(const TrainTrack& t, int branch, SplitDir dir);

// Slide along a mixed branch (unique move; applying it twice returns an
// isomorphic track).  Throws std::invalid_argument when not mixed.
MoveResult slide(const TrainTrack& t, int branch);

MoveResult apply_move(const TrainTrack& t, MoveKind kind, int branch);

// Exact carried preimage: nonnegative integral child measure x with
// record.carrying * x == parent_w, zero columns repaired via the child's own
// switch conditions.  nullopt when the parent measure is not carried by the
// child.
std::optional<MeasureZ> carried_preimage(const MoveResult& mv, const TrainTrack& child,
                                         const MeasureZ& parent_w);

// Membership of a parent measure in the three split-child cones, decided by
// balance at the large branch; exact and available even when the central
// child is degenerate.
struct SplitConeMembership {
  bool left = false;
  bool central = false;
  bool right = false;
};
SplitConeMembership split_cone_membership(const TrainTrack& t, int branch, const MeasureZ& w);

}  // namespace tt
