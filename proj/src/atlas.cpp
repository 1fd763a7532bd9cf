#include "tt/atlas.hpp"

#include <algorithm>
#include <map>
#include <sstream>

#include "tt/track_geometry.hpp"

namespace tt {

namespace {

TrainTrack s11_base() {
  // Smoothing of the 0/1 and 1/0 curves at their single crossing: branches
  // a (horizontal), b (vertical), c (the large connector).
  TrainTrack t;
  t.branches.resize(3);
  t.switches.resize(2);
  auto set = [&](int sw, Slot slot, int b, int e) {
    t.switches[sw].at(slot) = EndRef{b, e};
    t.branches[b].ends[e] = SlotRef{sw, slot};
  };
  set(0, Slot::large, 2, 0);
  set(0, Slot::small_left, 0, 1);
  set(0, Slot::small_right, 1, 1);
  set(1, Slot::large, 2, 1);
  set(1, Slot::small_left, 0, 0);
  set(1, Slot::small_right, 1, 0);
  t.punctured_regions = {0};
  t.surface = SurfaceTag::S11;
  t.chart.resize(3);
  t.chart[0] = ChartElem{1, 0, false};
  t.chart[1] = ChartElem{0, 1, false};
  t.chart[2] = ChartElem{0, 0, false};
  return t;
}

TrainTrack s04_base() {
  // Smoothings of the 0/1 and 1/0 curves at their two crossings: horizontal
  // arcs a1, a2, vertical arcs b1, b2, connectors c1, c2.
  TrainTrack t;
  t.branches.resize(6);
  t.switches.resize(4);
  auto set = [&](int sw, Slot slot, int b, int e) {
    t.switches[sw].at(slot) = EndRef{b, e};
    t.branches[b].ends[e] = SlotRef{sw, slot};
  };
  // a1 = 0, a2 = 1, b1 = 2, b2 = 3, c1 = 4, c2 = 5
  set(0, Slot::large, 4, 0);
  set(0, Slot::small_left, 1, 1);
  set(0, Slot::small_right, 3, 0);
  set(1, Slot::large, 4, 1);
  set(1, Slot::small_left, 0, 0);
  set(1, Slot::small_right, 2, 0);
  set(2, Slot::large, 5, 0);
  set(2, Slot::small_left, 0, 1);
  set(2, Slot::small_right, 3, 1);
  set(3, Slot::large, 5, 1);
  set(3, Slot::small_left, 1, 0);
  set(3, Slot::small_right, 2, 1);
  t.punctured_regions = {0, 1, 2, 3};
  t.surface = SurfaceTag::S04;
  t.chart.resize(6);
  t.chart[0] = ChartElem{0, 0, false};
  t.chart[1] = ChartElem{2, 0, false};
  t.chart[2] = ChartElem{2, 2, true};
  t.chart[3] = ChartElem{2, 0, true};
  t.chart[4] = ChartElem{0, 0, false};
  t.chart[5] = ChartElem{0, 0, false};
  return t;
}

// Push the chart forward by a mapping class acting on covering translations:
// (dx, dy) -> (dx, dx + dy) is the parabolic fixing the vertical slope.
TrainTrack remark(TrainTrack t) {
  for (ChartElem& c : t.chart) c.dy = c.dx + c.dy;
  return t;
}

std::vector<AtlasEntry> build_atlas() {
  std::vector<AtlasEntry> v;
  v.push_back({"s11-std", SurfaceTag::S11,
               "once-punctured torus; smoothing of the 0/1 and 1/0 curves at their "
               "crossing; carries the slopes in [0/1, 1/0]",
               s11_base()});
  v.push_back({"s11-tw", SurfaceTag::S11,
               "once-punctured torus; the standard track moved by the parabolic fixing "
               "1/0; carries the slopes in [1/1, 1/0]",
               remark(s11_base())});
  v.push_back({"s04-std", SurfaceTag::S04,
               "four-punctured sphere; smoothings of the 0/1 and 1/0 curves at both "
               "crossings; carries the slopes in [0/1, 1/0]",
               s04_base()});
  v.push_back({"s04-tw", SurfaceTag::S04,
               "four-punctured sphere; the standard track moved by the parabolic fixing "
               "1/0; carries the slopes in [1/1, 1/0]",
               remark(s04_base())});
  return v;
}

}  // namespace

const std::vector<AtlasEntry>& atlas() {
  static const std::vector<AtlasEntry> entries = build_atlas();
  return entries;
}

bool atlas_has(const std::string& id) {
  for (const auto& e : atlas())
    if (e.id == id) return true;
  return false;
}

const AtlasEntry& atlas_entry(const std::string& id) {
  for (const auto& e : atlas())
    if (e.id == id) return e;
  throw std::invalid_argument("no atlas entry named " + id);
}

std::string marked_canonical_key(const TrainTrack& t) {
  std::string key = canonical_key(t);
  if (t.has_chart()) {
    std::vector<std::string> slopes;
    for (const Slope& s : vertex_cycle_slopes(t)) slopes.push_back(s.str());
    std::sort(slopes.begin(), slopes.end());
    key += "|V:";
    for (const auto& s : slopes) key += s + ",";
  }
  return key;
}

}  // namespace tt
