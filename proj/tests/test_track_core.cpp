#include "doctest.h"

#include "tt/atlas.hpp"
#include "tt/moves.hpp"
#include "tt/multicurve.hpp"
#include "tt/track_geometry.hpp"

using namespace tt;

namespace {

TrainTrack bad_two_cusp_unpunctured() {
  TrainTrack t = atlas_entry("s11-std").track;
  t.punctured_regions.clear();
  return t;
}

// Two switches, three branches, all conditions forcing a zero weight:
// w(b) + w(c) = w(a) and w(c) + w(a) = w(b) give w(c) = 0.
TrainTrack nonrecurrent_s11() {
  TrainTrack t;
  t.branches.resize(3);
  t.switches.resize(2);
  auto set = [&](int sw, Slot slot, int b, int e) {
    t.switches[sw].at(slot) = EndRef{b, e};
    t.branches[b].ends[e] = SlotRef{sw, slot};
  };
  set(0, Slot::large, 0, 0);
  set(0, Slot::small_left, 1, 0);
  set(0, Slot::small_right, 2, 0);
  set(1, Slot::large, 1, 1);
  set(1, Slot::small_left, 2, 1);
  set(1, Slot::small_right, 0, 1);
  return t;
}

}  // namespace

TEST_CASE("standard S11 track validates with the expected census") {
  const TrainTrack& t = atlas_entry("s11-std").track;
  CHECK(validate(t).ok());
  BoundaryData bd = boundary_walk(t);
  CHECK(bd.cycles.size() == 1);
  CHECK(bd.total_cusps() == 2);
  Signature sig = signature(t);
  CHECK(sig.genus == 1);
  CHECK(sig.punctures == 1);
  CHECK(classify_branch(t, 0) == BranchClass::small);
  CHECK(classify_branch(t, 1) == BranchClass::small);
  CHECK(classify_branch(t, 2) == BranchClass::large);
}

TEST_CASE("standard S04 track validates with the expected census") {
  const TrainTrack& t = atlas_entry("s04-std").track;
  CHECK(validate(t).ok());
  BoundaryData bd = boundary_walk(t);
  CHECK(bd.cycles.size() == 4);
  for (const auto& c : bd.cycles) CHECK(c.cusps() == 1);
  Signature sig = signature(t);
  CHECK(sig.genus == 0);
  CHECK(sig.punctures == 4);
}

TEST_CASE("region index violations are reported") {
  TrainTrack t = bad_two_cusp_unpunctured();
  ValidityReport rep = validate(t);
  REQUIRE_FALSE(rep.ok());
  bool found = false;
  for (const auto& v : rep.violations)
    if (v.find("index 1 - 2/2 = 0") != std::string::npos) found = true;
  CHECK(found);
}

TEST_CASE("unmatched slots are reported, and boundary_walk refuses them") {
  TrainTrack t = atlas_entry("s11-std").track;
  t.branches[0].ends[1] = SlotRef{1, Slot::large};  // break the matching
  ValidityReport rep = validate(t);
  REQUIRE_FALSE(rep.ok());
  CHECK(rep.violations[0].find("unmatched") != std::string::npos);
  CHECK_THROWS_AS(boundary_walk(t), std::invalid_argument);
}

TEST_CASE("cornerless boundary cycles are reported") {
  // The twisted hookup of the horizontal arc produces a cusp-free cycle.
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
  set(1, Slot::small_left, 1, 0);
  set(1, Slot::small_right, 0, 0);
  ValidityReport rep = validate(t);
  REQUIRE_FALSE(rep.ok());
  bool found = false;
  for (const auto& v : rep.violations)
    if (v.find("cornerless") != std::string::npos) found = true;
  CHECK(found);
}

TEST_CASE("recurrence and transverse recurrence on the atlas") {
  for (const auto& e : atlas()) {
    CAPTURE(e.id);
    CHECK(is_recurrent(e.track));
    CHECK(is_transversely_recurrent(e.track));
  }
}

TEST_CASE("a forced-zero branch kills recurrence") {
  TrainTrack t = nonrecurrent_s11();
  // Give the track its punctures so that it validates before the test.
  BoundaryData bd = boundary_walk(t);
  for (std::size_t r = 0; r < bd.cycles.size(); ++r)
    if (bd.cycles[r].cusps() < 3) t.punctured_regions.insert(static_cast<int>(r));
  if (validate(t).ok()) {
    CHECK_FALSE(is_recurrent(t));
  } else {
    // Still a legitimate witness for the measure engine.
    auto rays = vertex_cycle_measures(t);
    for (const auto& r : rays) CHECK(r[2] == 0);
  }
}

TEST_CASE("JSON round trip is exact") {
  for (const auto& e : atlas()) {
    std::string j = to_json(e.track);
    TrainTrack back = track_from_json(j);
    CHECK(to_json(back) == j);
    CHECK(canonical_key(back) == canonical_key(e.track));
    CHECK(back.punctured_regions == e.track.punctured_regions);
    CHECK(back.chart == e.track.chart);
  }
}

TEST_CASE("canonical keys separate the surfaces and match across relabeling") {
  const TrainTrack& t = atlas_entry("s11-std").track;
  // Relabel branches 0<->1 (swap the roles of the two small branches).
  TrainTrack u = t;
  std::swap(u.branches[0], u.branches[1]);
  std::swap(u.chart[0], u.chart[1]);
  for (auto& sw : u.switches)
    for (auto& e : sw.ends) e.branch = (e.branch == 0) ? 1 : (e.branch == 1 ? 0 : e.branch);
  CHECK(canonical_key(u) == canonical_key(t));
  CHECK(canonical_key(atlas_entry("s04-std").track) != canonical_key(t));
}

TEST_CASE("atlas entries are pairwise non-isomorphic as marked tracks") {
  std::vector<std::string> keys;
  for (const auto& e : atlas()) keys.push_back(marked_canonical_key(e.track));
  for (std::size_t i = 0; i < keys.size(); ++i)
    for (std::size_t j = i + 1; j < keys.size(); ++j) CHECK(keys[i] != keys[j]);
}

TEST_CASE("vertex cycles of the standard tracks realize the expected slopes") {
  auto sorted = [](std::vector<Slope> v) {
    std::sort(v.begin(), v.end());
    return v;
  };
  auto vs11 = sorted(vertex_cycle_slopes(atlas_entry("s11-std").track));
  REQUIRE(vs11.size() == 2);
  CHECK(vs11[0].str() == "0/1");
  CHECK(vs11[1].str() == "1/0");
  auto vs04 = sorted(vertex_cycle_slopes(atlas_entry("s04-std").track));
  REQUIRE(vs04.size() == 2);
  CHECK(vs04[0].str() == "0/1");
  CHECK(vs04[1].str() == "1/0");
  auto vtw = sorted(vertex_cycle_slopes(atlas_entry("s11-tw").track));
  REQUIRE(vtw.size() == 2);
  CHECK(vtw[0].str() == "1/0");
  CHECK(vtw[1].str() == "1/1");
}

TEST_CASE("mediant measures realize mediant slopes") {
  for (const auto& id : {"s11-std", "s04-std"}) {
    const TrainTrack& t = atlas_entry(id).track;
    auto rays = vertex_cycle_measures(t);
    REQUIRE(rays.size() == 2);
    MeasureZ mid(rays[0].size());
    for (std::size_t i = 0; i < mid.size(); ++i) mid[i] = rays[0][i] + rays[1][i];
    CHECK(measure_slope(t, mid).str() == "1/1");
  }
}
