#pragma once

#include <string>
#include <vector>

#include "tt/track.hpp"

namespace tt {

// Curated complete birecurrent tracks, shipped with slope charts.  Entries are
// marked tracks: the same abstract ribbon graph can appear twice with charts
// differing by a mapping class, and then carries a different slope interval.
struct AtlasEntry {
  std::string id;
  SurfaceTag surface;
  std::string note;
  TrainTrack track;
};

const std::vector<AtlasEntry>& atlas();
const AtlasEntry& atlas_entry(const std::string& id);
bool atlas_has(const std::string& id);

// Marked isomorphism key: structural canonical key extended by the sorted
// vertex-cycle slopes (gauge-invariant chart data).
std::string marked_canonical_key(const TrainTrack& t);

}  // namespace tt
