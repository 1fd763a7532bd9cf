#pragma once

#include <optional>
#include <vector>

#include "tt/multicurve.hpp"
#include "tt/slope.hpp"

namespace tt {

// Slope of one realized component, read off the chart.  Throws if the track
// has no chart or the component's deck element is not an essential
// translation.
Slope component_slope(const TrainTrack& t, const CarriedMulticurve& mc, int comp);

// Common slope of all components of a nonzero integral measure (components of
// a multicurve on these surfaces are parallel).
Slope measure_slope(const TrainTrack& t, const MeasureZ& w);

std::vector<Slope> vertex_cycle_slopes(const TrainTrack& t);

// Closed projective interval of carried slopes, spanned by the vertex-cycle
// slopes and containing the mediant sample.
struct SlopeInterval {
  Slope lo, hi;
  Slope sample;
  bool degenerate = false;  // fewer than two extreme rays
};

SlopeInterval carried_slope_interval(const TrainTrack& t);

bool slope_in_closed_interval(const Slope& x, const SlopeInterval& iv);

// Exact membership including endpoints; witnessed by an integral measure.
bool is_carried_slope(const Slope& x, const TrainTrack& t);

// Primitive integral measure realizing the slope, when carried.
std::optional<MeasureZ> slope_measure(const TrainTrack& t, const Slope& x);

// Dual realization exists: the slope lies off the open carried interval, or it
// is a carried slope with a combed side (annulus-swap onto a dual position).
bool is_dual_slope(const TrainTrack& t, const Slope& x);

// Combing report of the carried realization of a slope (weights need not be
// <= 1; germs are collected per switch passage).
CombingReport slope_combing(const TrainTrack& t, const Slope& x);

}  // namespace tt
