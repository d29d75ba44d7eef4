#pragma once

#include <string>
#include <utility>
#include <vector>

#include "geometry.hpp"

namespace dbm {

struct KerneledSet;

// Open interval of lens values. Boundary intervals clipped to the lens range
// keep their construction midpoint and half-width in `center` / `radius` so
// kernels centered on them still cover the clipped part; a clipped endpoint
// becomes closed, since the lens extremes belong to every cover of the range.
struct Interval {
  double lo = 0.0;
  double hi = 0.0;
  bool closed_lo = false;
  bool closed_hi = false;
  double center = 0.0;  // kernel center
  double radius = 0.0;  // kernel base radius (unclipped half-width)

  double midpoint() const { return lo + (hi - lo) / 2.0; }
  double length() const { return hi - lo; }

  bool contains(double t) const {
    bool above = closed_lo ? t >= lo : t > lo;
    bool below = closed_hi ? t <= hi : t < hi;
    return above && below;
  }
};

// Interval cover of the lens range in which only consecutive elements meet.
struct GomicCover {
  std::vector<Interval> intervals;
  double overlap_g = 0.0;

  std::size_t size() const { return intervals.size(); }
  const Interval& operator[](std::size_t i) const { return intervals[i]; }
};

struct GomicReport {
  bool valid = true;
  std::vector<std::string> violations;
};

// N equal-length intervals with evenly spaced midpoints, widened by g and
// clipped to [lo, hi].
GomicCover morse_spaced_cover(double lo, double hi, int n_intervals, double g);

// Sorted-order breakpoint values splitting the lens values into N runs of
// near-equal population. Returns N+1 values from min to max.
std::vector<double> data_spaced_breakpoints(const LensMap& lens, int n_intervals);

// Cover whose base intervals hold near-equal point counts. Each shared
// breakpoint is widened by g/2 times the shorter adjacent base length, which
// keeps the cover gomic even for strongly skewed lens distributions.
GomicCover data_spaced_cover(const LensMap& lens, int n_intervals, double g);

GomicReport validate_gomic(const GomicCover& cover, double lo, double hi);

// Largest lens-value spread over the member points of any set.
double kerneled_resolution(const std::vector<KerneledSet>& sets, const LensMap& lens);

// Widest and narrowest interval covers consistent with the kerneled sets:
// coarse spans each set's full lens range; fine spans only the members that
// would persist under the smallest width multiplier present in the set.
// The coarse cover must validate as gomic.
std::pair<GomicCover, GomicCover> coarse_fine_covers(const std::vector<KerneledSet>& sets,
                                                     const LensMap& lens,
                                                     const std::vector<double>& multipliers);

}  // namespace dbm
