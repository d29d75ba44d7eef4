#include "cover.hpp"

#include <algorithm>
#include <cmath>

#include "kernel.hpp"

namespace dbm {

namespace {

Interval make_clipped(double raw_lo, double raw_hi, double range_lo, double range_hi) {
  Interval iv;
  iv.center = raw_lo + (raw_hi - raw_lo) / 2.0;
  iv.radius = (raw_hi - raw_lo) / 2.0;
  if (raw_lo < range_lo) {
    iv.lo = range_lo;
    iv.closed_lo = true;
  } else {
    iv.lo = raw_lo;
  }
  if (raw_hi > range_hi) {
    iv.hi = range_hi;
    iv.closed_hi = true;
  } else {
    iv.hi = raw_hi;
  }
  return iv;
}

}  // namespace

GomicCover morse_spaced_cover(double lo, double hi, int n_intervals, double g) {
  require(lo < hi, errc::invalid_parameter, "cover range must satisfy lo < hi");
  require(n_intervals >= 1, errc::invalid_parameter, "cover needs at least one interval");
  require(g > 0.0 && g < 1.0, errc::invalid_parameter, "overlap g must lie in (0, 1)");

  double step = (hi - lo) / n_intervals;
  double half = (step / 2.0) * (1.0 + g / 2.0);
  GomicCover cover;
  cover.overlap_g = g;
  cover.intervals.reserve(n_intervals);
  for (int i = 1; i <= n_intervals; ++i) {
    double mid = lo + (i - 0.5) * step;
    cover.intervals.push_back(make_clipped(mid - half, mid + half, lo, hi));
  }
  return cover;
}

std::vector<double> data_spaced_breakpoints(const LensMap& lens, int n_intervals) {
  require(n_intervals >= 1, errc::invalid_parameter, "cover needs at least one interval");
  std::size_t n = lens.size();
  require(n >= static_cast<std::size_t>(n_intervals) + 1, errc::invalid_parameter,
          "data-spaced cover needs at least N + 1 points");
  std::vector<double> sorted = lens.values();
  std::sort(sorted.begin(), sorted.end());

  std::vector<double> breaks(n_intervals + 1);
  for (int i = 0; i <= n_intervals; ++i) {
    // 1-based index 1 + ceil(i (n-1) / N) into the sorted values.
    std::size_t offset =
        (static_cast<std::size_t>(i) * (n - 1) + n_intervals - 1) / n_intervals;
    breaks[i] = sorted[std::min(offset, n - 1)];
  }
  return breaks;
}

GomicCover data_spaced_cover(const LensMap& lens, int n_intervals, double g) {
  require(g > 0.0 && g < 1.0, errc::invalid_parameter, "overlap g must lie in (0, 1)");
  std::vector<double> breaks = data_spaced_breakpoints(lens, n_intervals);
  for (std::size_t i = 1; i < breaks.size(); ++i) {
    require(breaks[i - 1] < breaks[i], errc::degenerate_cover,
            "data-spaced cover degenerates: repeated breakpoint lens value");
  }

  std::size_t n_iv = breaks.size() - 1;
  std::vector<double> base(n_iv);
  for (std::size_t i = 0; i < n_iv; ++i) base[i] = breaks[i + 1] - breaks[i];

  // Widening applied at breakpoint i; inner breakpoints use the shorter
  // neighbouring base length so non-consecutive intervals stay disjoint.
  std::vector<double> widen(breaks.size());
  widen.front() = (g / 2.0) * base.front();
  widen.back() = (g / 2.0) * base.back();
  for (std::size_t i = 1; i + 1 < breaks.size(); ++i)
    widen[i] = (g / 2.0) * std::min(base[i - 1], base[i]);

  GomicCover cover;
  cover.overlap_g = g;
  cover.intervals.reserve(n_iv);
  for (std::size_t i = 0; i < n_iv; ++i) {
    cover.intervals.push_back(make_clipped(breaks[i] - widen[i], breaks[i + 1] + widen[i + 1],
                                           breaks.front(), breaks.back()));
  }
  return cover;
}

GomicReport validate_gomic(const GomicCover& cover, double lo, double hi) {
  GomicReport report;
  auto flag = [&](const std::string& msg) {
    report.valid = false;
    report.violations.push_back(msg);
  };

  if (cover.intervals.empty()) {
    flag("cover is empty");
    return report;
  }

  std::vector<Interval> sorted = cover.intervals;
  std::sort(sorted.begin(), sorted.end(),
            [](const Interval& a, const Interval& b) { return a.lo < b.lo; });

  for (const Interval& iv : sorted) {
    if (!(iv.lo < iv.hi)) flag("interval has non-positive length");
  }

  // Coverage of [lo, hi].
  const Interval& first = sorted.front();
  if (first.lo > lo || (first.lo == lo && !first.closed_lo)) {
    flag("cover does not reach the lower end of the range");
  }
  double reach = first.hi;
  bool reach_closed = first.closed_hi;
  for (std::size_t i = 1; i < sorted.size(); ++i) {
    const Interval& iv = sorted[i];
    if (reach < hi && (iv.lo > reach || (iv.lo == reach && !(iv.closed_lo && reach_closed)))) {
      flag("cover leaves a gap below " + std::to_string(iv.lo));
    }
    if (iv.hi > reach || (iv.hi == reach && iv.closed_hi)) {
      reach = iv.hi;
      reach_closed = iv.closed_hi;
    }
  }
  if (reach < hi || (reach == hi && !reach_closed)) {
    flag("cover does not reach the upper end of the range");
  }

  for (std::size_t i = 0; i < sorted.size(); ++i) {
    for (std::size_t j = i + 1; j < sorted.size(); ++j) {
      bool contains = sorted[i].lo <= sorted[j].lo && sorted[j].hi <= sorted[i].hi;
      bool contained = sorted[j].lo <= sorted[i].lo && sorted[i].hi <= sorted[j].hi;
      if (contains || contained) flag("one interval contains another");
    }
  }

  // Gomic: consecutive intervals overlap with positive length, others are
  // disjoint, and overlap stays a proper fraction of each interval.
  for (std::size_t i = 0; i + 1 < sorted.size(); ++i) {
    double overlap = std::min(sorted[i].hi, sorted[i + 1].hi) - sorted[i + 1].lo;
    if (overlap <= 0.0) flag("consecutive intervals do not overlap");
    if (overlap >= sorted[i].length() || overlap >= sorted[i + 1].length()) {
      flag("overlap is not a proper fraction of the interval length");
    }
  }
  for (std::size_t i = 0; i + 2 < sorted.size(); ++i) {
    for (std::size_t j = i + 2; j < sorted.size(); ++j) {
      if (sorted[j].lo < sorted[i].hi) {
        flag("more than two intervals intersect");
      }
    }
  }
  return report;
}

double kerneled_resolution(const std::vector<KerneledSet>& sets, const LensMap& lens) {
  require(!sets.empty(), errc::invalid_parameter, "cover has no sets");
  double resolution = 0.0;
  for (const KerneledSet& set : sets) {
    require(!set.members.empty(), errc::degenerate_cover,
            "kerneled set has no member points");
    double lo = lens[static_cast<std::size_t>(set.members.front().index)];
    double hi = lo;
    for (const auto& m : set.members) {
      double t = lens[static_cast<std::size_t>(m.index)];
      lo = std::min(lo, t);
      hi = std::max(hi, t);
    }
    resolution = std::max(resolution, hi - lo);
  }
  return resolution;
}

std::pair<GomicCover, GomicCover> coarse_fine_covers(const std::vector<KerneledSet>& sets,
                                                     const LensMap& lens,
                                                     const std::vector<double>& multipliers) {
  require(!sets.empty(), errc::invalid_parameter, "cover has no sets");
  require(multipliers.size() == lens.size(), errc::invalid_parameter,
          "multipliers must match the lens");

  GomicCover coarse, fine;
  for (const KerneledSet& set : sets) {
    require(!set.members.empty(), errc::degenerate_cover,
            "kerneled set has no member points");

    double c_min = multipliers[static_cast<std::size_t>(set.members.front().index)];
    double lo = lens[static_cast<std::size_t>(set.members.front().index)];
    double hi = lo;
    for (const auto& m : set.members) {
      std::size_t i = static_cast<std::size_t>(m.index);
      c_min = std::min(c_min, multipliers[i]);
      lo = std::min(lo, lens[i]);
      hi = std::max(hi, lens[i]);
    }
    Interval wide;
    wide.lo = lo;
    wide.hi = hi;
    wide.closed_lo = wide.closed_hi = true;
    wide.center = lo + (hi - lo) / 2.0;
    wide.radius = (hi - lo) / 2.0;
    coarse.intervals.push_back(wide);

    // Members guaranteed present under every multiplier in the set.
    double guaranteed = c_min * set.base_radius;
    double flo = 0.0, fhi = 0.0;
    bool any = false;
    for (const auto& m : set.members) {
      double t = lens[static_cast<std::size_t>(m.index)];
      if (std::abs(t - set.center) < guaranteed) {
        if (!any) {
          flo = fhi = t;
          any = true;
        } else {
          flo = std::min(flo, t);
          fhi = std::max(fhi, t);
        }
      }
    }
    require(any, errc::degenerate_cover, "kerneled set has no guaranteed members");
    Interval narrow;
    narrow.lo = flo;
    narrow.hi = fhi;
    narrow.closed_lo = narrow.closed_hi = true;
    narrow.center = flo + (fhi - flo) / 2.0;
    narrow.radius = (fhi - flo) / 2.0;
    fine.intervals.push_back(narrow);
  }

  GomicReport report = validate_gomic(coarse, lens.lo(), lens.hi());
  if (!report.valid) {
    fail(errc::nonregular_cover,
         "maximally-coarse cover is not gomic: " + report.violations.front());
  }
  return {std::move(coarse), std::move(fine)};
}

}  // namespace dbm
