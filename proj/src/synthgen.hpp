#pragma once

#include <array>
#include <cstdint>

#include "geometry.hpp"

namespace dbm {

// Portable deterministic generator (SplitMix64). Components draw from
// independent streams derived from the dataset seed, so outputs are
// bit-identical across runs, platforms, and thread counts.
class SplitMix64 {
public:
  explicit SplitMix64(std::uint64_t seed) : state_(seed) {}

  std::uint64_t next() {
    std::uint64_t z = (state_ += 0x9e3779b97f4a7c15ull);
    z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ull;
    z = (z ^ (z >> 27)) * 0x94d049bb133111ebull;
    return z ^ (z >> 31);
  }

  // Uniform in [0, 1).
  double uniform() { return static_cast<double>(next() >> 11) * 0x1.0p-53; }

  double uniform(double lo, double hi) { return lo + (hi - lo) * uniform(); }

  // Standard normal via Box-Muller.
  double normal();

private:
  std::uint64_t state_;
  bool have_spare_ = false;
  double spare_ = 0.0;
};

struct Dataset {
  PointCloud cloud;
  LensMap lens;
  double suggested_delta = 0.0;  // Rips radius that keeps each component connected
};

// Three well-separated circular-Gaussian clusters in (x, y) with lens values
// drawn uniformly from [lens_lo, lens_hi] as a third coordinate. Distinct
// component sizes produce three distinct lens-space densities.
struct ThreeComponentSpec {
  std::uint64_t seed = 42;
  std::array<std::size_t, 3> sizes{1000, 400, 150};
  double spread = 1.0;       // sigma of each cluster in (x, y)
  double center_gap = 30.0;  // distance between consecutive cluster centers
  double lens_lo = 0.0;
  double lens_hi = 10.0;
};

Dataset gen_three_component(const ThreeComponentSpec& spec);

// Dense loop in the lens plane plus a sparse elongated component further
// along the lens axis; lens = x coordinate. Retries with fresh streams when
// noise breaks a component's connectivity at the suggested radius.
struct Genus1Spec {
  std::uint64_t seed = 42;
  std::size_t loop_points = 1000;
  std::size_t tail_points = 150;
  double loop_radius = 1.0;
  double angle_jitter = 0.35;   // fraction of the mean angular spacing
  double radial_noise = 0.0;    // sigma of radial perturbation
  double tail_x0 = 1.8;
  double tail_x1 = 4.2;
  double tail_y_sigma = 0.1;
  double tail_jitter = 0.35;    // fraction of the mean tail spacing
};

Dataset gen_genus1(const Genus1Spec& spec);

// Points spread nearly evenly along a circle; lens = y (the height). Used as
// a minimal dataset with one essential loop.
struct CircleSpec {
  std::uint64_t seed = 42;
  std::size_t points = 400;
  double radius = 1.0;
  double angle_jitter = 0.35;
  double radial_noise = 0.0;
};

Dataset gen_circle(const CircleSpec& spec);

}  // namespace dbm
