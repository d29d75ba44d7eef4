#pragma once

#include <vector>

#include "geometry.hpp"

namespace dbm {

// Per-point inverse lens-space density: raw neighbour spread and its smoothed
// version, plus the moments used to normalize the width multiplier.
struct DensityProfile {
  std::vector<double> raw;
  std::vector<double> smoothed;
  double mean_mu = 0.0;
  double std_sigma = 0.0;
};

// Controls how strongly local sparsity widens cover elements.
struct WidthScaler {
  double c_max = 3.0;       // upper bound of the base multiplier, >= 1
  double sensitivity = 1.0; // exponent s >= 0; s = 0 disables widening
};

// Spread of lens values over each point's neighbour list.
std::vector<double> raw_inverse_density(const LensMap& lens, const NeighborGraph& nbrs);

// Normalized convolution with a separable raised-cosine window whose
// per-dimension width is one tenth of that dimension's range.
std::vector<double> smooth_density(const std::vector<double>& raw, const PointCloud& cloud);

DensityProfile make_density_profile(const PointCloud& cloud, const LensMap& lens,
                                    const NeighborGraph& nbrs);

// Monotone map from inverse density to a kernel width multiplier in
// [1, c_max^s]; returns 1 whenever sigma is zero or sensitivity is zero.
double width_multiplier(double beta, const DensityProfile& profile, const WidthScaler& scaler);

std::vector<double> width_multipliers(const DensityProfile& profile, const WidthScaler& scaler);

}  // namespace dbm
