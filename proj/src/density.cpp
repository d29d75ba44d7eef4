#include "density.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>

namespace dbm {

std::vector<double> raw_inverse_density(const LensMap& lens, const NeighborGraph& nbrs) {
  require(nbrs.neighbors.size() == lens.size(), errc::invalid_parameter,
          "neighbour graph must match the lens");
  std::vector<double> raw(lens.size(), 0.0);
  for (std::size_t i = 0; i < lens.size(); ++i) {
    const auto& list = nbrs.neighbors[i];
    require(!list.empty(), errc::invalid_parameter, "neighbour lists must be non-empty");
    double lo = lens[static_cast<std::size_t>(list.front())];
    double hi = lo;
    for (int j : list) {
      double t = lens[static_cast<std::size_t>(j)];
      lo = std::min(lo, t);
      hi = std::max(hi, t);
    }
    raw[i] = hi - lo;
  }
  return raw;
}

namespace {

// Raised-cosine taper on [0, 1).
inline double cosine_bump(double u) {
  if (u >= 1.0) return 0.0;
  return 0.5 * (1.0 + std::cos(std::numbers::pi * u));
}

}  // namespace

std::vector<double> smooth_density(const std::vector<double>& raw, const PointCloud& cloud) {
  require(raw.size() == cloud.size(), errc::invalid_parameter,
          "raw density must match the point cloud");
  std::size_t n = cloud.size();
  std::size_t dim = cloud.dim();

  std::vector<double> width(dim, 0.0);
  for (std::size_t d = 0; d < dim; ++d) {
    double lo = cloud.coord(0, d), hi = lo;
    for (std::size_t i = 1; i < n; ++i) {
      double v = cloud.coord(i, d);
      lo = std::min(lo, v);
      hi = std::max(hi, v);
    }
    width[d] = (hi - lo) / 10.0;
  }

  auto window = [&](std::size_t i, std::size_t j) {
    double w = 1.0;
    for (std::size_t d = 0; d < dim; ++d) {
      double diff = std::abs(cloud.coord(i, d) - cloud.coord(j, d));
      if (width[d] == 0.0) {
        if (diff != 0.0) return 0.0;
        continue;  // degenerate dimension: coincident coordinates contribute 1
      }
      w *= cosine_bump(diff / width[d]);
      if (w == 0.0) return 0.0;
    }
    return w;
  };

  std::vector<double> smoothed(n, 0.0);
  parallel_for(n, [&](std::size_t i) {
    double num = 0.0, den = 0.0;
    for (std::size_t j = 0; j < n; ++j) {
      double w = window(i, j);
      num += raw[j] * w;
      den += w;
    }
    // The self term w(i,i) = 1 keeps the denominator positive.
    smoothed[i] = num / den;
  });
  return smoothed;
}

DensityProfile make_density_profile(const PointCloud& cloud, const LensMap& lens,
                                    const NeighborGraph& nbrs) {
  DensityProfile profile;
  profile.raw = raw_inverse_density(lens, nbrs);
  profile.smoothed = smooth_density(profile.raw, cloud);
  double n = static_cast<double>(profile.smoothed.size());
  double mean = 0.0;
  for (double b : profile.smoothed) mean += b;
  mean /= n;
  double var = 0.0;
  for (double b : profile.smoothed) var += (b - mean) * (b - mean);
  profile.mean_mu = mean;
  profile.std_sigma = std::sqrt(var / n);
  return profile;
}

double width_multiplier(double beta, const DensityProfile& profile, const WidthScaler& scaler) {
  require(scaler.c_max >= 1.0, errc::invalid_parameter, "c_max must be >= 1");
  require(scaler.sensitivity >= 0.0, errc::invalid_parameter, "sensitivity must be >= 0");
  if (scaler.sensitivity == 0.0 || profile.std_sigma == 0.0) return 1.0;
  double z = (beta - profile.mean_mu) / profile.std_sigma;
  double sigmoid = 1.0 / (1.0 + std::exp(-z));
  double base = 1.0 + (scaler.c_max - 1.0) * sigmoid;
  return std::pow(base, scaler.sensitivity);
}

std::vector<double> width_multipliers(const DensityProfile& profile, const WidthScaler& scaler) {
  std::vector<double> result(profile.smoothed.size(), 1.0);
  for (std::size_t i = 0; i < result.size(); ++i)
    result[i] = width_multiplier(profile.smoothed[i], profile, scaler);
  return result;
}

}  // namespace dbm
