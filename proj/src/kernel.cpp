#include "kernel.hpp"

#include <algorithm>
#include <cmath>

namespace dbm {

KernelShape kernel_shape_from_name(const std::string& name) {
  if (name == "square") return KernelShape::square;
  if (name == "gaussian") return KernelShape::gaussian;
  fail(errc::invalid_parameter, "unknown kernel shape '" + name + "' (square|gaussian)");
}

const char* kernel_shape_name(KernelShape shape) {
  return shape == KernelShape::square ? "square" : "gaussian";
}

bool KerneledSet::contains(int point_index) const {
  auto it = std::lower_bound(members.begin(), members.end(), point_index,
                             [](const Member& m, int v) { return m.index < v; });
  return it != members.end() && it->index == point_index;
}

double eval_kernel(const KernelSpec& spec, double lens_value, double t0, double r, double c) {
  require(r > 0.0, errc::invalid_parameter, "kernel radius must be positive");
  require(c > 0.0, errc::invalid_parameter, "width multiplier must be positive");
  double dt = std::abs(lens_value - t0);
  if (spec.shape == KernelShape::square) {
    return dt < c * r ? 1.0 : 0.0;
  }
  require(spec.epsilon > 0.0 && spec.epsilon < 1.0, errc::invalid_parameter,
          "kernel threshold must lie in (0, 1)");
  double u = dt / (c * r);
  return std::exp(std::log(spec.epsilon) * u * u);
}

KerneledSet build_kerneled_set(const LensMap& lens, const Interval& interval,
                               const KernelSpec& spec, const std::vector<double>& multipliers,
                               int interval_index) {
  require(multipliers.size() == lens.size(), errc::invalid_parameter,
          "multipliers must match the lens");
  require(spec.epsilon > 0.0 && spec.epsilon < 1.0, errc::invalid_parameter,
          "kernel threshold must lie in (0, 1)");
  KerneledSet set;
  set.interval_index = interval_index;
  set.center = interval.center;
  set.base_radius = interval.radius;
  for (std::size_t i = 0; i < lens.size(); ++i) {
    require(multipliers[i] >= 1.0, errc::invalid_parameter,
            "width multipliers must be >= 1");
    double w = eval_kernel(spec, lens[i], interval.center, interval.radius, multipliers[i]);
    if (w > spec.epsilon) set.members.push_back({static_cast<int>(i), w});
  }
  return set;
}

std::vector<KerneledSet> build_kerneled_cover(const LensMap& lens, const GomicCover& cover,
                                              const KernelSpec& spec,
                                              const std::vector<double>& multipliers) {
  std::vector<KerneledSet> sets(cover.size());
  parallel_for(cover.size(), [&](std::size_t i) {
    sets[i] = build_kerneled_set(lens, cover[i], spec, multipliers, static_cast<int>(i));
  });
  return sets;
}

bool check_sufficient_width(const KernelSpec& spec, double r,
                            const std::vector<std::pair<double, double>>& samples) {
  for (const auto& [lens_value, c] : samples) {
    if (std::abs(lens_value) >= r) continue;
    if (!(eval_kernel(spec, lens_value, 0.0, r, c) > spec.epsilon)) return false;
  }
  return true;
}

}  // namespace dbm
