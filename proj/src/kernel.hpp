#pragma once

#include <string>
#include <utility>
#include <vector>

#include "cover.hpp"
#include "geometry.hpp"

namespace dbm {

enum class KernelShape { square, gaussian };

KernelShape kernel_shape_from_name(const std::string& name);
const char* kernel_shape_name(KernelShape shape);

struct KernelSpec {
  KernelShape shape = KernelShape::square;
  double epsilon = 0.1;  // membership threshold, in (0, 1)
};

// Soft membership of points in one cover element: every member carries its
// kernel weight in (epsilon, 1].
struct KerneledSet {
  struct Member {
    int index = 0;
    double weight = 1.0;
  };

  int interval_index = 0;
  double center = 0.0;       // t0
  double base_radius = 0.0;  // r, before width multipliers
  std::vector<Member> members;

  bool contains(int point_index) const;
};

// Kernel value at distance |lens_value - t0| for base radius r scaled by the
// width multiplier c. The gaussian form equals epsilon exactly at |dt| = c*r,
// so thresholded membership matches a square kernel of radius c*r.
double eval_kernel(const KernelSpec& spec, double lens_value, double t0, double r, double c);

KerneledSet build_kerneled_set(const LensMap& lens, const Interval& interval,
                               const KernelSpec& spec, const std::vector<double>& multipliers,
                               int interval_index = 0);

std::vector<KerneledSet> build_kerneled_cover(const LensMap& lens, const GomicCover& cover,
                                              const KernelSpec& spec,
                                              const std::vector<double>& multipliers);

// Checks K(x, 0) > epsilon for every sample (lens_value, c) with
// |lens_value| < r.
bool check_sufficient_width(const KernelSpec& spec, double r,
                            const std::vector<std::pair<double, double>>& samples);

}  // namespace dbm
