#include "synthgen.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>

#include "union_find.hpp"

namespace dbm {

double SplitMix64::normal() {
  if (have_spare_) {
    have_spare_ = false;
    return spare_;
  }
  double u = 1.0 - uniform();  // (0, 1]
  double v = uniform();
  double mag = std::sqrt(-2.0 * std::log(u));
  double ang = 2.0 * std::numbers::pi * v;
  spare_ = mag * std::sin(ang);
  have_spare_ = true;
  return mag * std::cos(ang);
}

namespace {

// Independent stream for component `index` of dataset `seed`.
SplitMix64 component_stream(std::uint64_t seed, std::uint64_t index) {
  SplitMix64 base(seed);
  std::uint64_t derived = 0;
  for (std::uint64_t i = 0; i <= index; ++i) derived = base.next();
  return SplitMix64(derived);
}

// Largest nearest-neighbour distance inside a component; its Rips graph is
// connected at any radius above roughly twice this for curve-like samples.
double max_nn_gap(const PointCloud& cloud, const std::vector<int>& indices) {
  PointCloud sub = cloud.subset(indices);
  KdTree tree(sub);
  double worst = 0.0;
  for (std::size_t i = 0; i < sub.size(); ++i) {
    auto nn = tree.nearest(sub.point(i), 1, static_cast<int>(i));
    worst = std::max(worst, distance(sub.point(i), sub.point(nn.front())));
  }
  return worst;
}

bool connected_at(const PointCloud& cloud, const std::vector<int>& indices, double radius) {
  PointCloud sub = cloud.subset(indices);
  UnionFind uf(sub.size());
  double r2 = radius * radius;
  for (std::size_t i = 0; i < sub.size(); ++i) {
    for (std::size_t j = i + 1; j < sub.size(); ++j) {
      if (squared_distance(sub.point(i), sub.point(j)) <= r2) {
        uf.merge(static_cast<int>(i), static_cast<int>(j));
      }
    }
  }
  return uf.count() == 1;
}

}  // namespace

Dataset gen_three_component(const ThreeComponentSpec& spec) {
  for (std::size_t s : spec.sizes)
    require(s > 0, errc::invalid_parameter, "component sizes must be positive");
  require(spec.spread > 0.0, errc::invalid_parameter, "spread must be positive");
  require(spec.lens_lo < spec.lens_hi, errc::invalid_parameter,
          "lens range must be non-degenerate");

  std::vector<double> coords;
  std::vector<double> lens;
  for (std::size_t c = 0; c < spec.sizes.size(); ++c) {
    SplitMix64 rng = component_stream(spec.seed, c);
    double cx = static_cast<double>(c) * spec.center_gap;
    for (std::size_t i = 0; i < spec.sizes[c]; ++i) {
      double x = cx + spec.spread * rng.normal();
      double y = spec.spread * rng.normal();
      double t = rng.uniform(spec.lens_lo, spec.lens_hi);
      coords.insert(coords.end(), {x, y, t});
      lens.push_back(t);
    }
  }
  PointCloud cloud(std::move(coords), 3);
  LensMap lens_map(std::move(lens));
  return {std::move(cloud), std::move(lens_map), 0.0};
}

namespace {

Dataset gen_genus1_attempt(const Genus1Spec& spec, std::uint64_t salt) {
  std::vector<double> coords;
  std::vector<double> lens;
  std::vector<int> loop_idx, tail_idx;

  SplitMix64 loop_rng = component_stream(spec.seed + salt, 0);
  double two_pi = 2.0 * std::numbers::pi;
  double spacing = two_pi / static_cast<double>(spec.loop_points);
  for (std::size_t i = 0; i < spec.loop_points; ++i) {
    double angle = (static_cast<double>(i) +
                    spec.angle_jitter * (loop_rng.uniform() - 0.5)) * spacing;
    double radius = spec.loop_radius * (1.0 + spec.radial_noise * loop_rng.normal());
    double x = radius * std::cos(angle);
    double y = radius * std::sin(angle);
    loop_idx.push_back(static_cast<int>(lens.size()));
    coords.insert(coords.end(), {x, y});
    lens.push_back(x);
  }

  SplitMix64 tail_rng = component_stream(spec.seed + salt, 1);
  double step = (spec.tail_x1 - spec.tail_x0) / static_cast<double>(spec.tail_points);
  for (std::size_t i = 0; i < spec.tail_points; ++i) {
    double x = spec.tail_x0 + (static_cast<double>(i) + 0.5 +
                               spec.tail_jitter * (tail_rng.uniform() - 0.5)) * step;
    double y = spec.tail_y_sigma * tail_rng.normal();
    tail_idx.push_back(static_cast<int>(lens.size()));
    coords.insert(coords.end(), {x, y});
    lens.push_back(x);
  }

  PointCloud cloud(std::move(coords), 2);
  LensMap lens_map(std::move(lens));

  double gap = std::max(max_nn_gap(cloud, loop_idx), max_nn_gap(cloud, tail_idx));
  double delta = 2.2 * gap;
  bool ok = connected_at(cloud, loop_idx, delta) && connected_at(cloud, tail_idx, delta);

  // Component separation must dominate delta or the Rips graph fuses them.
  double sep2 = std::numeric_limits<double>::infinity();
  for (int a : loop_idx) {
    for (int b : tail_idx) {
      sep2 = std::min(sep2, squared_distance(cloud.point(a), cloud.point(b)));
    }
  }
  ok = ok && std::sqrt(sep2) > 3.0 * delta;

  if (!ok) {
    fail(errc::internal, "genus-1 attempt failed connectivity");
  }
  return {std::move(cloud), std::move(lens_map), delta};
}

}  // namespace

Dataset gen_genus1(const Genus1Spec& spec) {
  require(spec.loop_points >= 8 && spec.tail_points >= 2, errc::invalid_parameter,
          "genus-1 generator needs a non-trivial loop and tail");
  require(spec.tail_x0 < spec.tail_x1, errc::invalid_parameter,
          "tail range must be non-degenerate");

  constexpr std::uint64_t kMaxAttempts = 8;
  for (std::uint64_t attempt = 0; attempt < kMaxAttempts; ++attempt) {
    try {
      return gen_genus1_attempt(spec, attempt * 0x10001ull);
    } catch (const error& e) {
      if (e.code() != errc::internal || attempt + 1 == kMaxAttempts) throw;
    }
  }
  fail(errc::internal, "genus-1 generation failed repeatedly");
}

Dataset gen_circle(const CircleSpec& spec) {
  require(spec.points >= 8, errc::invalid_parameter, "circle needs at least 8 points");
  std::vector<double> coords;
  std::vector<double> lens;
  SplitMix64 rng = component_stream(spec.seed, 0);
  double two_pi = 2.0 * std::numbers::pi;
  double spacing = two_pi / static_cast<double>(spec.points);
  for (std::size_t i = 0; i < spec.points; ++i) {
    double angle = (static_cast<double>(i) +
                    spec.angle_jitter * (rng.uniform() - 0.5)) * spacing;
    double radius = spec.radius * (1.0 + spec.radial_noise * rng.normal());
    double x = radius * std::cos(angle);
    double y = radius * std::sin(angle);
    coords.insert(coords.end(), {x, y});
    lens.push_back(y);
  }
  PointCloud cloud(std::move(coords), 2);
  LensMap lens_map(std::move(lens));
  std::vector<int> all(spec.points);
  std::iota(all.begin(), all.end(), 0);
  double delta = 2.2 * max_nn_gap(cloud, all);
  return {std::move(cloud), std::move(lens_map), delta};
}

}  // namespace dbm
