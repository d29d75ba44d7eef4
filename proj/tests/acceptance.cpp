// Acceptance suite: one line per criterion, [PASS]/[FAIL], non-zero exit on
// any failure. Each criterion pins its tolerances in code.
#include <chrono>
#include <cstdio>
#include <functional>
#include <map>
#include <string>
#include <vector>

#include "csv.hpp"
#include "pipeline.hpp"
#include "support/datasets.hpp"
#include "support/oracles.hpp"
#include "synthgen.hpp"
#include "union_find.hpp"

using namespace dbm;

namespace {

struct Outcome {
  bool passed = true;
  std::string detail;

  void expect(bool ok, const std::string& what) {
    if (!ok) {
      passed = false;
      if (!detail.empty()) detail += "; ";
      detail += what;
    }
  }
  void note(const std::string& text) {
    if (!detail.empty()) detail += "; ";
    detail += text;
  }
};

double seconds_since(std::chrono::steady_clock::time_point start) {
  return std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
}

// ---------------------------------------------------------------------------
// 1. Square kernel at zero sensitivity reproduces plain Mapper exactly.
Outcome criterion_standard_reduction() {
  Outcome out;
  auto start = std::chrono::steady_clock::now();

  for (std::uint64_t seed = 1; seed <= 5; ++seed) {
    PointCloud cloud = testdata::uniform_cloud(seed, 500, 3);
    std::vector<double> lens_values(cloud.size());
    for (std::size_t i = 0; i < cloud.size(); ++i) lens_values[i] = cloud.coord(i, 2);
    LensMap lens(lens_values);

    GomicCover cover = morse_spaced_cover(lens.lo(), lens.hi(), 7, 0.5);
    double delta = 0.2;

    MapperOptions options;
    options.kernel = {KernelShape::square, 0.1};
    options.scaler = {3.0, 0.0};
    options.clusterer.kind = ClustererKind::single_linkage;
    options.clusterer.delta = delta;
    options.weight_mode = WeightMode::count;
    MapperGraph nerve =
        collapse_multigraph(build_mapper(cloud, lens, cover, options));

    std::vector<std::pair<double, double>> intervals;
    std::vector<std::pair<bool, bool>> closed;
    for (const Interval& iv : cover.intervals) {
      intervals.emplace_back(iv.lo, iv.hi);
      closed.emplace_back(iv.closed_lo, iv.closed_hi);
    }
    oracle::PlainGraph plain =
        oracle::plain_mapper(cloud, lens.values(), intervals, closed, delta);

    using Key = std::pair<int, std::vector<int>>;
    std::vector<Key> got, expected;
    for (const auto& v : nerve.vertices) got.emplace_back(v.interval_index, v.members);
    for (const auto& v : plain.vertices) expected.emplace_back(v.interval, v.members);
    std::sort(got.begin(), got.end());
    std::sort(expected.begin(), expected.end());
    out.expect(got == expected, "vertex mismatch at seed " + std::to_string(seed));

    std::map<std::pair<Key, Key>, double> got_edges, expected_edges;
    for (const auto& e : nerve.edges) {
      Key a{nerve.vertices[e.a].interval_index, nerve.vertices[e.a].members};
      Key b{nerve.vertices[e.b].interval_index, nerve.vertices[e.b].members};
      got_edges[{a, b}] += e.weight;
    }
    for (const auto& [key, w] : plain.edges) {
      Key a{plain.vertices[key.first].interval, plain.vertices[key.first].members};
      Key b{plain.vertices[key.second].interval, plain.vertices[key.second].members};
      expected_edges[{a, b}] += w;
    }
    out.expect(got_edges == expected_edges,
               "edge/weight mismatch at seed " + std::to_string(seed));
  }

  double elapsed = seconds_since(start);
  out.expect(elapsed < 5.0, "exceeded 5 s");
  out.note("5 seeds in " + std::to_string(elapsed) + " s");
  return out;
}

// ---------------------------------------------------------------------------
// 2. Kerneled covers never drop a point for sufficient-width kernels.
Outcome criterion_coverage() {
  Outcome out;

  struct Entry {
    std::string name;
    PointCloud cloud;
    LensMap lens;
  };
  std::vector<Entry> datasets;
  {
    Dataset circle = gen_circle({.seed = 3, .points = 400});
    datasets.push_back({"circle", circle.cloud, circle.lens});
    Dataset g1 = gen_genus1({.seed = 42});
    datasets.push_back({"genus1", g1.cloud, g1.lens});
    ThreeComponentSpec spec3;
    spec3.seed = 42;
    Dataset three = gen_three_component(spec3);
    datasets.push_back({"three-component", three.cloud, three.lens});
    Dataset line = testdata::line_dataset(6, 300, 0.0, 4.0);
    datasets.push_back({"line", line.cloud, line.lens});
    PointCloud uniform = testdata::uniform_cloud(1, 500, 3);
    std::vector<double> lv(uniform.size());
    for (std::size_t i = 0; i < uniform.size(); ++i) lv[i] = uniform.coord(i, 2);
    datasets.push_back({"uniform3d", uniform, LensMap(lv)});
  }

  std::size_t violations = 0, combinations = 0;
  for (const Entry& entry : datasets) {
    DensityProfile profile =
        make_density_profile(entry.cloud, entry.lens, knn(entry.cloud, 10));
    GomicCover cover = morse_spaced_cover(entry.lens.lo(), entry.lens.hi(), 7, 0.5);
    for (KernelShape shape : {KernelShape::square, KernelShape::gaussian}) {
      for (double c_max : {1.0, 2.0, 4.0}) {
        for (double eps : {0.05, 0.1, 0.3}) {
          ++combinations;
          KernelSpec spec{shape, eps};
          std::vector<double> mult = width_multipliers(profile, {c_max, 1.0});
          auto sets = build_kerneled_cover(entry.lens, cover, spec, mult);
          std::vector<char> covered(entry.cloud.size(), 0);
          for (const auto& set : sets) {
            for (const auto& m : set.members) {
              covered[static_cast<std::size_t>(m.index)] = 1;
            }
          }
          for (char c : covered) {
            if (!c) ++violations;
          }
        }
      }
    }
  }
  out.expect(violations == 0, std::to_string(violations) + " uncovered points");
  out.note(std::to_string(combinations) + " dataset/kernel combinations");
  return out;
}

// ---------------------------------------------------------------------------
// 3. The normalized gaussian keeps sufficient width on a dense grid.
Outcome criterion_gaussian_width() {
  Outcome out;
  double r = 1.0;
  KernelSpec spec{KernelShape::gaussian, 0.1};

  std::size_t failures = 0;
  for (int i = 0; i < 100; ++i) {
    double dt = r * static_cast<double>(i) / 100.0;  // [0, r)
    for (int j = 0; j < 100; ++j) {
      double c = 1.0 + 3.0 * static_cast<double>(j) / 99.0;  // [1, 4]
      if (!(eval_kernel(spec, dt, 0.0, r, c) > spec.epsilon)) ++failures;
    }
  }
  out.expect(failures == 0, std::to_string(failures) + " grid points below threshold");

  double boundary = eval_kernel(spec, r, 0.0, r, 1.0);
  out.expect(std::abs(boundary - spec.epsilon) <= 1e-12,
             "boundary value " + std::to_string(boundary));
  return out;
}

// ---------------------------------------------------------------------------
// 4 & 5. Convergence bound and diagram containment on 10 verified settings.
struct VerifySetting {
  std::string dataset;  // "circle" or "genus1"
  int n_intervals;
  double overlap;
  double c_max;
  KernelShape kernel;
};

std::vector<VerifyReport> run_verify_settings(double* elapsed_seconds) {
  auto start = std::chrono::steady_clock::now();

  Dataset circle = gen_circle({.seed = 1, .points = 400});
  Dataset circle_ref = gen_circle({.seed = 100, .points = 4000});
  Genus1Spec g1spec;
  g1spec.seed = 42;
  g1spec.tail_points = 300;
  g1spec.tail_y_sigma = 0.03;
  Dataset genus1 = gen_genus1(g1spec);
  Genus1Spec g1ref_spec = g1spec;
  g1ref_spec.seed = 4242;
  g1ref_spec.loop_points = 10000;
  g1ref_spec.tail_points = 3000;
  Dataset genus1_ref = gen_genus1(g1ref_spec);

  std::vector<VerifySetting> settings = {
      {"circle", 4, 0.5, 2.0, KernelShape::square},
      {"circle", 5, 0.4, 2.0, KernelShape::square},
      {"circle", 5, 0.5, 3.0, KernelShape::gaussian},
      {"circle", 6, 0.4, 1.5, KernelShape::square},
      {"circle", 6, 0.5, 2.0, KernelShape::gaussian},
      {"genus1", 5, 0.5, 2.0, KernelShape::square},
      {"genus1", 6, 0.5, 2.0, KernelShape::square},
      {"genus1", 6, 0.5, 2.5, KernelShape::gaussian},
      {"genus1", 7, 0.5, 2.0, KernelShape::square},
      {"genus1", 8, 0.5, 1.5, KernelShape::square},
  };

  std::vector<VerifyReport> reports;
  for (const VerifySetting& s : settings) {
    const Dataset& sample = s.dataset == "circle" ? circle : genus1;
    const Dataset& reference = s.dataset == "circle" ? circle_ref : genus1_ref;

    double hausdorff = hausdorff_estimate(sample.cloud, reference.cloud);
    double delta = std::max(4.0 * hausdorff * 1.1, sample.suggested_delta);

    RunConfig config;
    config.cover_kind = CoverKind::morse;
    config.n_intervals = s.n_intervals;
    config.overlap = s.overlap;
    config.mapper.kernel = {s.kernel, 0.1};
    config.mapper.scaler = {s.c_max, 1.0};
    config.mapper.clusterer.kind = ClustererKind::single_linkage;
    config.mapper.clusterer.delta = delta;
    config.mapper.knn_k = 15;

    reports.push_back(verify_convergence(sample.cloud, sample.lens, reference.cloud,
                                         reference.lens, config, delta));
  }
  *elapsed_seconds = seconds_since(start);
  return reports;
}

Outcome criterion_convergence_bound(const std::vector<VerifyReport>& reports,
                                    double elapsed) {
  Outcome out;
  for (std::size_t i = 0; i < reports.size(); ++i) {
    const VerifyReport& r = reports[i];
    std::string tag = "setting " + std::to_string(i);
    out.expect(r.hypotheses_ok,
               tag + ": hypotheses (crossing=" + std::to_string(r.crossing_edges) +
                   ", 4dH=" + std::to_string(4.0 * r.hausdorff) +
                   ", delta=" + std::to_string(r.delta) + ")");
    out.expect(r.distance <= r.bound + 1e-9,
               tag + ": d=" + std::to_string(r.distance) + " > bound " +
                   std::to_string(r.bound));
  }
  out.expect(elapsed < 60.0, "exceeded 60 s");
  out.note(std::to_string(reports.size()) + " settings in " + std::to_string(elapsed) +
           " s");
  return out;
}

Outcome criterion_diagram_inclusion(const std::vector<VerifyReport>& reports) {
  Outcome out;
  for (std::size_t i = 0; i < reports.size(); ++i) {
    const VerifyReport& r = reports[i];
    out.expect(r.gap <= r.resolution + 1e-9,
               "setting " + std::to_string(i) + ": gap " + std::to_string(r.gap) +
                   " > r " + std::to_string(r.resolution));
  }
  return out;
}

// ---------------------------------------------------------------------------
// 6. Scaled grid experiment with DBSCAN on the genus-1 dataset.
Outcome criterion_grid_experiment() {
  Outcome out;
  auto start = std::chrono::steady_clock::now();

  Dataset data = gen_genus1({.seed = 42});

  RunConfig config;
  config.cover_kind = CoverKind::morse;
  config.mapper.kernel = {KernelShape::square, 0.1};
  config.mapper.scaler = {3.0, 1.0};
  config.mapper.clusterer.kind = ClustererKind::dbscan;
  config.mapper.clusterer.eps = 0.25;
  config.mapper.clusterer.min_weight = 10.0;
  config.mapper.knn_k = 15;

  SweepReport report = sweep_grid(data.cloud, data.lens, config, {10, 15, 20, 25, 30},
                                  {0.2, 0.35, 0.5, 0.65, 0.8}, 2, 1);

  out.note("standard " + std::to_string(report.standard_correct) + "/25, density " +
           std::to_string(report.density_correct) + "/25");
  std::printf("        correct-cell table (N x g, 1 = correct):\n");
  for (std::size_t ni = 0; ni < report.n_values.size(); ++ni) {
    std::printf("          N=%2d  standard:", report.n_values[ni]);
    for (std::size_t gi = 0; gi < report.g_values.size(); ++gi) {
      std::printf(" %d", report.standard[ni * 5 + gi].correct ? 1 : 0);
    }
    std::printf("   density:");
    for (std::size_t gi = 0; gi < report.g_values.size(); ++gi) {
      std::printf(" %d", report.density[ni * 5 + gi].correct ? 1 : 0);
    }
    std::printf("\n");
  }

  out.expect(report.density_correct >= report.standard_correct,
             "density-based fell below standard");
  out.expect(report.density_correct >= 8, "density-based below the 8/25 floor");
  double elapsed = seconds_since(start);
  out.expect(elapsed < 120.0, "exceeded 120 s");
  out.note("in " + std::to_string(elapsed) + " s");
  return out;
}

// ---------------------------------------------------------------------------
// 7. Kerneled set on the three-component data: strict superset of the
// pullback, extras only from components sparser than the dense one.
Outcome criterion_kerneled_containment() {
  Outcome out;

  ThreeComponentSpec spec3;
  spec3.seed = 42;
  Dataset data = gen_three_component(spec3);
  DensityProfile profile = make_density_profile(data.cloud, data.lens, knn(data.cloud, 15));

  WidthScaler scaler{1.06, 1.0};
  std::vector<double> mult = width_multipliers(profile, scaler);

  Interval interval;
  interval.lo = 3.65;
  interval.hi = 3.87;
  interval.center = 3.76;
  interval.radius = 0.11;

  KernelSpec spec{KernelShape::gaussian, 0.1};
  KerneledSet set = build_kerneled_set(data.lens, interval, spec, mult);

  auto component_of = [&](int index) {
    if (index < 1000) return 0;
    if (index < 1400) return 1;
    return 2;
  };
  std::array<double, 3> mean_beta{0.0, 0.0, 0.0};
  std::array<std::size_t, 3> counts{1000, 400, 150};
  for (std::size_t i = 0; i < data.cloud.size(); ++i) {
    mean_beta[static_cast<std::size_t>(component_of(static_cast<int>(i)))] +=
        profile.smoothed[i];
  }
  for (std::size_t c = 0; c < 3; ++c) mean_beta[c] /= static_cast<double>(counts[c]);

  std::size_t extras = 0, dense_extras = 0;
  std::size_t pullback_size = 0;
  for (std::size_t i = 0; i < data.cloud.size(); ++i) {
    bool inside = interval.contains(data.lens[i]);
    if (inside) {
      ++pullback_size;
      out.expect(set.contains(static_cast<int>(i)), "pullback point missing");
    } else if (set.contains(static_cast<int>(i))) {
      ++extras;
      int c = component_of(static_cast<int>(i));
      if (!(mean_beta[static_cast<std::size_t>(c)] > mean_beta[0])) ++dense_extras;
    }
  }
  out.expect(extras > 0, "kerneled set equals the pullback; no widening happened");
  out.expect(dense_extras == 0,
             std::to_string(dense_extras) + " extras from the dense component");
  out.note(std::to_string(pullback_size) + " pullback members, " + std::to_string(extras) +
           " extras");
  return out;
}

// ---------------------------------------------------------------------------
// 8. Persistence engine self-consistency.
Outcome criterion_persistence_engine() {
  Outcome out;

  SplitMix64 rng(20240801);
  for (int trial = 0; trial < 50; ++trial) {
    FilteredGraph g;
    g.vertex_count = 2 + rng.next() % 19;
    for (std::size_t i = 0; i < g.vertex_count; ++i) {
      g.values.push_back(rng.uniform(0.0, 4.0));
    }
    for (std::size_t a = 0; a < g.vertex_count; ++a) {
      for (std::size_t b = a + 1; b < g.vertex_count; ++b) {
        if (rng.uniform() < 0.15) {
          g.edges.emplace_back(static_cast<int>(a), static_cast<int>(b));
        }
      }
    }
    PersistenceDiagram d = extended_persistence(g);

    UnionFind uf(g.vertex_count);
    for (const auto& [a, b] : g.edges) uf.merge(a, b);
    std::size_t components = uf.count();
    std::size_t cycles = g.edges.size() + components - g.vertex_count;
    out.expect(d.count(PointKind::Ext0) == components,
               "Ext0 != components at trial " + std::to_string(trial));
    out.expect(d.count(PointKind::Ext1) == cycles,
               "Ext1 != cycle rank at trial " + std::to_string(trial));
  }

  SplitMix64 drng(13);
  for (int trial = 0; trial < 30; ++trial) {
    PersistenceDiagram a, b;
    std::size_t na = drng.next() % 7, nb = drng.next() % 7;
    auto fill = [&](PersistenceDiagram& d, std::size_t n) {
      for (std::size_t i = 0; i < n; ++i) {
        PersistencePoint p;
        p.kind = static_cast<PointKind>(drng.next() % 4);
        double x = drng.uniform(0.0, 10.0), y = drng.uniform(0.0, 10.0);
        bool ascending = p.kind == PointKind::Ord0 || p.kind == PointKind::Ext0;
        p.birth = ascending ? std::min(x, y) : std::max(x, y);
        p.death = ascending ? std::max(x, y) : std::min(x, y);
        d.points.push_back(p);
      }
    };
    fill(a, na);
    fill(b, nb);
    double fast = bottleneck(a, b);
    double slow = oracle::brute_bottleneck(a, b);
    out.expect(std::abs(fast - slow) <= 1e-12,
               "bottleneck mismatch at trial " + std::to_string(trial) + ": " +
                   std::to_string(fast) + " vs " + std::to_string(slow));
  }
  return out;
}

}  // namespace

int main() {
  int failures = 0;
  auto report = [&](int index, const std::string& name, const Outcome& outcome) {
    std::printf("[%s] criterion %d: %s%s%s\n", outcome.passed ? "PASS" : "FAIL", index,
                name.c_str(), outcome.detail.empty() ? "" : " -- ",
                outcome.detail.c_str());
    if (!outcome.passed) ++failures;
  };

  report(1, "standard-Mapper reduction", criterion_standard_reduction());
  report(2, "kerneled cover coverage", criterion_coverage());
  report(3, "gaussian sufficient width", criterion_gaussian_width());

  double verify_elapsed = 0.0;
  std::vector<VerifyReport> reports = run_verify_settings(&verify_elapsed);
  report(4, "convergence bound", criterion_convergence_bound(reports, verify_elapsed));
  report(5, "diagram inclusion", criterion_diagram_inclusion(reports));

  report(6, "genus-1 grid experiment", criterion_grid_experiment());
  report(7, "kerneled containment on variable density", criterion_kerneled_containment());
  report(8, "persistence engine self-consistency", criterion_persistence_engine());

  if (failures > 0) {
    std::printf("%d criterion(s) failed\n", failures);
    return 1;
  }
  std::printf("all acceptance criteria passed\n");
  return 0;
}
