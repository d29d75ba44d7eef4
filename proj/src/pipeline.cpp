#include "pipeline.hpp"

#include <algorithm>
#include <chrono>
#include <cmath>
#include <sstream>

#include <json.hpp>

#include "export.hpp"

namespace dbm {

CoverKind cover_kind_from_name(const std::string& name) {
  if (name == "morse") return CoverKind::morse;
  if (name == "data") return CoverKind::data;
  fail(errc::invalid_parameter, "unknown cover kind '" + name + "' (morse|data)");
}

const char* cover_kind_name(CoverKind kind) {
  return kind == CoverKind::morse ? "morse" : "data";
}

RunResult run_pipeline(const PointCloud& cloud, const LensMap& lens, const RunConfig& config) {
  require(lens.size() == cloud.size(), errc::invalid_parameter,
          "lens must match the point cloud");

  RunResult result;
  result.config = config;
  result.cover = config.cover_kind == CoverKind::morse
                     ? morse_spaced_cover(lens.lo(), lens.hi(), config.n_intervals,
                                          config.overlap)
                     : data_spaced_cover(lens, config.n_intervals, config.overlap);

  const DensityProfile* profile_ptr = nullptr;
  if (config.mapper.scaler.sensitivity > 0.0) {
    result.profile =
        make_density_profile(cloud, lens, knn(cloud, config.mapper.knn_k));
    profile_ptr = &*result.profile;
  }

  result.multinerve = build_mapper(cloud, lens, result.cover, config.mapper, profile_ptr,
                                   &result.sets, &result.multipliers);
  result.nerve = collapse_multigraph(result.multinerve);
  result.resolution = kerneled_resolution(result.sets, lens);
  return result;
}

namespace {

nlohmann::ordered_json config_json(const RunConfig& config) {
  nlohmann::ordered_json j;
  j["cover"] = cover_kind_name(config.cover_kind);
  j["n_checkpoints"] = config.n_intervals;
  j["overlap"] = config.overlap;
  j["kernel"] = kernel_shape_name(config.mapper.kernel.shape);
  j["epsilon"] = config.mapper.kernel.epsilon;
  j["k"] = config.mapper.knn_k;
  j["c_max"] = config.mapper.scaler.c_max;
  j["rate_sensitivity"] = config.mapper.scaler.sensitivity;
  j["clusterer"] = clusterer_name(config.mapper.clusterer.kind);
  if (config.mapper.clusterer.kind == ClustererKind::single_linkage) {
    j["delta"] = config.mapper.clusterer.delta;
  } else {
    j["dbscan_eps"] = config.mapper.clusterer.eps;
    j["dbscan_min_weight"] = config.mapper.clusterer.min_weight;
  }
  j["use_kernel_weights"] = config.mapper.use_kernel_weights;
  j["weight_mode"] = weight_mode_name(config.mapper.weight_mode);
  return j;
}

nlohmann::ordered_json cell_json(const SweepCell& cell) {
  nlohmann::ordered_json j;
  j["n"] = cell.n_intervals;
  j["g"] = cell.overlap;
  j["vertices"] = cell.vertices;
  j["edges"] = cell.edges;
  j["betti0"] = cell.betti0;
  j["betti1"] = cell.betti1;
  j["correct"] = cell.correct;
  j["runtime_ms"] = cell.runtime_ms;
  return j;
}

}  // namespace

std::string run_manifest(const RunResult& result) {
  nlohmann::ordered_json j;
  j["parameters"] = config_json(result.config);
  nlohmann::ordered_json derived;
  if (result.profile.has_value()) {
    derived["density_mu"] = result.profile->mean_mu;
    derived["density_sigma"] = result.profile->std_sigma;
  }
  derived["resolution"] = result.resolution;
  derived["intervals"] = nlohmann::ordered_json::array();
  for (const Interval& iv : result.cover.intervals) {
    derived["intervals"].push_back({iv.lo, iv.hi});
  }
  j["derived"] = derived;

  auto [b0, b1] = betti_numbers(result.nerve);
  nlohmann::ordered_json graph;
  graph["vertices"] = result.nerve.vertices.size();
  graph["edges"] = result.nerve.edges.size();
  graph["multinerve_edges"] = result.multinerve.edges.size();
  graph["betti0"] = b0;
  graph["betti1"] = b1;
  j["graph"] = graph;
  return j.dump(2) + "\n";
}

VerifyReport verify_convergence(const PointCloud& cloud, const LensMap& lens,
                                const PointCloud& reference, const LensMap& reference_lens,
                                const RunConfig& config, double delta) {
  require(delta > 0.0, errc::invalid_parameter, "delta must be positive");

  VerifyReport report;
  report.delta = delta;

  RunResult run = run_pipeline(cloud, lens, config);
  report.resolution = run.resolution;

  report.crossing_edges =
      find_intersection_crossing_edges(cloud, lens, delta, run.cover).size();
  report.crossing_ok = report.crossing_edges == 0;

  report.hausdorff = hausdorff_estimate(cloud, reference);
  report.hausdorff_ok = 4.0 * report.hausdorff <= delta;

  report.sample_variation = modulus_of_continuity(cloud, lens, delta);
  report.variation_ok = report.sample_variation <= config.overlap * report.resolution;

  report.hypotheses_ok = report.crossing_ok && report.hausdorff_ok && report.variation_ok;

  ReebOracle oracle = reeb_oracle(cloud, lens, delta);
  report.oracle_resolution = oracle.resolution;

  report.omega = modulus_of_continuity(reference, reference_lens, delta);

  PersistenceDiagram reference_diagram = extended_persistence(oracle.graph);
  PersistenceDiagram graph_diagram = extended_persistence(run.nerve);

  report.distance = bottleneck(reference_diagram, graph_diagram);
  report.bound = report.resolution + 2.0 * report.omega;
  report.bound_ok = report.distance <= report.bound + 1e-9;

  // Corresponding critical features sit inside slices of both graphs, so
  // their midpoint values drift by at most half of each resolution.
  report.gap_tolerance = (report.resolution + report.oracle_resolution) / 2.0 + 1e-9;
  report.gap_exact = diagram_gap(reference_diagram, graph_diagram);
  report.gap = diagram_gap(reference_diagram, graph_diagram, report.gap_tolerance);
  report.gap_ok = report.gap <= report.resolution + 1e-9;

  report.passed = report.hypotheses_ok && report.bound_ok && report.gap_ok;
  return report;
}

std::string verify_report_json(const VerifyReport& report) {
  nlohmann::ordered_json j;
  nlohmann::ordered_json hyp;
  hyp["delta"] = report.delta;
  hyp["intersection_crossing_edges"] = report.crossing_edges;
  hyp["crossing_ok"] = report.crossing_ok;
  hyp["hausdorff"] = report.hausdorff;
  hyp["hausdorff_ok"] = report.hausdorff_ok;
  hyp["sample_variation"] = report.sample_variation;
  hyp["variation_ok"] = report.variation_ok;
  hyp["ok"] = report.hypotheses_ok;
  j["hypotheses"] = hyp;

  nlohmann::ordered_json bound;
  bound["resolution"] = report.resolution;
  bound["omega_delta"] = report.omega;
  bound["bound"] = report.bound;
  bound["bottleneck"] = report.distance;
  bound["ok"] = report.bound_ok;
  j["bound"] = bound;

  nlohmann::ordered_json gap;
  gap["gap"] = report.gap;
  gap["gap_exact"] = report.gap_exact;
  gap["tolerance"] = report.gap_tolerance;
  gap["oracle_resolution"] = report.oracle_resolution;
  gap["ok"] = report.gap_ok;
  j["containment"] = gap;

  j["passed"] = report.passed;
  return j.dump(2) + "\n";
}

SweepReport sweep_grid(const PointCloud& cloud, const LensMap& lens, const RunConfig& config,
                       const std::vector<int>& n_values, const std::vector<double>& g_values,
                       std::size_t expected_betti0, std::size_t expected_betti1) {
  require(!n_values.empty() && !g_values.empty(), errc::invalid_parameter,
          "sweep needs non-empty N and g ranges");

  SweepReport report;
  report.n_values = n_values;
  report.g_values = g_values;
  report.expected_betti0 = expected_betti0;
  report.expected_betti1 = expected_betti1;

  std::size_t cells = n_values.size() * g_values.size();
  report.standard.resize(cells);
  report.density.resize(cells);
  report.standard_graphs.resize(cells);
  report.density_graphs.resize(cells);

  // The density profile depends only on (cloud, lens, k); share it.
  std::optional<DensityProfile> profile;
  if (config.mapper.scaler.sensitivity > 0.0) {
    profile = make_density_profile(cloud, lens, knn(cloud, config.mapper.knn_k));
  }

  parallel_for(2 * cells, [&](std::size_t task) {
    bool density_mode = task >= cells;
    std::size_t cell = task % cells;
    std::size_t ni = cell / g_values.size();
    std::size_t gi = cell % g_values.size();

    SweepCell out;
    out.n_intervals = n_values[ni];
    out.overlap = g_values[gi];

    RunConfig cell_config = config;
    cell_config.n_intervals = n_values[ni];
    cell_config.overlap = g_values[gi];
    if (!density_mode) cell_config.mapper.scaler.sensitivity = 0.0;

    auto start = std::chrono::steady_clock::now();
    MapperGraph collapsed;
    try {
      const DensityProfile* p =
          (density_mode && profile.has_value()) ? &*profile : nullptr;
      GomicCover cover = cell_config.cover_kind == CoverKind::morse
                             ? morse_spaced_cover(lens.lo(), lens.hi(),
                                                  cell_config.n_intervals,
                                                  cell_config.overlap)
                             : data_spaced_cover(lens, cell_config.n_intervals,
                                                 cell_config.overlap);
      MapperGraph multigraph = build_mapper(cloud, lens, cover, cell_config.mapper, p);
      collapsed = collapse_multigraph(multigraph);
      auto [b0, b1] = betti_numbers(collapsed);
      out.vertices = collapsed.vertices.size();
      out.edges = collapsed.edges.size();
      out.betti0 = b0;
      out.betti1 = b1;
      out.correct = b0 == expected_betti0 && b1 == expected_betti1;
    } catch (const error&) {
      out.correct = false;  // recorded, sweep continues
    }
    out.runtime_ms = std::chrono::duration<double, std::milli>(
                         std::chrono::steady_clock::now() - start)
                         .count();

    if (density_mode) {
      report.density[cell] = out;
      report.density_graphs[cell] = std::move(collapsed);
    } else {
      report.standard[cell] = out;
      report.standard_graphs[cell] = std::move(collapsed);
    }
  });

  for (const SweepCell& c : report.standard) report.standard_correct += c.correct ? 1 : 0;
  for (const SweepCell& c : report.density) report.density_correct += c.correct ? 1 : 0;
  return report;
}

std::string sweep_report_json(const SweepReport& report) {
  nlohmann::ordered_json j;
  j["n_values"] = report.n_values;
  j["g_values"] = report.g_values;
  j["expected"] = {{"betti0", report.expected_betti0}, {"betti1", report.expected_betti1}};
  j["standard_correct"] = report.standard_correct;
  j["density_correct"] = report.density_correct;
  j["standard"] = nlohmann::ordered_json::array();
  for (const SweepCell& c : report.standard) j["standard"].push_back(cell_json(c));
  j["density"] = nlohmann::ordered_json::array();
  for (const SweepCell& c : report.density) j["density"].push_back(cell_json(c));
  return j.dump(2) + "\n";
}

std::string sweep_report_svg(const SweepReport& report, const PointCloud& cloud) {
  double cell_w = 180, cell_h = 140, label = 28;
  std::size_t cols = report.g_values.size();
  std::size_t rows = report.n_values.size();
  double width = label + cols * cell_w;
  double height = 2 * (label + rows * cell_h) + label;

  std::ostringstream out;
  out << "<svg xmlns=\"http://www.w3.org/2000/svg\" width=\"" << width << "\" height=\""
      << height << "\" viewBox=\"0 0 " << width << " " << height << "\">\n"
      << "<style>text{font-family:sans-serif;font-size:11px;}</style>\n";

  auto render_mode = [&](const std::vector<SweepCell>& cells,
                         const std::vector<MapperGraph>& graphs, double oy,
                         const std::string& title) {
    out << "<text x=\"" << label << "\" y=\"" << oy - 6 << "\">" << title << "</text>\n";
    for (std::size_t ni = 0; ni < rows; ++ni) {
      out << "<text x=\"2\" y=\"" << oy + ni * cell_h + cell_h / 2 << "\">N="
          << report.n_values[ni] << "</text>\n";
      for (std::size_t gi = 0; gi < cols; ++gi) {
        std::size_t idx = ni * cols + gi;
        double px = label + gi * cell_w;
        double py = oy + ni * cell_h;
        const SweepCell& c = cells[idx];
        out << "<rect x=\"" << px << "\" y=\"" << py << "\" width=\"" << cell_w
            << "\" height=\"" << cell_h << "\" fill=\"none\" stroke=\""
            << (c.correct ? "#1a8f1a" : "#cccccc") << "\" stroke-width=\""
            << (c.correct ? 3 : 1) << "\"/>\n";
        const MapperGraph& g = graphs[idx];
        if (!g.vertices.empty()) {
          std::vector<LayoutVertex> layout = layout_graph(g, cloud);
          // Inline miniature rendering.
          double lo_x = layout.front().x, hi_x = lo_x;
          double lo_y = layout.front().y, hi_y = lo_y;
          for (const auto& v : layout) {
            lo_x = std::min(lo_x, v.x);
            hi_x = std::max(hi_x, v.x);
            lo_y = std::min(lo_y, v.y);
            hi_y = std::max(hi_y, v.y);
          }
          if (hi_x == lo_x) hi_x = lo_x + 1;
          if (hi_y == lo_y) hi_y = lo_y + 1;
          auto sx = [&](double x) {
            return px + 10 + (x - lo_x) / (hi_x - lo_x) * (cell_w - 20);
          };
          auto sy = [&](double y) {
            return py + cell_h - 14 - (y - lo_y) / (hi_y - lo_y) * (cell_h - 28);
          };
          for (const MapperEdge& e : g.edges) {
            out << "<line x1=\"" << sx(layout[e.a].x) << "\" y1=\"" << sy(layout[e.a].y)
                << "\" x2=\"" << sx(layout[e.b].x) << "\" y2=\"" << sy(layout[e.b].y)
                << "\" stroke=\"#777\" stroke-width=\"0.7\"/>\n";
          }
          for (const auto& v : layout) {
            out << "<circle cx=\"" << sx(v.x) << "\" cy=\"" << sy(v.y)
                << "\" r=\"2\" fill=\"#2a6fb0\"/>\n";
          }
        }
        out << "<text x=\"" << px + 4 << "\" y=\"" << py + 12 << "\">g="
            << report.g_values[gi] << " b0=" << c.betti0 << " b1=" << c.betti1
            << "</text>\n";
      }
    }
  };

  render_mode(report.standard, report.standard_graphs, label + 14, "standard");
  render_mode(report.density, report.density_graphs, label + rows * cell_h + 2 * label,
              "density-based");
  out << "</svg>\n";
  return out.str();
}

}  // namespace dbm
