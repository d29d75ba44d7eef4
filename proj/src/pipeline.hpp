#pragma once

#include <optional>
#include <string>
#include <vector>

#include "cover.hpp"
#include "mapper.hpp"
#include "persistence.hpp"

namespace dbm {

enum class CoverKind { morse, data };

CoverKind cover_kind_from_name(const std::string& name);
const char* cover_kind_name(CoverKind kind);

struct RunConfig {
  CoverKind cover_kind = CoverKind::morse;
  int n_intervals = 20;   // checkpoint count N
  double overlap = 0.5;   // g
  MapperOptions mapper;
};

struct RunResult {
  GomicCover cover;
  std::vector<KerneledSet> sets;
  std::vector<double> multipliers;
  std::optional<DensityProfile> profile;  // absent when sensitivity = 0
  MapperGraph multinerve;
  MapperGraph nerve;
  double resolution = 0.0;  // kerneled resolution of the sets
  RunConfig config;
};

RunResult run_pipeline(const PointCloud& cloud, const LensMap& lens, const RunConfig& config);

// JSON document recording the effective parameters and derived quantities;
// deterministic for a fixed input.
std::string run_manifest(const RunResult& result);

// Checks the convergence bound of the density-based graph against the
// Reeb oracle at radius delta, after verifying the bound's hypotheses on the
// sample (no intersection-crossing edges, Hausdorff density, lens variation
// within the overlap budget).
struct VerifyReport {
  // hypotheses
  std::size_t crossing_edges = 0;
  double hausdorff = 0.0;
  double delta = 0.0;
  bool hausdorff_ok = false;    // 4 d_H <= delta
  bool crossing_ok = false;     // no intersection-crossing edges
  double sample_variation = 0.0;  // max lens change across delta-pairs
  bool variation_ok = false;    // sample_variation <= g * r
  bool hypotheses_ok = false;

  // bound pieces
  double resolution = 0.0;       // r of the kerneled cover under test
  double omega = 0.0;            // modulus of continuity at delta (reference cloud)
  double bound = 0.0;            // r + 2 omega
  double distance = 0.0;         // bottleneck(oracle, graph)
  bool bound_ok = false;

  // diagram containment: oracle features missing from the graph
  double gap = 0.0;              // with drift-aware matching tolerance
  double gap_exact = 0.0;        // with exact (1e-9) matching
  double gap_tolerance = 0.0;    // coordinate drift allowance for matching
  bool gap_ok = false;           // gap <= r

  double oracle_resolution = 0.0;
  bool passed = false;
};

VerifyReport verify_convergence(const PointCloud& cloud, const LensMap& lens,
                                const PointCloud& reference, const LensMap& reference_lens,
                                const RunConfig& config, double delta);

std::string verify_report_json(const VerifyReport& report);

struct SweepCell {
  int n_intervals = 0;
  double overlap = 0.0;
  std::size_t vertices = 0;
  std::size_t edges = 0;
  std::size_t betti0 = 0;
  std::size_t betti1 = 0;
  bool correct = false;
  double runtime_ms = 0.0;
};

struct SweepReport {
  std::vector<int> n_values;
  std::vector<double> g_values;
  std::size_t expected_betti0 = 0;
  std::size_t expected_betti1 = 0;
  std::vector<SweepCell> standard;  // sensitivity forced to 0
  std::vector<SweepCell> density;   // as configured
  std::vector<MapperGraph> standard_graphs;  // collapsed, for layout export
  std::vector<MapperGraph> density_graphs;
  std::size_t standard_correct = 0;
  std::size_t density_correct = 0;
};

// Runs the pipeline over the (N, g) grid twice: once with sensitivity 0
// (standard Mapper) and once as configured. Correctness compares the
// collapsed graph's Betti numbers with the expected pair. Cell failures are
// recorded, not thrown.
SweepReport sweep_grid(const PointCloud& cloud, const LensMap& lens, const RunConfig& config,
                       const std::vector<int>& n_values, const std::vector<double>& g_values,
                       std::size_t expected_betti0, std::size_t expected_betti1);

std::string sweep_report_json(const SweepReport& report);

// Grid of small graph layouts, correct cells outlined.
std::string sweep_report_svg(const SweepReport& report, const PointCloud& cloud);

}  // namespace dbm
