// Command-line front end for the dbmapper shared library. Subcommands:
//   run      build a Mapper graph from a CSV and export it
//   sweep    run the (N, g) grid comparison of standard vs density-based
//   synth    generate the built-in synthetic datasets
//   density  emit the per-point inverse density as CSV
//   verify   check the convergence bound against the fine-resolution oracle
//   diagram  emit an extended persistence diagram as JSON lines
//
// Exit codes: 0 success, 1 validation/usage error, 2 verification failure.

#include <cstdint>
#include <cstdio>
#include <string>
#include <vector>

#include <CLI11.hpp>
#include <json.hpp>

#include "dbmapper/dbmapper.h"

namespace {

struct ParamFlags {
  std::string cover = "morse";
  int n_intervals = 20;
  double overlap = 0.5;
  std::string kernel = "square";
  double epsilon = 0.1;
  int k = 15;
  double c_max = 3.0;
  double rate_sensitivity = 1.0;
  std::string clusterer = "single-linkage";
  double delta = 0.1;
  double dbscan_eps = 0.3;
  double dbscan_min_weight = 8.0;
  bool use_kernel_weights = false;
  std::string weight_mode = "count";
};

void add_param_flags(CLI::App* cmd, ParamFlags* flags) {
  cmd->add_option("--cover", flags->cover, "Cover kind (morse|data)")
      ->check(CLI::IsMember({"morse", "data"}));
  cmd->add_option("--n-checkpoints,-N", flags->n_intervals, "Number of cover intervals");
  cmd->add_option("--overlap,-g", flags->overlap, "Cover overlap g in (0,1)");
  cmd->add_option("--kernel", flags->kernel, "Kernel shape (square|gaussian)")
      ->check(CLI::IsMember({"square", "gaussian"}));
  cmd->add_option("--epsilon", flags->epsilon, "Kernel threshold in (0,1)");
  cmd->add_option("--k", flags->k, "Neighbour count for the density estimate");
  cmd->add_option("--c-max", flags->c_max, "Maximum width multiplier (>= 1)");
  cmd->add_option("--rate-sensitivity,-s", flags->rate_sensitivity,
                  "Width sensitivity exponent (0 recovers standard Mapper)");
  cmd->add_option("--clusterer", flags->clusterer, "Clustering algorithm")
      ->check(CLI::IsMember({"single-linkage", "dbscan"}));
  cmd->add_option("--delta", flags->delta, "Single-linkage radius");
  cmd->add_option("--dbscan-eps", flags->dbscan_eps, "DBSCAN neighbourhood radius");
  cmd->add_option("--dbscan-min-weight", flags->dbscan_min_weight,
                  "DBSCAN core weight threshold");
  cmd->add_option("--use-kernel-weights", flags->use_kernel_weights,
                  "Pass kernel values to the clusterer as point weights");
  cmd->add_option("--weight-mode", flags->weight_mode, "Edge weights (count|kernel)")
      ->check(CLI::IsMember({"count", "kernel"}));
  cmd->set_config("--config", "", "Read flags from a key=value file");
}

dbm_params to_params(const ParamFlags& flags) {
  dbm_params p;
  dbm_params_default(&p);
  p.cover_kind = flags.cover == "data" ? DBM_COVER_DATA : DBM_COVER_MORSE;
  p.n_intervals = flags.n_intervals;
  p.overlap = flags.overlap;
  p.kernel = flags.kernel == "gaussian" ? DBM_KERNEL_GAUSSIAN : DBM_KERNEL_SQUARE;
  p.epsilon = flags.epsilon;
  p.knn_k = flags.k;
  p.c_max = flags.c_max;
  p.rate_sensitivity = flags.rate_sensitivity;
  p.clusterer = flags.clusterer == "dbscan" ? DBM_CLUSTER_DBSCAN
                                            : DBM_CLUSTER_SINGLE_LINKAGE;
  p.delta = flags.delta;
  p.dbscan_eps = flags.dbscan_eps;
  p.dbscan_min_weight = flags.dbscan_min_weight;
  p.use_kernel_weights = flags.use_kernel_weights ? 1 : 0;
  p.weight_mode = flags.weight_mode == "kernel" ? DBM_WEIGHT_KERNEL : DBM_WEIGHT_COUNT;
  return p;
}

[[noreturn]] void die(dbm_status status) {
  std::fprintf(stderr, "error (%s): %s\n", dbm_status_name(status), dbm_last_error());
  std::exit(1);
}

void check(dbm_status status) {
  if (status != DBM_OK) die(status);
}

dbm_cloud* load_cloud(const std::string& path, const std::string& lens_column) {
  dbm_cloud* cloud = nullptr;
  check(dbm_cloud_from_csv(path.c_str(), lens_column.empty() ? nullptr : lens_column.c_str(),
                           &cloud));
  return cloud;
}

int cmd_run(const std::string& input, const std::string& lens_column, const ParamFlags& flags,
            const std::string& dot, const std::string& json, const std::string& graphml,
            const std::string& svg, const std::string& manifest) {
  dbm_cloud* cloud = load_cloud(input, lens_column);
  dbm_params params = to_params(flags);
  dbm_run* run = nullptr;
  check(dbm_run_pipeline(cloud, &params, &run));

  if (!dot.empty()) check(dbm_run_export(run, "dot", dot.c_str()));
  if (!json.empty()) check(dbm_run_export(run, "json", json.c_str()));
  if (!graphml.empty()) check(dbm_run_export(run, "graphml", graphml.c_str()));
  if (!svg.empty()) check(dbm_run_export(run, "svg", svg.c_str()));
  if (!manifest.empty()) check(dbm_run_write_manifest(run, manifest.c_str()));

  size_t v = 0, e = 0, b0 = 0, b1 = 0;
  check(dbm_run_graph_counts(run, &v, &e, &b0, &b1));
  std::printf("points=%zu vertices=%zu edges=%zu betti0=%zu betti1=%zu resolution=%g\n",
              dbm_cloud_size(cloud), v, e, b0, b1, dbm_run_resolution(run));

  dbm_run_free(run);
  dbm_cloud_free(cloud);
  return 0;
}

int cmd_sweep(const std::string& input, const std::string& lens_column,
              const ParamFlags& flags, std::vector<int> n_values,
              std::vector<double> g_values, size_t b0, size_t b1,
              const std::string& report_path, const std::string& svg_path) {
  dbm_cloud* cloud = load_cloud(input, lens_column);
  dbm_params params = to_params(flags);
  std::vector<int32_t> ns(n_values.begin(), n_values.end());

  dbm_report* report = nullptr;
  check(dbm_sweep(cloud, &params, ns.data(), ns.size(), g_values.data(), g_values.size(),
                  b0, b1, svg_path.empty() ? nullptr : svg_path.c_str(), &report));
  if (!report_path.empty()) check(dbm_report_write(report, report_path.c_str()));

  nlohmann::json j = nlohmann::json::parse(dbm_report_json(report));
  std::printf("expected betti0=%zu betti1=%zu\n", b0, b1);
  std::printf("standard correct: %zu / %zu\n", j["standard_correct"].get<size_t>(),
              n_values.size() * g_values.size());
  std::printf("density-based correct: %zu / %zu\n", j["density_correct"].get<size_t>(),
              n_values.size() * g_values.size());

  dbm_report_free(report);
  dbm_cloud_free(cloud);
  return 0;
}

int cmd_synth(const std::string& dataset, std::uint64_t seed, const std::string& out,
              std::vector<size_t> sizes, size_t loop_points, size_t tail_points,
              double radial_noise, size_t circle_points) {
  dbm_cloud* cloud = nullptr;
  if (dataset == "three-component") {
    size_t s[3] = {1000, 400, 150};
    if (sizes.size() == 3) {
      s[0] = sizes[0];
      s[1] = sizes[1];
      s[2] = sizes[2];
    }
    check(dbm_synth_three_component(seed, s, 1.0, &cloud));
  } else if (dataset == "genus1") {
    check(dbm_synth_genus1(seed, loop_points, tail_points, radial_noise, &cloud));
  } else if (dataset == "circle") {
    check(dbm_synth_circle(seed, circle_points, &cloud));
  } else {
    std::fprintf(stderr, "unknown dataset '%s' (three-component|genus1|circle)\n",
                 dataset.c_str());
    return 1;
  }
  check(dbm_cloud_write_csv(cloud, out.c_str()));
  std::printf("wrote %zu points (dim %zu) to %s; suggested delta %g\n",
              dbm_cloud_size(cloud), dbm_cloud_dim(cloud), out.c_str(),
              dbm_cloud_suggested_delta(cloud));
  dbm_cloud_free(cloud);
  return 0;
}

int cmd_density(const std::string& input, const std::string& lens_column, int k,
                const std::string& out) {
  dbm_cloud* cloud = load_cloud(input, lens_column);
  size_t n = dbm_cloud_size(cloud);
  std::vector<double> raw(n), smoothed(n);
  double mu = 0.0, sigma = 0.0;
  check(dbm_density_profile(cloud, k, raw.data(), smoothed.data(), &mu, &sigma));

  std::FILE* f = std::fopen(out.c_str(), "w");
  if (f == nullptr) {
    std::fprintf(stderr, "error: cannot write '%s'\n", out.c_str());
    dbm_cloud_free(cloud);
    return 1;
  }
  std::fprintf(f, "index,raw,smoothed\n");
  for (size_t i = 0; i < n; ++i) {
    std::fprintf(f, "%zu,%.17g,%.17g\n", i, raw[i], smoothed[i]);
  }
  std::fclose(f);
  std::printf("mu=%.17g sigma=%.17g\n", mu, sigma);
  dbm_cloud_free(cloud);
  return 0;
}

int cmd_verify(const std::string& input, const std::string& reference,
               const std::string& lens_column, const ParamFlags& flags, double delta,
               const std::string& report_path) {
  dbm_cloud* cloud = load_cloud(input, lens_column);
  dbm_cloud* ref = load_cloud(reference, lens_column);
  dbm_params params = to_params(flags);

  dbm_report* report = nullptr;
  check(dbm_verify(cloud, ref, &params, delta, &report));
  if (!report_path.empty()) check(dbm_report_write(report, report_path.c_str()));

  nlohmann::json j = nlohmann::json::parse(dbm_report_json(report));
  std::printf("hypotheses: crossing_edges=%zu hausdorff=%g variation=%g ok=%s\n",
              j["hypotheses"]["intersection_crossing_edges"].get<size_t>(),
              j["hypotheses"]["hausdorff"].get<double>(),
              j["hypotheses"]["sample_variation"].get<double>(),
              j["hypotheses"]["ok"].get<bool>() ? "yes" : "no");
  std::printf("r=%g omega(delta)=%g bound=%g bottleneck=%g\n",
              j["bound"]["resolution"].get<double>(),
              j["bound"]["omega_delta"].get<double>(), j["bound"]["bound"].get<double>(),
              j["bound"]["bottleneck"].get<double>());
  std::printf("containment gap=%g (tolerance %g)\n", j["containment"]["gap"].get<double>(),
              j["containment"]["tolerance"].get<double>());
  bool passed = dbm_report_passed(report) != 0;
  std::printf("verify: %s\n", passed ? "PASS" : "FAIL");

  dbm_report_free(report);
  dbm_cloud_free(ref);
  dbm_cloud_free(cloud);
  return passed ? 0 : 2;
}

int cmd_diagram(const std::string& input, const std::string& lens_column,
                const ParamFlags& flags, const std::string& out) {
  dbm_cloud* cloud = load_cloud(input, lens_column);
  dbm_params params = to_params(flags);
  dbm_run* run = nullptr;
  check(dbm_run_pipeline(cloud, &params, &run));
  dbm_diagram* diagram = nullptr;
  check(dbm_run_diagram(run, &diagram));
  check(dbm_diagram_write(diagram, out.c_str()));
  std::printf("wrote %zu diagram points to %s\n", dbm_diagram_size(diagram), out.c_str());
  dbm_diagram_free(diagram);
  dbm_run_free(run);
  dbm_cloud_free(cloud);
  return 0;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"density-based Mapper graphs with convergence verification"};
  app.require_subcommand(1);

  // run
  auto* run = app.add_subcommand("run", "Build a Mapper graph from a CSV");
  std::string run_input, run_lens_column, run_dot, run_json, run_graphml, run_svg,
      run_manifest;
  ParamFlags run_flags;
  run->add_option("--input,-i", run_input, "Input CSV")->required();
  run->add_option("--lens-column", run_lens_column, "Name of the lens column");
  add_param_flags(run, &run_flags);
  run->add_option("--dot", run_dot, "Write DOT graph");
  run->add_option("--json", run_json, "Write JSON graph (with member lists)");
  run->add_option("--graphml", run_graphml, "Write GraphML graph");
  run->add_option("--svg", run_svg, "Write SVG layout");
  run->add_option("--manifest", run_manifest, "Write JSON run manifest");

  // sweep
  auto* sweep = app.add_subcommand("sweep", "Grid comparison over N and g");
  std::string sweep_input, sweep_lens_column, sweep_report, sweep_svg;
  ParamFlags sweep_flags;
  std::vector<int> sweep_n{10, 15, 20, 25, 30};
  std::vector<double> sweep_g{0.2, 0.35, 0.5, 0.65, 0.8};
  size_t sweep_b0 = 2, sweep_b1 = 1;
  sweep->add_option("--input,-i", sweep_input, "Input CSV")->required();
  sweep->add_option("--lens-column", sweep_lens_column, "Name of the lens column");
  add_param_flags(sweep, &sweep_flags);
  sweep->add_option("--n-values", sweep_n, "Grid values for N")->delimiter(',');
  sweep->add_option("--g-values", sweep_g, "Grid values for g")->delimiter(',');
  sweep->add_option("--expected-b0", sweep_b0, "Expected number of components");
  sweep->add_option("--expected-b1", sweep_b1, "Expected number of independent cycles");
  sweep->add_option("--report", sweep_report, "Write JSON report");
  sweep->add_option("--svg", sweep_svg, "Write SVG grid of layouts");

  // synth
  auto* synth = app.add_subcommand("synth", "Generate a synthetic dataset");
  std::string synth_dataset = "genus1", synth_out = "synth.csv";
  std::uint64_t synth_seed = 42;
  std::vector<size_t> synth_sizes;
  size_t synth_loop = 1000, synth_tail = 150, synth_circle = 400;
  double synth_radial_noise = 0.0;
  synth->add_option("--dataset", synth_dataset, "three-component|genus1|circle")
      ->check(CLI::IsMember({"three-component", "genus1", "circle"}));
  synth->add_option("--seed", synth_seed, "Generator seed");
  synth->add_option("--out,-o", synth_out, "Output CSV")->required();
  synth->add_option("--sizes", synth_sizes, "Component sizes (three-component)")
      ->delimiter(',');
  synth->add_option("--loop-points", synth_loop, "Loop sample count (genus1)");
  synth->add_option("--tail-points", synth_tail, "Sparse component count (genus1)");
  synth->add_option("--radial-noise", synth_radial_noise, "Loop radial noise (genus1)");
  synth->add_option("--points", synth_circle, "Point count (circle)");

  // density
  auto* density = app.add_subcommand("density", "Emit per-point inverse density");
  std::string density_input, density_lens_column, density_out = "density.csv";
  int density_k = 15;
  density->add_option("--input,-i", density_input, "Input CSV")->required();
  density->add_option("--lens-column", density_lens_column, "Name of the lens column");
  density->add_option("--k", density_k, "Neighbour count");
  density->add_option("--out,-o", density_out, "Output CSV");

  // verify
  auto* verify = app.add_subcommand("verify", "Check the convergence bound");
  std::string verify_input, verify_reference, verify_lens_column, verify_report;
  ParamFlags verify_flags;
  double verify_delta = 0.1;
  verify->add_option("--input,-i", verify_input, "Sample CSV")->required();
  verify->add_option("--reference", verify_reference, "Dense reference CSV")->required();
  verify->add_option("--lens-column", verify_lens_column, "Name of the lens column");
  add_param_flags(verify, &verify_flags);
  verify->add_option("--rips-delta", verify_delta, "Rips radius for the oracle")->required();
  verify->add_option("--report", verify_report, "Write JSON report");

  // diagram
  auto* diagram = app.add_subcommand("diagram", "Emit the extended persistence diagram");
  std::string diagram_input, diagram_lens_column, diagram_out = "diagram.jsonl";
  ParamFlags diagram_flags;
  diagram->add_option("--input,-i", diagram_input, "Input CSV")->required();
  diagram->add_option("--lens-column", diagram_lens_column, "Name of the lens column");
  add_param_flags(diagram, &diagram_flags);
  diagram->add_option("--out,-o", diagram_out, "Output JSONL path");

  CLI11_PARSE(app, argc, argv);

  if (run->parsed()) {
    return cmd_run(run_input, run_lens_column, run_flags, run_dot, run_json, run_graphml,
                   run_svg, run_manifest);
  }
  if (sweep->parsed()) {
    return cmd_sweep(sweep_input, sweep_lens_column, sweep_flags, sweep_n, sweep_g,
                     sweep_b0, sweep_b1, sweep_report, sweep_svg);
  }
  if (synth->parsed()) {
    return cmd_synth(synth_dataset, synth_seed, synth_out, synth_sizes, synth_loop,
                     synth_tail, synth_radial_noise, synth_circle);
  }
  if (density->parsed()) {
    return cmd_density(density_input, density_lens_column, density_k, density_out);
  }
  if (verify->parsed()) {
    return cmd_verify(verify_input, verify_reference, verify_lens_column, verify_flags,
                      verify_delta, verify_report);
  }
  if (diagram->parsed()) {
    return cmd_diagram(diagram_input, diagram_lens_column, diagram_flags, diagram_out);
  }
  return 1;
}
