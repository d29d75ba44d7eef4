#include "dbmapper/dbmapper.h"

#include <cstring>
#include <string>

#include "csv.hpp"
#include "export.hpp"
#include "pipeline.hpp"
#include "synthgen.hpp"

struct dbm_cloud {
  dbm::PointCloud cloud;
  dbm::LensMap lens;
  double suggested_delta = 0.0;
};

struct dbm_run {
  dbm::PointCloud cloud;  // retained for layout exports
  dbm::LensMap lens;
  dbm::RunResult result;
};

struct dbm_diagram {
  dbm::PersistenceDiagram diagram;
};

struct dbm_report {
  std::string json;
  bool passed = false;
};

namespace {

thread_local std::string g_last_error;

dbm_status to_status(const dbm::error& e) {
  switch (e.code()) {
    case dbm::errc::invalid_parameter: return DBM_ERR_INVALID_PARAMETER;
    case dbm::errc::io: return DBM_ERR_IO;
    case dbm::errc::degenerate_cover: return DBM_ERR_DEGENERATE_COVER;
    case dbm::errc::nonregular_cover: return DBM_ERR_NONREGULAR_COVER;
    case dbm::errc::internal: return DBM_ERR_INTERNAL;
  }
  return DBM_ERR_INTERNAL;
}

template <typename Fn>
dbm_status guarded(Fn&& fn) {
  try {
    fn();
    return DBM_OK;
  } catch (const dbm::error& e) {
    g_last_error = e.what();
    return to_status(e);
  } catch (const std::exception& e) {
    g_last_error = e.what();
    return DBM_ERR_INTERNAL;
  } catch (...) {
    g_last_error = "unknown error";
    return DBM_ERR_INTERNAL;
  }
}

dbm_status invalid(const char* message) {
  g_last_error = message;
  return DBM_ERR_INVALID_PARAMETER;
}

dbm::RunConfig to_config(const dbm_params& p) {
  dbm::RunConfig config;
  config.cover_kind = p.cover_kind == DBM_COVER_DATA ? dbm::CoverKind::data
                                                     : dbm::CoverKind::morse;
  config.n_intervals = p.n_intervals;
  config.overlap = p.overlap;
  config.mapper.kernel.shape = p.kernel == DBM_KERNEL_GAUSSIAN
                                   ? dbm::KernelShape::gaussian
                                   : dbm::KernelShape::square;
  config.mapper.kernel.epsilon = p.epsilon;
  config.mapper.knn_k = p.knn_k;
  config.mapper.scaler.c_max = p.c_max;
  config.mapper.scaler.sensitivity = p.rate_sensitivity;
  config.mapper.clusterer.kind = p.clusterer == DBM_CLUSTER_DBSCAN
                                     ? dbm::ClustererKind::dbscan
                                     : dbm::ClustererKind::single_linkage;
  config.mapper.clusterer.delta = p.delta;
  config.mapper.clusterer.eps = p.dbscan_eps;
  config.mapper.clusterer.min_weight = p.dbscan_min_weight;
  config.mapper.use_kernel_weights = p.use_kernel_weights != 0;
  config.mapper.weight_mode = p.weight_mode == DBM_WEIGHT_KERNEL
                                  ? dbm::WeightMode::kernel
                                  : dbm::WeightMode::count;
  return config;
}

}  // namespace

extern "C" {

void dbm_params_default(dbm_params* params) {
  if (params == nullptr) return;
  params->cover_kind = DBM_COVER_MORSE;
  params->n_intervals = 20;
  params->overlap = 0.5;
  params->kernel = DBM_KERNEL_SQUARE;
  params->epsilon = 0.1;
  params->knn_k = 15;
  params->c_max = 3.0;
  params->rate_sensitivity = 1.0;
  params->clusterer = DBM_CLUSTER_SINGLE_LINKAGE;
  params->delta = 0.1;
  params->dbscan_eps = 0.3;
  params->dbscan_min_weight = 8.0;
  params->use_kernel_weights = 0;
  params->weight_mode = DBM_WEIGHT_COUNT;
}

const char* dbm_status_name(dbm_status status) {
  switch (status) {
    case DBM_OK: return "ok";
    case DBM_ERR_INVALID_PARAMETER: return "invalid parameter";
    case DBM_ERR_IO: return "io error";
    case DBM_ERR_DEGENERATE_COVER: return "degenerate cover";
    case DBM_ERR_NONREGULAR_COVER: return "non-regular cover";
    case DBM_ERR_INTERNAL: return "internal error";
  }
  return "unknown";
}

const char* dbm_last_error(void) { return g_last_error.c_str(); }

dbm_status dbm_cloud_from_csv(const char* path, const char* lens_column, dbm_cloud** out) {
  if (path == nullptr || out == nullptr) return invalid("path and out must be non-null");
  return guarded([&] {
    dbm::CsvDataset data =
        dbm::read_csv(path, lens_column == nullptr ? "" : lens_column);
    *out = new dbm_cloud{std::move(data.cloud), std::move(data.lens), 0.0};
  });
}

dbm_status dbm_cloud_create(const double* coords, size_t n_points, size_t dim,
                            const double* lens, dbm_cloud** out) {
  if (coords == nullptr || lens == nullptr || out == nullptr) {
    return invalid("coords, lens and out must be non-null");
  }
  return guarded([&] {
    std::vector<double> c(coords, coords + n_points * dim);
    std::vector<double> l(lens, lens + n_points);
    *out = new dbm_cloud{dbm::PointCloud(std::move(c), dim), dbm::LensMap(std::move(l)),
                         0.0};
  });
}

dbm_status dbm_cloud_write_csv(const dbm_cloud* cloud, const char* path) {
  if (cloud == nullptr || path == nullptr) return invalid("cloud and path must be non-null");
  return guarded([&] { dbm::write_csv(path, cloud->cloud, cloud->lens); });
}

size_t dbm_cloud_size(const dbm_cloud* cloud) {
  return cloud == nullptr ? 0 : cloud->cloud.size();
}

size_t dbm_cloud_dim(const dbm_cloud* cloud) {
  return cloud == nullptr ? 0 : cloud->cloud.dim();
}

double dbm_cloud_suggested_delta(const dbm_cloud* cloud) {
  return cloud == nullptr ? 0.0 : cloud->suggested_delta;
}

void dbm_cloud_free(dbm_cloud* cloud) { delete cloud; }

dbm_status dbm_synth_three_component(uint64_t seed, const size_t sizes[3], double spread,
                                     dbm_cloud** out) {
  if (out == nullptr) return invalid("out must be non-null");
  return guarded([&] {
    dbm::ThreeComponentSpec spec;
    spec.seed = seed;
    if (sizes != nullptr) spec.sizes = {sizes[0], sizes[1], sizes[2]};
    if (spread > 0.0) spec.spread = spread;
    dbm::Dataset data = dbm::gen_three_component(spec);
    *out = new dbm_cloud{std::move(data.cloud), std::move(data.lens), data.suggested_delta};
  });
}

dbm_status dbm_synth_genus1(uint64_t seed, size_t loop_points, size_t tail_points,
                            double radial_noise, dbm_cloud** out) {
  if (out == nullptr) return invalid("out must be non-null");
  return guarded([&] {
    dbm::Genus1Spec spec;
    spec.seed = seed;
    if (loop_points > 0) spec.loop_points = loop_points;
    if (tail_points > 0) spec.tail_points = tail_points;
    spec.radial_noise = radial_noise;
    dbm::Dataset data = dbm::gen_genus1(spec);
    *out = new dbm_cloud{std::move(data.cloud), std::move(data.lens), data.suggested_delta};
  });
}

dbm_status dbm_synth_circle(uint64_t seed, size_t points, dbm_cloud** out) {
  if (out == nullptr) return invalid("out must be non-null");
  return guarded([&] {
    dbm::CircleSpec spec;
    spec.seed = seed;
    if (points > 0) spec.points = points;
    dbm::Dataset data = dbm::gen_circle(spec);
    *out = new dbm_cloud{std::move(data.cloud), std::move(data.lens), data.suggested_delta};
  });
}

dbm_status dbm_density_profile(const dbm_cloud* cloud, int32_t k, double* raw,
                               double* smoothed, double* mu, double* sigma) {
  if (cloud == nullptr) return invalid("cloud must be non-null");
  return guarded([&] {
    dbm::DensityProfile profile =
        dbm::make_density_profile(cloud->cloud, cloud->lens, dbm::knn(cloud->cloud, k));
    if (raw != nullptr) std::memcpy(raw, profile.raw.data(), profile.raw.size() * sizeof(double));
    if (smoothed != nullptr) {
      std::memcpy(smoothed, profile.smoothed.data(), profile.smoothed.size() * sizeof(double));
    }
    if (mu != nullptr) *mu = profile.mean_mu;
    if (sigma != nullptr) *sigma = profile.std_sigma;
  });
}

dbm_status dbm_run_pipeline(const dbm_cloud* cloud, const dbm_params* params, dbm_run** out) {
  if (cloud == nullptr || params == nullptr || out == nullptr) {
    return invalid("cloud, params and out must be non-null");
  }
  return guarded([&] {
    dbm::RunResult result = dbm::run_pipeline(cloud->cloud, cloud->lens, to_config(*params));
    *out = new dbm_run{cloud->cloud, cloud->lens, std::move(result)};
  });
}

dbm_status dbm_run_export(const dbm_run* run, const char* format, const char* path) {
  if (run == nullptr || format == nullptr || path == nullptr) {
    return invalid("run, format and path must be non-null");
  }
  return guarded([&] {
    std::string fmt = format;
    std::string text;
    if (fmt == "dot") {
      text = dbm::graph_to_dot(run->result.nerve);
    } else if (fmt == "json") {
      text = dbm::graph_to_json(run->result.nerve);
    } else if (fmt == "graphml") {
      text = dbm::graph_to_graphml(run->result.nerve);
    } else if (fmt == "svg") {
      text = dbm::graph_to_svg(run->result.nerve, run->cloud);
    } else {
      dbm::fail(dbm::errc::invalid_parameter,
                "unknown export format '" + fmt + "' (dot|json|graphml|svg)");
    }
    dbm::write_text_file(path, text);
  });
}

dbm_status dbm_run_write_manifest(const dbm_run* run, const char* path) {
  if (run == nullptr || path == nullptr) return invalid("run and path must be non-null");
  return guarded([&] { dbm::write_text_file(path, dbm::run_manifest(run->result)); });
}

dbm_status dbm_run_graph_counts(const dbm_run* run, size_t* vertices, size_t* edges,
                                size_t* betti0, size_t* betti1) {
  if (run == nullptr) return invalid("run must be non-null");
  return guarded([&] {
    auto [b0, b1] = dbm::betti_numbers(run->result.nerve);
    if (vertices != nullptr) *vertices = run->result.nerve.vertices.size();
    if (edges != nullptr) *edges = run->result.nerve.edges.size();
    if (betti0 != nullptr) *betti0 = b0;
    if (betti1 != nullptr) *betti1 = b1;
  });
}

double dbm_run_resolution(const dbm_run* run) {
  return run == nullptr ? 0.0 : run->result.resolution;
}

void dbm_run_free(dbm_run* run) { delete run; }

dbm_status dbm_run_diagram(const dbm_run* run, dbm_diagram** out) {
  if (run == nullptr || out == nullptr) return invalid("run and out must be non-null");
  return guarded([&] {
    *out = new dbm_diagram{dbm::extended_persistence(run->result.nerve)};
  });
}

dbm_status dbm_diagram_from_file(const char* path, dbm_diagram** out) {
  if (path == nullptr || out == nullptr) return invalid("path and out must be non-null");
  return guarded([&] {
    *out = new dbm_diagram{dbm::diagram_from_jsonl(dbm::read_text_file(path))};
  });
}

dbm_status dbm_diagram_write(const dbm_diagram* diagram, const char* path) {
  if (diagram == nullptr || path == nullptr) {
    return invalid("diagram and path must be non-null");
  }
  return guarded([&] {
    dbm::write_text_file(path, dbm::diagram_to_jsonl(diagram->diagram));
  });
}

size_t dbm_diagram_size(const dbm_diagram* diagram) {
  return diagram == nullptr ? 0 : diagram->diagram.points.size();
}

dbm_status dbm_bottleneck(const dbm_diagram* a, const dbm_diagram* b, double* out) {
  if (a == nullptr || b == nullptr || out == nullptr) {
    return invalid("diagrams and out must be non-null");
  }
  return guarded([&] { *out = dbm::bottleneck(a->diagram, b->diagram); });
}

dbm_status dbm_diagram_gap(const dbm_diagram* reference, const dbm_diagram* candidate,
                           double tol, double* out) {
  if (reference == nullptr || candidate == nullptr || out == nullptr) {
    return invalid("diagrams and out must be non-null");
  }
  return guarded([&] { *out = dbm::diagram_gap(reference->diagram, candidate->diagram, tol); });
}

void dbm_diagram_free(dbm_diagram* diagram) { delete diagram; }

dbm_status dbm_verify(const dbm_cloud* cloud, const dbm_cloud* reference,
                      const dbm_params* params, double delta, dbm_report** out) {
  if (cloud == nullptr || reference == nullptr || params == nullptr || out == nullptr) {
    return invalid("cloud, reference, params and out must be non-null");
  }
  return guarded([&] {
    dbm::VerifyReport report = dbm::verify_convergence(
        cloud->cloud, cloud->lens, reference->cloud, reference->lens, to_config(*params),
        delta);
    *out = new dbm_report{dbm::verify_report_json(report), report.passed};
  });
}

dbm_status dbm_sweep(const dbm_cloud* cloud, const dbm_params* params,
                     const int32_t* n_values, size_t n_count, const double* g_values,
                     size_t g_count, size_t expected_betti0, size_t expected_betti1,
                     const char* svg_path, dbm_report** out) {
  if (cloud == nullptr || params == nullptr || out == nullptr) {
    return invalid("cloud, params and out must be non-null");
  }
  if (n_values == nullptr || g_values == nullptr || n_count == 0 || g_count == 0) {
    return invalid("sweep needs non-empty N and g ranges");
  }
  return guarded([&] {
    std::vector<int> ns(n_values, n_values + n_count);
    std::vector<double> gs(g_values, g_values + g_count);
    dbm::SweepReport report =
        dbm::sweep_grid(cloud->cloud, cloud->lens, to_config(*params), ns, gs,
                        expected_betti0, expected_betti1);
    if (svg_path != nullptr && svg_path[0] != '\0') {
      dbm::write_text_file(svg_path, dbm::sweep_report_svg(report, cloud->cloud));
    }
    bool passed = report.density_correct >= report.standard_correct;
    *out = new dbm_report{dbm::sweep_report_json(report), passed};
  });
}

int dbm_report_passed(const dbm_report* report) {
  return report != nullptr && report->passed ? 1 : 0;
}

const char* dbm_report_json(const dbm_report* report) {
  return report == nullptr ? "" : report->json.c_str();
}

dbm_status dbm_report_write(const dbm_report* report, const char* path) {
  if (report == nullptr || path == nullptr) return invalid("report and path must be non-null");
  return guarded([&] { dbm::write_text_file(path, report->json); });
}

void dbm_report_free(dbm_report* report) { delete report; }

}  // extern "C"
