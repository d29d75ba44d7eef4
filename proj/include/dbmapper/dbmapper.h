/* dbmapper: density-based Mapper graphs with a persistence-based
 * verification suite. C API over the C++ core; every object is an opaque
 * handle owned by the library and released with the matching _free call.
 * Calls return DBM_OK or an error code; dbm_last_error() describes the most
 * recent failure on the calling thread. */

#ifndef DBMAPPER_H
#define DBMAPPER_H

#include <stddef.h>
#include <stdint.h>

#ifdef __cplusplus
extern "C" {
#endif

typedef enum dbm_status {
  DBM_OK = 0,
  DBM_ERR_INVALID_PARAMETER = 1,
  DBM_ERR_IO = 2,
  DBM_ERR_DEGENERATE_COVER = 3,
  DBM_ERR_NONREGULAR_COVER = 4,
  DBM_ERR_INTERNAL = 5
} dbm_status;

typedef struct dbm_cloud dbm_cloud;     /* point cloud with lens values */
typedef struct dbm_run dbm_run;         /* pipeline result */
typedef struct dbm_diagram dbm_diagram; /* extended persistence diagram */
typedef struct dbm_report dbm_report;   /* verify / sweep report (JSON) */

enum { DBM_COVER_MORSE = 0, DBM_COVER_DATA = 1 };
enum { DBM_KERNEL_SQUARE = 0, DBM_KERNEL_GAUSSIAN = 1 };
enum { DBM_CLUSTER_SINGLE_LINKAGE = 0, DBM_CLUSTER_DBSCAN = 1 };
enum { DBM_WEIGHT_COUNT = 0, DBM_WEIGHT_KERNEL = 1 };

typedef struct dbm_params {
  int32_t cover_kind;     /* DBM_COVER_* */
  int32_t n_intervals;    /* checkpoint count N */
  double overlap;         /* g in (0, 1) */
  int32_t kernel;         /* DBM_KERNEL_* */
  double epsilon;         /* kernel threshold in (0, 1) */
  int32_t knn_k;          /* density neighbourhood size */
  double c_max;           /* width multiplier bound, >= 1 */
  double rate_sensitivity;/* widening exponent, >= 0; 0 = standard Mapper */
  int32_t clusterer;      /* DBM_CLUSTER_* */
  double delta;           /* single-linkage radius */
  double dbscan_eps;
  double dbscan_min_weight;
  int32_t use_kernel_weights; /* pass kernel values to the clusterer */
  int32_t weight_mode;    /* DBM_WEIGHT_* */
} dbm_params;

void dbm_params_default(dbm_params* params);

const char* dbm_status_name(dbm_status status);

/* Message for the most recent failing call on this thread. */
const char* dbm_last_error(void);

/* ---- point clouds ---- */

/* CSV with a header row; a column named `lens` (or lens_column, when not
 * NULL/empty) supplies the lens, otherwise the last column doubles as lens
 * and coordinate. */
dbm_status dbm_cloud_from_csv(const char* path, const char* lens_column, dbm_cloud** out);
dbm_status dbm_cloud_create(const double* coords, size_t n_points, size_t dim,
                            const double* lens, dbm_cloud** out);
dbm_status dbm_cloud_write_csv(const dbm_cloud* cloud, const char* path);
size_t dbm_cloud_size(const dbm_cloud* cloud);
size_t dbm_cloud_dim(const dbm_cloud* cloud);
/* Suggested Rips radius from generators; 0 when unknown. */
double dbm_cloud_suggested_delta(const dbm_cloud* cloud);
void dbm_cloud_free(dbm_cloud* cloud);

/* ---- synthetic datasets ---- */

dbm_status dbm_synth_three_component(uint64_t seed, const size_t sizes[3],
                                     double spread, dbm_cloud** out);
dbm_status dbm_synth_genus1(uint64_t seed, size_t loop_points, size_t tail_points,
                            double radial_noise, dbm_cloud** out);
dbm_status dbm_synth_circle(uint64_t seed, size_t points, dbm_cloud** out);

/* ---- density ---- */

/* Fills caller buffers of dbm_cloud_size() doubles; any output may be NULL. */
dbm_status dbm_density_profile(const dbm_cloud* cloud, int32_t k, double* raw,
                               double* smoothed, double* mu, double* sigma);

/* ---- pipeline ---- */

dbm_status dbm_run_pipeline(const dbm_cloud* cloud, const dbm_params* params, dbm_run** out);
/* format: "dot" | "json" | "graphml" | "svg" */
dbm_status dbm_run_export(const dbm_run* run, const char* format, const char* path);
dbm_status dbm_run_write_manifest(const dbm_run* run, const char* path);
dbm_status dbm_run_graph_counts(const dbm_run* run, size_t* vertices, size_t* edges,
                                size_t* betti0, size_t* betti1);
double dbm_run_resolution(const dbm_run* run);
void dbm_run_free(dbm_run* run);

/* ---- persistence diagrams ---- */

dbm_status dbm_run_diagram(const dbm_run* run, dbm_diagram** out);
dbm_status dbm_diagram_from_file(const char* path, dbm_diagram** out);
dbm_status dbm_diagram_write(const dbm_diagram* diagram, const char* path);
size_t dbm_diagram_size(const dbm_diagram* diagram);
dbm_status dbm_bottleneck(const dbm_diagram* a, const dbm_diagram* b, double* out);

/* Largest persistence among points of `reference` without a match in
 * `candidate` (same kind, coordinates within tol). */
dbm_status dbm_diagram_gap(const dbm_diagram* reference, const dbm_diagram* candidate,
                           double tol, double* out);
void dbm_diagram_free(dbm_diagram* diagram);

/* ---- verification and sweeps ---- */

/* Convergence check against the fine-resolution oracle at radius delta; the
 * reference cloud is a dense sample standing in for the underlying space. */
dbm_status dbm_verify(const dbm_cloud* cloud, const dbm_cloud* reference,
                      const dbm_params* params, double delta, dbm_report** out);

dbm_status dbm_sweep(const dbm_cloud* cloud, const dbm_params* params,
                     const int32_t* n_values, size_t n_count,
                     const double* g_values, size_t g_count,
                     size_t expected_betti0, size_t expected_betti1,
                     const char* svg_path, /* optional, may be NULL */
                     dbm_report** out);

/* 1 when the verify bound held / the sweep reached its expectations. */
int dbm_report_passed(const dbm_report* report);
const char* dbm_report_json(const dbm_report* report);
dbm_status dbm_report_write(const dbm_report* report, const char* path);
void dbm_report_free(dbm_report* report);

#ifdef __cplusplus
}
#endif

#endif /* DBMAPPER_H */
