#pragma once

#include <Eigen/Dense>
#include <cstdint>
#include <string>
#include <vector>

#include "gwac/codec.hpp"
#include "gwac/graph.hpp"

namespace gwac {

enum class GraphKind { sensor, community, knn, erdos_renyi };

const char* kind_name(GraphKind kind);
GraphKind kind_from_name(const std::string& name);

// Seeded synthetic graph family. Every generator draws from mt19937_64 in a
// fixed order, so (kind, params, seed) pins the graph bit-exactly.
struct GenSpec {
  GraphKind kind = GraphKind::sensor;
  int n = 500;
  int sensor_k = 6;       // nearest-neighbor count, sensor
  int knn_k = 15;         // nearest-neighbor count, knn
  int communities = 5;
  double intra_p = 0.19;  // community, within a block
  double inter_p = 0.002; // community, across blocks
  double er_p = 0.05;
  uint64_t seed = 0;
};

// Topology from the family, then i.i.d. truncated-normal weights
// (mean 1, sd 0.5, support (0, 2]) in edge order. When `planted` is non-null
// it receives the per-node community memberships (all zeros for kinds
// without block structure).
UGraph generate(const GenSpec& spec, std::vector<int>* planted = nullptr);

// 20 log10(|ref| / |ref - rec|); +infinity on exact agreement.
double snr_db(const Eigen::VectorXd& ref, const Eigen::VectorXd& rec);

// Heat diffusion y = U exp(-5 Lambda) U^T x for L = D - W, with the dense
// eigendecomposition cached so many inputs can be pushed through one graph.
// Eigenvalues are clamped at zero before exponentiating, which keeps lossy
// reconstructions with slightly indefinite L from blowing up.
class DiffusionOperator {
 public:
  explicit DiffusionOperator(const Eigen::MatrixXd& W);
  Eigen::VectorXd apply(const Eigen::VectorXd& x) const;
  int size() const { return static_cast<int>(basis_.rows()); }

 private:
  Eigen::MatrixXd basis_;
  Eigen::VectorXd decay_;
};

Eigen::VectorXd diffuse(const UGraph& g, const Eigen::VectorXd& x);

// Mean SNR between diffused signals over `trials` random inputs, each with
// exactly 100 ones placed without replacement. Requires at least 100 nodes.
double diffusion_snr(const UGraph& g_ref, const UGraph& g_rec, int trials, uint64_t seed);
double diffusion_snr(const DiffusionOperator& ref, const DiffusionOperator& rec,
                     int trials, uint64_t seed);

// Spectral clustering: symmetric normalized Laplacian, k smallest
// eigenvectors, unit-normalized rows (zero rows stay zero), k-means with
// k-means++ seeding, 20 restarts, 300 iterations, best inertia wins.
// Negative affinities (possible in lossy dense reconstructions) are clamped
// to zero and the diagonal is ignored.
std::vector<int> spectral_clustering(const UGraph& g, int k, uint64_t seed);
std::vector<int> spectral_clustering(const Eigen::MatrixXd& W, int k, uint64_t seed);

// Fraction of nodes whose labels agree after the two labelings are aligned
// by a maximum-agreement assignment over the confusion matrix.
double cluster_consistency(const std::vector<int>& labels_ref,
                           const std::vector<int>& labels_rec);

enum class Method {
  proposed_line,
  proposed_edge,
  direct_dct,
  direct_lra,
  direct_gfb,
  binary,
};

const char* method_name(Method m);
Method method_from_name(const std::string& name);

// One sweep cell: coded sizes plus the three metrics against the reference
// graph. Byte fields cover the coded payloads; bytes_total adds container
// overhead where one exists (the codec's header and length fields).
struct MetricReport {
  std::string method;
  double operating_point = 0.0;
  size_t bytes_topology = 0;
  size_t bytes_weights = 0;
  size_t bytes_total = 0;
  double snr_db = 0.0;
  double diffusion_snr_db = 0.0;
  double cluster_consistency = 0.0;
  uint64_t seed = 0;
};

struct SweepOptions {
  std::vector<Method> methods{Method::proposed_line, Method::proposed_edge,
                              Method::direct_dct,   Method::direct_lra,
                              Method::direct_gfb,   Method::binary};
  std::vector<double> rhos{0.005, 0.01, 0.02, 0.05, 0.1, 0.2, 0.3, 0.5, 0.7, 1.0};
  CodecConfig codec;  // quant_step, filter_order, m_max; mode is set per method
  int cluster_k = 2;
  int diffusion_trials = 20;
  uint64_t seed = 0;
};

// Rate-distortion sweep: one row per method x operating point (binary is a
// single point), plus two reference rows: `lossless-weighted` (rho = 1 at a
// 1e-6 step) and `lossless-binary` (topology only). Rows come out in cell
// order regardless of how the cells were scheduled; per-cell RNG streams are
// derived from (seed, method, point index).
std::vector<MetricReport> rd_sweep(const UGraph& g, const SweepOptions& opt);

// CSV with a header row, fields in MetricReport order; infinities print as
// "inf". JSON is an array of objects in the same field order, with
// infinities as the string "inf".
std::string report_csv(const std::vector<MetricReport>& rows);
std::string report_json(const std::vector<MetricReport>& rows);

}  // namespace gwac
