#include "gwac/evalgen.hpp"

#include <algorithm>
#include <array>
#include <cmath>
#include <cstdio>
#include <limits>
#include <numeric>
#include <stdexcept>

#include "json.hpp"

#include "gwac/baselines.hpp"
#include "gwac/rng.hpp"

namespace gwac {

const char* kind_name(GraphKind kind) {
  switch (kind) {
    case GraphKind::sensor: return "sensor";
    case GraphKind::community: return "community";
    case GraphKind::knn: return "knn";
    case GraphKind::erdos_renyi: return "er";
  }
  throw std::invalid_argument("kind_name: unknown graph kind");
}

GraphKind kind_from_name(const std::string& name) {
  if (name == "sensor") return GraphKind::sensor;
  if (name == "community") return GraphKind::community;
  if (name == "knn") return GraphKind::knn;
  if (name == "er" || name == "erdos-renyi") return GraphKind::erdos_renyi;
  throw std::invalid_argument("unknown graph kind: " + name);
}

namespace {

template <size_t D>
std::vector<std::array<double, D>> sample_points(int n, Rng& rng) {
  std::vector<std::array<double, D>> pts(n);
  for (auto& p : pts)
    for (double& c : p) c = rng.uniform01();
  return pts;
}

template <size_t D>
double dist2(const std::array<double, D>& a, const std::array<double, D>& b) {
  double s = 0.0;
  for (size_t d = 0; d < D; ++d) s += (a[d] - b[d]) * (a[d] - b[d]);
  return s;
}

// Union of directed k-nearest-neighbor picks, symmetrized. Ties in distance
// break on the lower index so the edge set is reproducible.
template <size_t D>
std::vector<std::pair<int, int>> knn_union(const std::vector<std::array<double, D>>& pts,
                                           int k) {
  const int n = static_cast<int>(pts.size());
  if (k < 1 || k >= n)
    throw std::invalid_argument("generate: neighbor count must be in [1, n)");
  std::vector<std::pair<int, int>> edges;
  std::vector<std::pair<double, int>> cand(n - 1);
  for (int i = 0; i < n; ++i) {
    int at = 0;
    for (int j = 0; j < n; ++j)
      if (j != i) cand[at++] = {dist2(pts[i], pts[j]), j};
    std::partial_sort(cand.begin(), cand.begin() + k, cand.end());
    for (int t = 0; t < k; ++t) {
      const int j = cand[t].second;
      edges.emplace_back(std::min(i, j), std::max(i, j));
    }
  }
  std::sort(edges.begin(), edges.end());
  edges.erase(std::unique(edges.begin(), edges.end()), edges.end());
  return edges;
}

// One uniform draw per node pair in lexicographic order, whatever the
// probabilities, so the stream layout never depends on the outcome.
template <typename ProbFn>
std::vector<std::pair<int, int>> bernoulli_pairs(int n, Rng& rng, ProbFn&& prob) {
  std::vector<std::pair<int, int>> edges;
  for (int i = 0; i < n; ++i)
    for (int j = i + 1; j < n; ++j)
      if (rng.uniform01() < prob(i, j)) edges.emplace_back(i, j);
  return edges;
}

}  // namespace

UGraph generate(const GenSpec& spec, std::vector<int>* planted) {
  if (spec.n <= 0) throw std::invalid_argument("generate: n must be positive");
  Rng rng(spec.seed);

  std::vector<int> membership(spec.n, 0);
  std::vector<std::pair<int, int>> edges;
  switch (spec.kind) {
    case GraphKind::sensor:
      edges = knn_union(sample_points<2>(spec.n, rng), spec.sensor_k);
      break;
    case GraphKind::knn:
      edges = knn_union(sample_points<3>(spec.n, rng), spec.knn_k);
      break;
    case GraphKind::community: {
      if (spec.communities < 2 || spec.communities > spec.n)
        throw std::invalid_argument("generate: community count out of range");
      if (!(spec.intra_p >= 0.0 && spec.intra_p <= 1.0) ||
          !(spec.inter_p >= 0.0 && spec.inter_p <= 1.0))
        throw std::invalid_argument("generate: probabilities must be in [0, 1]");
      // Scatter block membership over node indices (Fisher-Yates with the
      // shared engine) so no method can read the communities off label order.
      for (int i = 0; i < spec.n; ++i)
        membership[i] = static_cast<int>(static_cast<long long>(i) * spec.communities / spec.n);
      for (int i = spec.n - 1; i > 0; --i)
        std::swap(membership[i], membership[rng.uniform_below(static_cast<uint32_t>(i + 1))]);
      edges = bernoulli_pairs(spec.n, rng, [&](int i, int j) {
        return membership[i] == membership[j] ? spec.intra_p : spec.inter_p;
      });
      break;
    }
    case GraphKind::erdos_renyi:
      if (!(spec.er_p >= 0.0 && spec.er_p <= 1.0))
        throw std::invalid_argument("generate: probabilities must be in [0, 1]");
      edges = bernoulli_pairs(spec.n, rng, [&](int, int) { return spec.er_p; });
      break;
  }

  std::vector<double> weights(edges.size());
  for (double& w : weights) w = rng.truncated_normal(1.0, 0.5, 0.0, 2.0);
  if (planted) *planted = std::move(membership);
  return make_ugraph(spec.n, std::move(edges), std::move(weights));
}

double snr_db(const Eigen::VectorXd& ref, const Eigen::VectorXd& rec) {
  if (ref.size() != rec.size()) throw std::invalid_argument("snr: length mismatch");
  const double ref_norm = ref.norm();
  if (ref_norm == 0.0) throw std::invalid_argument("snr: zero reference norm");
  const double err_norm = (ref - rec).norm();
  if (err_norm == 0.0) return std::numeric_limits<double>::infinity();
  return 20.0 * std::log10(ref_norm / err_norm);
}

DiffusionOperator::DiffusionOperator(const Eigen::MatrixXd& W) {
  if (W.rows() != W.cols())
    throw std::invalid_argument("DiffusionOperator: matrix must be square");
  const Eigen::VectorXd d = W.rowwise().sum();
  Eigen::MatrixXd L = -W;
  L.diagonal() += d;
  const EigenPair ep = eigendecomposition(L);
  basis_ = ep.vectors;
  decay_ = (-5.0 * ep.values.cwiseMax(0.0)).array().exp();
}

Eigen::VectorXd DiffusionOperator::apply(const Eigen::VectorXd& x) const {
  if (x.size() != basis_.rows())
    throw std::invalid_argument("DiffusionOperator: input length mismatch");
  return basis_ * (decay_.asDiagonal() * (basis_.transpose() * x));
}

Eigen::VectorXd diffuse(const UGraph& g, const Eigen::VectorXd& x) {
  return DiffusionOperator(Eigen::MatrixXd(weighted_adjacency(g))).apply(x);
}

double diffusion_snr(const DiffusionOperator& ref, const DiffusionOperator& rec,
                     int trials, uint64_t seed) {
  const int n = ref.size();
  if (rec.size() != n) throw std::invalid_argument("diffusion_snr: size mismatch");
  if (n < 100)
    throw std::invalid_argument("diffusion_snr: graph needs at least 100 nodes");
  if (trials < 1) throw std::invalid_argument("diffusion_snr: trials must be positive");

  Rng rng(seed);
  double sum = 0.0;
  int finite = 0;
  for (int t = 0; t < trials; ++t) {
    Eigen::VectorXd x = Eigen::VectorXd::Zero(n);
    for (int i : rng.sample_without_replacement(n, 100)) x[i] = 1.0;
    const double s = snr_db(ref.apply(x), rec.apply(x));
    if (std::isfinite(s)) {
      sum += s;
      ++finite;
    }
  }
  if (finite == 0) return std::numeric_limits<double>::infinity();
  return sum / finite;
}

double diffusion_snr(const UGraph& g_ref, const UGraph& g_rec, int trials, uint64_t seed) {
  if (g_ref.n != g_rec.n) throw std::invalid_argument("diffusion_snr: size mismatch");
  const DiffusionOperator ref(Eigen::MatrixXd(weighted_adjacency(g_ref)));
  const DiffusionOperator rec(Eigen::MatrixXd(weighted_adjacency(g_rec)));
  return diffusion_snr(ref, rec, trials, seed);
}

namespace {

// k-means++ seeding: each new center is drawn with probability proportional
// to the squared distance from the nearest chosen one.
Eigen::MatrixXd kmeanspp_centers(const Eigen::MatrixXd& X, int k, Rng& rng) {
  const int n = static_cast<int>(X.rows());
  Eigen::MatrixXd centers(k, X.cols());
  centers.row(0) = X.row(static_cast<int>(rng.uniform_below(static_cast<uint32_t>(n))));
  Eigen::VectorXd d2 = (X.rowwise() - centers.row(0)).rowwise().squaredNorm();
  for (int c = 1; c < k; ++c) {
    const double total = d2.sum();
    int pick;
    if (total > 0.0) {
      const double u = rng.uniform01() * total;
      double cum = 0.0;
      pick = n - 1;
      for (int i = 0; i < n; ++i) {
        cum += d2[i];
        if (cum >= u) {
          pick = i;
          break;
        }
      }
    } else {
      pick = static_cast<int>(rng.uniform_below(static_cast<uint32_t>(n)));
    }
    centers.row(c) = X.row(pick);
    d2 = d2.cwiseMin((X.rowwise() - centers.row(c)).rowwise().squaredNorm());
  }
  return centers;
}

struct KmeansRun {
  std::vector<int> labels;
  double inertia = std::numeric_limits<double>::infinity();
};

KmeansRun lloyd(const Eigen::MatrixXd& X, Eigen::MatrixXd centers, int max_iters) {
  const int n = static_cast<int>(X.rows());
  const int k = static_cast<int>(centers.rows());
  std::vector<int> labels(n, -1);
  std::vector<int> counts(k, 0);

  for (int it = 0; it < max_iters; ++it) {
    bool changed = false;
    std::fill(counts.begin(), counts.end(), 0);
    for (int i = 0; i < n; ++i) {
      int best = 0;
      double best_d = (X.row(i) - centers.row(0)).squaredNorm();
      for (int c = 1; c < k; ++c) {
        const double d = (X.row(i) - centers.row(c)).squaredNorm();
        if (d < best_d) {
          best_d = d;
          best = c;
        }
      }
      if (best != labels[i]) {
        labels[i] = best;
        changed = true;
      }
      ++counts[best];
    }

    // Revive empty clusters with the point farthest from its center, drawn
    // from clusters that can spare one; ties resolve to the lowest index.
    for (int c = 0; c < k; ++c) {
      if (counts[c] > 0) continue;
      int take = -1;
      double take_d = -1.0;
      for (int i = 0; i < n; ++i) {
        if (counts[labels[i]] <= 1) continue;
        const double d = (X.row(i) - centers.row(labels[i])).squaredNorm();
        if (d > take_d) {
          take_d = d;
          take = i;
        }
      }
      if (take < 0) break;
      --counts[labels[take]];
      labels[take] = c;
      ++counts[c];
      changed = true;
    }

    if (!changed) break;
    centers.setZero();
    for (int i = 0; i < n; ++i) centers.row(labels[i]) += X.row(i);
    for (int c = 0; c < k; ++c)
      if (counts[c] > 0) centers.row(c) /= counts[c];
  }

  KmeansRun run;
  run.labels = std::move(labels);
  run.inertia = 0.0;
  for (int i = 0; i < n; ++i)
    run.inertia += (X.row(i) - centers.row(run.labels[i])).squaredNorm();
  return run;
}

std::vector<int> kmeans(const Eigen::MatrixXd& X, int k, uint64_t seed, int restarts,
                        int max_iters) {
  Rng rng(seed);
  KmeansRun best;
  for (int r = 0; r < restarts; ++r) {
    KmeansRun run = lloyd(X, kmeanspp_centers(X, k, rng), max_iters);
    if (run.inertia < best.inertia) best = std::move(run);
  }
  return best.labels;
}

}  // namespace

std::vector<int> spectral_clustering(const Eigen::MatrixXd& W, int k, uint64_t seed) {
  const int n = static_cast<int>(W.rows());
  if (W.cols() != n)
    throw std::invalid_argument("spectral_clustering: matrix must be square");
  if (k < 2) throw std::invalid_argument("spectral_clustering: k must be at least 2");
  if (k > n) throw std::invalid_argument("spectral_clustering: k exceeds node count");

  Eigen::MatrixXd A = W.cwiseMax(0.0);
  A.diagonal().setZero();
  A = 0.5 * (A + A.transpose());
  const Eigen::VectorXd d = A.rowwise().sum();
  Eigen::VectorXd dinv = d;
  for (int i = 0; i < n; ++i) dinv[i] = d[i] > 0.0 ? 1.0 / std::sqrt(d[i]) : 0.0;
  Eigen::MatrixXd L =
      Eigen::MatrixXd::Identity(n, n) - dinv.asDiagonal() * A * dinv.asDiagonal();
  L = 0.5 * (L + L.transpose());

  const EigenPair ep = eigendecomposition(L);
  Eigen::MatrixXd E = ep.vectors.leftCols(k);
  for (int i = 0; i < n; ++i) {
    const double r = E.row(i).norm();
    if (r > 1e-12)
      E.row(i) /= r;
    else
      E.row(i).setZero();
  }
  return kmeans(E, k, seed, 20, 300);
}

std::vector<int> spectral_clustering(const UGraph& g, int k, uint64_t seed) {
  return spectral_clustering(Eigen::MatrixXd(weighted_adjacency(g)), k, seed);
}

namespace {

// Minimum-cost assignment on a square matrix via shortest augmenting paths
// with potentials; returns for each column the assigned row.
std::vector<int> hungarian_min(const std::vector<std::vector<double>>& a) {
  const int n = static_cast<int>(a.size());
  const double inf = std::numeric_limits<double>::infinity();
  std::vector<double> u(n + 1, 0.0), v(n + 1, 0.0);
  std::vector<int> p(n + 1, 0), way(n + 1, 0);
  for (int i = 1; i <= n; ++i) {
    p[0] = i;
    int j0 = 0;
    std::vector<double> minv(n + 1, inf);
    std::vector<char> used(n + 1, 0);
    do {
      used[j0] = 1;
      const int i0 = p[j0];
      int j1 = 0;
      double delta = inf;
      for (int j = 1; j <= n; ++j) {
        if (used[j]) continue;
        const double cur = a[i0 - 1][j - 1] - u[i0] - v[j];
        if (cur < minv[j]) {
          minv[j] = cur;
          way[j] = j0;
        }
        if (minv[j] < delta) {
          delta = minv[j];
          j1 = j;
        }
      }
      for (int j = 0; j <= n; ++j) {
        if (used[j]) {
          u[p[j]] += delta;
          v[j] -= delta;
        } else {
          minv[j] -= delta;
        }
      }
      j0 = j1;
    } while (p[j0] != 0);
    do {
      const int j1 = way[j0];
      p[j0] = p[j1];
      j0 = j1;
    } while (j0 != 0);
  }
  std::vector<int> row_of_col(n);
  for (int j = 1; j <= n; ++j) row_of_col[j - 1] = p[j] - 1;
  return row_of_col;
}

}  // namespace

double cluster_consistency(const std::vector<int>& labels_ref,
                           const std::vector<int>& labels_rec) {
  if (labels_ref.size() != labels_rec.size())
    throw std::invalid_argument("cluster_consistency: length mismatch");
  if (labels_ref.empty())
    throw std::invalid_argument("cluster_consistency: empty labelings");
  int k = 0;
  for (size_t i = 0; i < labels_ref.size(); ++i) {
    if (labels_ref[i] < 0 || labels_rec[i] < 0)
      throw std::invalid_argument("cluster_consistency: negative label");
    k = std::max({k, labels_ref[i] + 1, labels_rec[i] + 1});
  }

  std::vector<std::vector<double>> agreement(k, std::vector<double>(k, 0.0));
  for (size_t i = 0; i < labels_ref.size(); ++i)
    agreement[labels_ref[i]][labels_rec[i]] += 1.0;

  // Maximum agreement = minimum of the negated counts.
  std::vector<std::vector<double>> cost(k, std::vector<double>(k));
  for (int a = 0; a < k; ++a)
    for (int b = 0; b < k; ++b) cost[a][b] = -agreement[a][b];
  const std::vector<int> row_of_col = hungarian_min(cost);
  double matched = 0.0;
  for (int b = 0; b < k; ++b) matched += agreement[row_of_col[b]][b];
  return matched / static_cast<double>(labels_ref.size());
}

const char* method_name(Method m) {
  switch (m) {
    case Method::proposed_line: return "proposed-line";
    case Method::proposed_edge: return "proposed-edge";
    case Method::direct_dct: return "direct-dct";
    case Method::direct_lra: return "direct-lra";
    case Method::direct_gfb: return "direct-gfb";
    case Method::binary: return "binary";
  }
  throw std::invalid_argument("method_name: unknown method");
}

Method method_from_name(const std::string& name) {
  if (name == "proposed-line") return Method::proposed_line;
  if (name == "proposed-edge") return Method::proposed_edge;
  if (name == "direct-dct") return Method::direct_dct;
  if (name == "direct-lra") return Method::direct_lra;
  if (name == "direct-gfb") return Method::direct_gfb;
  if (name == "binary") return Method::binary;
  throw std::invalid_argument("unknown method: " + name);
}

namespace {

struct SweepContext {
  const UGraph& g;
  const SweepOptions& opt;
  const Eigen::MatrixXd& W_ref;
  const DiffusionOperator& ref_op;
  const std::vector<int>& labels_ref;
};

void fill_metrics(const SweepContext& ctx, const Eigen::MatrixXd& W_rec,
                  uint64_t cell_seed, MetricReport& row) {
  const Eigen::Index n2 = ctx.W_ref.size();
  row.snr_db = snr_db(Eigen::Map<const Eigen::VectorXd>(ctx.W_ref.data(), n2),
                      Eigen::Map<const Eigen::VectorXd>(W_rec.data(), n2));
  const DiffusionOperator rec_op(W_rec);
  row.diffusion_snr_db = diffusion_snr(ctx.ref_op, rec_op, ctx.opt.diffusion_trials,
                                       mix_seed({cell_seed, 1}));
  const std::vector<int> labels_rec =
      spectral_clustering(W_rec, ctx.opt.cluster_k, mix_seed({cell_seed, 2}));
  row.cluster_consistency = cluster_consistency(ctx.labels_ref, labels_rec);
  row.seed = ctx.opt.seed;
}

MetricReport run_codec_cell(const SweepContext& ctx, const char* name,
                            const CodecConfig& cfg, double operating_point,
                            uint64_t cell_seed) {
  MetricReport row;
  row.method = name;
  row.operating_point = operating_point;
  const Bitstream b = compress(ctx.g, cfg);
  row.bytes_topology = b.topology.size();
  row.bytes_weights = b.weights.size();
  row.bytes_total = b.total_bytes();
  const UGraph dec = decompress(b);
  fill_metrics(ctx, Eigen::MatrixXd(weighted_adjacency(dec)), cell_seed, row);
  return row;
}

MetricReport run_baseline_cell(const SweepContext& ctx, const BaselineResult& res,
                               uint64_t cell_seed) {
  MetricReport row;
  row.method = [&res] {
    switch (res.method) {
      case BaselineMethod::direct_dct: return "direct-dct";
      case BaselineMethod::direct_lra: return "direct-lra";
      case BaselineMethod::direct_gfb: return "direct-gfb";
      case BaselineMethod::binary: return "binary";
    }
    throw std::invalid_argument("unknown baseline method");
  }();
  row.operating_point = res.operating_point;
  if (res.method == BaselineMethod::binary) {
    row.bytes_topology = res.bytes;
  } else {
    row.bytes_weights = res.bytes;
  }
  row.bytes_total = res.bytes;
  fill_metrics(ctx, res.reconstructed, cell_seed, row);
  return row;
}

uint64_t method_tag(Method m) { return static_cast<uint64_t>(m) + 1; }

}  // namespace

std::vector<MetricReport> rd_sweep(const UGraph& g, const SweepOptions& opt) {
  if (g.num_edges() == 0) throw std::invalid_argument("rd_sweep: graph has no edges");
  if (opt.methods.empty()) throw std::invalid_argument("rd_sweep: no methods");
  if (opt.rhos.empty()) throw std::invalid_argument("rd_sweep: no operating points");
  for (double rho : opt.rhos)
    if (!(rho > 0.0) || rho > 1.0)
      throw std::invalid_argument("rd_sweep: rho must be in (0, 1]");
  validate_config(opt.codec);

  const Eigen::MatrixXd W_ref(weighted_adjacency(g));
  const DiffusionOperator ref_op(W_ref);
  const std::vector<int> labels_ref =
      spectral_clustering(W_ref, opt.cluster_k, mix_seed({opt.seed, 0x726566}));
  const SweepContext ctx{g, opt, W_ref, ref_op, labels_ref};

  struct Cell {
    Method method;
    int point_index;
    double rho;
  };
  std::vector<Cell> cells;
  for (Method m : opt.methods) {
    if (m == Method::binary) {
      cells.push_back({m, 0, 0.0});
    } else {
      for (size_t pi = 0; pi < opt.rhos.size(); ++pi)
        cells.push_back({m, static_cast<int>(pi), opt.rhos[pi]});
    }
  }

  std::vector<MetricReport> rows(cells.size() + 2);
  std::exception_ptr failure;

#pragma omp parallel for schedule(dynamic)
  for (int ci = 0; ci < static_cast<int>(cells.size()); ++ci) {
    try {
      const Cell& cell = cells[ci];
      const uint64_t cell_seed = mix_seed(
          {opt.seed, method_tag(cell.method), static_cast<uint64_t>(cell.point_index)});
      switch (cell.method) {
        case Method::proposed_line:
        case Method::proposed_edge: {
          CodecConfig cfg = opt.codec;
          cfg.mode = cell.method == Method::proposed_line ? OperatorMode::line
                                                          : OperatorMode::edge;
          cfg.rho = cell.rho;
          rows[ci] =
              run_codec_cell(ctx, method_name(cell.method), cfg, cell.rho, cell_seed);
          break;
        }
        case Method::direct_dct:
          rows[ci] = run_baseline_cell(
              ctx, direct_dct(W_ref, cell.rho, opt.codec.quant_step), cell_seed);
          break;
        case Method::direct_lra: {
          const int r =
              std::clamp(static_cast<int>(std::llround(cell.rho * g.n)), 1, g.n);
          rows[ci] = run_baseline_cell(ctx, direct_lra(W_ref, r, opt.codec.quant_step),
                                       cell_seed);
          break;
        }
        case Method::direct_gfb:
          rows[ci] = run_baseline_cell(
              ctx,
              direct_gfb(W_ref, g, cell.rho, opt.codec.quant_step,
                         opt.codec.filter_order, opt.codec.m_max),
              cell_seed);
          break;
        case Method::binary:
          rows[ci] = run_baseline_cell(ctx, binary_baseline(g), cell_seed);
          break;
      }
    } catch (...) {
      // Exceptions cannot unwind out of the parallel region; surface the
      // first one after the loop.
#pragma omp critical(gwac_sweep_failure)
      if (!failure) failure = std::current_exception();
    }
  }
  if (failure) std::rethrow_exception(failure);

  // Reference rows: the figures' solid (lossless weighted) and dotted
  // (lossless binary topology) byte levels.
  {
    CodecConfig cfg = opt.codec;
    cfg.mode = OperatorMode::line;
    cfg.rho = 1.0;
    cfg.quant_step = 1e-6;
    rows[cells.size()] = run_codec_cell(ctx, "lossless-weighted", cfg, 1.0,
                                        mix_seed({opt.seed, uint64_t{100}, uint64_t{0}}));
  }
  {
    MetricReport row;
    row.method = "lossless-binary";
    row.operating_point = 0.0;
    row.bytes_topology = encode_topology(g.edges, g.n).size();
    row.bytes_total = row.bytes_topology;
    fill_metrics(ctx, Eigen::MatrixXd(binary_adjacency(g)),
                 mix_seed({opt.seed, uint64_t{101}, uint64_t{0}}), row);
    rows[cells.size() + 1] = row;
  }
  return rows;
}

namespace {

std::string format_metric(double v) {
  if (std::isinf(v)) return v > 0 ? "inf" : "-inf";
  char buf[64];
  std::snprintf(buf, sizeof(buf), "%.12g", v);
  return buf;
}

nlohmann::ordered_json metric_json(double v) {
  if (std::isinf(v)) return v > 0 ? "inf" : "-inf";
  return v;
}

}  // namespace

std::string report_csv(const std::vector<MetricReport>& rows) {
  std::string out =
      "method,operating_point,bytes_topology,bytes_weights,bytes_total,"
      "snr_db,diffusion_snr_db,cluster_consistency,seed\n";
  for (const MetricReport& r : rows) {
    out += r.method;
    out += ',';
    out += format_metric(r.operating_point);
    out += ',';
    out += std::to_string(r.bytes_topology);
    out += ',';
    out += std::to_string(r.bytes_weights);
    out += ',';
    out += std::to_string(r.bytes_total);
    out += ',';
    out += format_metric(r.snr_db);
    out += ',';
    out += format_metric(r.diffusion_snr_db);
    out += ',';
    out += format_metric(r.cluster_consistency);
    out += ',';
    out += std::to_string(r.seed);
    out += '\n';
  }
  return out;
}

std::string report_json(const std::vector<MetricReport>& rows) {
  nlohmann::ordered_json arr = nlohmann::ordered_json::array();
  for (const MetricReport& r : rows) {
    nlohmann::ordered_json o;
    o["method"] = r.method;
    o["operating_point"] = metric_json(r.operating_point);
    o["bytes_topology"] = r.bytes_topology;
    o["bytes_weights"] = r.bytes_weights;
    o["bytes_total"] = r.bytes_total;
    o["snr_db"] = metric_json(r.snr_db);
    o["diffusion_snr_db"] = metric_json(r.diffusion_snr_db);
    o["cluster_consistency"] = metric_json(r.cluster_consistency);
    o["seed"] = r.seed;
    arr.push_back(std::move(o));
  }
  return arr.dump(2) + "\n";
}

}  // namespace gwac
