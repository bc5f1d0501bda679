#include "gwac/graph.hpp"

#include <algorithm>
#include <charconv>
#include <cmath>
#include <cstdio>
#include <sstream>
#include <stdexcept>

#include "gwac/ioutil.hpp"
#include "gwac/rng.hpp"

namespace gwac {

UGraph make_ugraph(int n, std::vector<std::pair<int, int>> edges,
                   std::vector<double> weights) {
  if (n < 1) throw std::invalid_argument("UGraph: n must be >= 1");
  if (edges.size() != weights.size())
    throw std::invalid_argument("UGraph: edge/weight count mismatch");

  std::vector<size_t> order(edges.size());
  for (size_t k = 0; k < order.size(); ++k) order[k] = k;
  std::sort(order.begin(), order.end(),
            [&edges](size_t a, size_t b) { return edges[a] < edges[b]; });

  UGraph g;
  g.n = n;
  g.edges.reserve(edges.size());
  g.weights.reserve(weights.size());
  for (size_t k : order) {
    const auto [i, j] = edges[k];
    const double w = weights[k];
    if (i < 0 || j < 0 || i >= n || j >= n)
      throw std::invalid_argument("UGraph: edge endpoint out of range");
    if (i == j) throw std::invalid_argument("UGraph: self-loop");
    if (i > j) throw std::invalid_argument("UGraph: edge endpoints must satisfy i < j");
    if (!(w > 0.0)) throw std::invalid_argument("UGraph: weights must be positive");
    if (!g.edges.empty() && g.edges.back() == edges[k])
      throw std::invalid_argument("UGraph: duplicate edge");
    g.edges.push_back(edges[k]);
    g.weights.push_back(w);
  }
  return g;
}

namespace {

SpMat adjacency_from(const UGraph& g, bool binary) {
  std::vector<Eigen::Triplet<double>> trips;
  trips.reserve(2 * g.edges.size());
  for (size_t k = 0; k < g.edges.size(); ++k) {
    const auto [i, j] = g.edges[k];
    const double w = binary ? 1.0 : g.weights[k];
    trips.emplace_back(i, j, w);
    trips.emplace_back(j, i, w);
  }
  SpMat a(g.n, g.n);
  a.setFromTriplets(trips.begin(), trips.end());
  return a;
}

}  // namespace

SpMat weighted_adjacency(const UGraph& g) { return adjacency_from(g, false); }

SpMat binary_adjacency(const UGraph& g) { return adjacency_from(g, true); }

SpMat laplacian(const UGraph& g) {
  std::vector<double> deg(g.n, 0.0);
  std::vector<Eigen::Triplet<double>> trips;
  trips.reserve(2 * g.edges.size() + g.n);
  for (size_t k = 0; k < g.edges.size(); ++k) {
    const auto [i, j] = g.edges[k];
    const double w = g.weights[k];
    deg[i] += w;
    deg[j] += w;
    trips.emplace_back(i, j, -w);
    trips.emplace_back(j, i, -w);
  }
  for (int v = 0; v < g.n; ++v)
    if (deg[v] != 0.0) trips.emplace_back(v, v, deg[v]);
  SpMat l(g.n, g.n);
  l.setFromTriplets(trips.begin(), trips.end());
  return l;
}

SpMat sym_normalized_laplacian(const SpMat& adjacency) {
  if (adjacency.rows() != adjacency.cols())
    throw std::invalid_argument("sym_normalized_laplacian: matrix not square");
  const int n = static_cast<int>(adjacency.rows());
  std::vector<double> deg(n, 0.0);
  for (int c = 0; c < n; ++c) {
    for (SpMat::InnerIterator it(adjacency, c); it; ++it) {
      if (it.value() < 0.0)
        throw std::invalid_argument("sym_normalized_laplacian: negative adjacency entry");
      deg[it.row()] += it.value();
    }
  }
  std::vector<Eigen::Triplet<double>> trips;
  trips.reserve(adjacency.nonZeros() + n);
  for (int v = 0; v < n; ++v) trips.emplace_back(v, v, 1.0);
  for (int c = 0; c < n; ++c) {
    for (SpMat::InnerIterator it(adjacency, c); it; ++it) {
      const int r = static_cast<int>(it.row());
      if (r == c || it.value() == 0.0) continue;
      trips.emplace_back(r, c, -it.value() / std::sqrt(deg[r] * deg[c]));
    }
  }
  SpMat l(n, n);
  l.setFromTriplets(trips.begin(), trips.end());
  return l;
}

Incidence incidence(const UGraph& g) {
  const int m = g.num_edges();
  std::vector<Eigen::Triplet<double>> dir, und;
  dir.reserve(2 * m);
  und.reserve(2 * m);
  for (int a = 0; a < m; ++a) {
    const auto [i, j] = g.edges[a];
    dir.emplace_back(i, a, 1.0);
    dir.emplace_back(j, a, -1.0);
    und.emplace_back(i, a, 1.0);
    und.emplace_back(j, a, 1.0);
  }
  Incidence inc{SpMat(g.n, m), SpMat(g.n, m)};
  inc.directed.setFromTriplets(dir.begin(), dir.end());
  inc.undirected.setFromTriplets(und.begin(), und.end());
  return inc;
}

EigenPair eigendecomposition(const Eigen::MatrixXd& m) {
  if (m.rows() != m.cols())
    throw std::invalid_argument("eigendecomposition: matrix not square");
  const double scale = std::max(1.0, m.cwiseAbs().maxCoeff());
  if ((m - m.transpose()).cwiseAbs().maxCoeff() > 1e-10 * scale)
    throw std::invalid_argument("eigendecomposition: matrix not symmetric");
  Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> solver(m);
  if (solver.info() != Eigen::Success)
    throw std::runtime_error("eigendecomposition: solver failed");
  return EigenPair{solver.eigenvalues(), solver.eigenvectors()};
}

double lambda_max_estimate(const SpMat& m, double tol) {
  if (m.rows() != m.cols())
    throw std::invalid_argument("lambda_max_estimate: matrix not square");
  const int n = static_cast<int>(m.rows());
  if (n == 0) return 0.0;

  // Fixed pseudo-random start vector; a deterministic generic direction that
  // overlaps every eigenspace in practice.
  Eigen::VectorXd v(n);
  uint64_t state = 0x2545f4914f6cdd1dULL;
  for (int i = 0; i < n; ++i)
    v[i] = static_cast<double>(splitmix64(state) >> 11) * 0x1.0p-53 + 0.5;
  v.normalize();

  const int max_iters = 20000;
  const int min_iters = 30;
  double lambda = 0.0;
  Eigen::VectorXd av(n);
  for (int it = 1; it <= max_iters; ++it) {
    av.noalias() = m * v;
    const double norm = av.norm();
    if (norm == 0.0) return 0.0;  // start vector is in the null space: zero matrix
    const double rayleigh = v.dot(av);
    av /= norm;
    v.swap(av);
    if (it >= min_iters && std::abs(rayleigh - lambda) <= tol * std::max(std::abs(rayleigh), 1e-300)) {
      return 1.01 * rayleigh;
    }
    lambda = rayleigh;
  }
  throw std::runtime_error("lambda_max_estimate: power iteration did not converge");
}

namespace {

double parse_double_strict(const std::string& tok, const char* what) {
  double v = 0.0;
  const auto res = std::from_chars(tok.data(), tok.data() + tok.size(), v);
  if (res.ec != std::errc() || res.ptr != tok.data() + tok.size())
    throw std::invalid_argument(std::string("edge list: bad ") + what + " '" + tok + "'");
  return v;
}

long parse_int_strict(const std::string& tok, const char* what) {
  long v = 0;
  const auto res = std::from_chars(tok.data(), tok.data() + tok.size(), v);
  if (res.ec != std::errc() || res.ptr != tok.data() + tok.size())
    throw std::invalid_argument(std::string("edge list: bad ") + what + " '" + tok + "'");
  return v;
}

}  // namespace

UGraph parse_edge_list(const std::string& text) {
  std::istringstream in(text);
  std::string tok;
  auto next_token = [&](const char* what) {
    if (!(in >> tok))
      throw std::invalid_argument(std::string("edge list: missing ") + what);
    return tok;
  };
  const long n = parse_int_strict(next_token("node count"), "node count");
  const long m = parse_int_strict(next_token("edge count"), "edge count");
  if (n < 1 || m < 0)
    throw std::invalid_argument("edge list: invalid header");
  std::vector<std::pair<int, int>> edges;
  std::vector<double> weights;
  edges.reserve(static_cast<size_t>(m));
  weights.reserve(static_cast<size_t>(m));
  for (long k = 0; k < m; ++k) {
    const long i = parse_int_strict(next_token("edge endpoint"), "edge endpoint");
    const long j = parse_int_strict(next_token("edge endpoint"), "edge endpoint");
    const double w = parse_double_strict(next_token("weight"), "weight");
    edges.emplace_back(static_cast<int>(i), static_cast<int>(j));
    weights.push_back(w);
  }
  if (in >> tok) throw std::invalid_argument("edge list: trailing tokens");
  return make_ugraph(static_cast<int>(n), std::move(edges), std::move(weights));
}

std::string format_edge_list(const UGraph& g) {
  std::string out;
  out.reserve(32 * (g.edges.size() + 1));
  char buf[96];
  std::snprintf(buf, sizeof buf, "%d %d\n", g.n, g.num_edges());
  out += buf;
  for (size_t k = 0; k < g.edges.size(); ++k) {
    std::snprintf(buf, sizeof buf, "%d %d %.17g\n", g.edges[k].first,
                  g.edges[k].second, g.weights[k]);
    out += buf;
  }
  return out;
}

UGraph load_edge_list(const std::string& path) {
  const std::vector<uint8_t> data = read_binary_file(path);
  return parse_edge_list(std::string(data.begin(), data.end()));
}

void save_edge_list(const std::string& path, const UGraph& g) {
  write_file_atomic(path, format_edge_list(g));
}

}  // namespace gwac
