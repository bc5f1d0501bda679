#include "gwac/line_graph.hpp"

#include <stdexcept>
#include <tuple>

namespace gwac {

namespace {

// For each node of g, the indices of its incident edges, ascending.
std::vector<std::vector<int>> incident_edges(const UGraph& g) {
  std::vector<std::vector<int>> inc(g.n);
  for (int a = 0; a < g.num_edges(); ++a) {
    inc[g.edges[a].first].push_back(a);
    inc[g.edges[a].second].push_back(a);
  }
  return inc;
}

}  // namespace

LineGraph line_graph(const UGraph& g) {
  if (g.num_edges() == 0)
    throw std::invalid_argument("line_graph: graph has no edges");
  const auto inc = incident_edges(g);
  std::vector<Eigen::Triplet<double>> trips;
  for (int v = 0; v < g.n; ++v) {
    const auto& es = inc[v];
    for (size_t a = 0; a < es.size(); ++a) {
      for (size_t b = a + 1; b < es.size(); ++b) {
        trips.emplace_back(es[a], es[b], 1.0);
        trips.emplace_back(es[b], es[a], 1.0);
      }
    }
  }
  LineGraph lg;
  lg.node_count = g.num_edges();
  lg.adjacency = SpMat(lg.node_count, lg.node_count);
  // Two simple edges share at most one endpoint, so no duplicates arise.
  lg.adjacency.setFromTriplets(trips.begin(), trips.end());
  lg.edge_map = g.edges;
  return lg;
}

SpMat edge_laplacian(const UGraph& g) {
  const int m = g.num_edges();
  const auto inc = incident_edges(g);
  std::vector<Eigen::Triplet<double>> trips;
  for (int a = 0; a < m; ++a) trips.emplace_back(a, a, 2.0);
  for (int v = 0; v < g.n; ++v) {
    const auto& es = inc[v];
    for (size_t a = 0; a < es.size(); ++a) {
      for (size_t b = a + 1; b < es.size(); ++b) {
        // Orientation gives +1 at the smaller endpoint, -1 at the larger, so
        // the product of the two incidence entries at the shared node v.
        const double sa = (g.edges[es[a]].first == v) ? 1.0 : -1.0;
        const double sb = (g.edges[es[b]].first == v) ? 1.0 : -1.0;
        trips.emplace_back(es[a], es[b], sa * sb);
        trips.emplace_back(es[b], es[a], sa * sb);
      }
    }
  }
  SpMat le(m, m);
  le.setFromTriplets(trips.begin(), trips.end());
  return le;
}

Eigen::VectorXd weight_signal(const UGraph& g) {
  Eigen::VectorXd f(g.num_edges());
  for (int a = 0; a < g.num_edges(); ++a) f[a] = g.weights[a];
  return f;
}

namespace {

CsrMatrix offdiagonal_csr(const SpMat& m) {
  std::vector<std::tuple<int, int, double>> entries;
  entries.reserve(m.nonZeros());
  for (int c = 0; c < m.outerSize(); ++c) {
    for (SpMat::InnerIterator it(m, c); it; ++it) {
      if (it.row() != it.col())
        entries.emplace_back(static_cast<int>(it.row()), static_cast<int>(it.col()),
                             it.value());
    }
  }
  return CsrMatrix::from_triplets(static_cast<int>(m.rows()), std::move(entries));
}

}  // namespace

EdgeOperator build_operator(const LineGraph& lg, const UGraph& g, OperatorMode mode) {
  EdgeOperator op;
  op.mode = mode;
  if (mode == OperatorMode::line) {
    op.matrix = sym_normalized_laplacian(lg.adjacency);
    op.spectral_bound = 2.0;
    op.coupling = offdiagonal_csr(lg.adjacency);
  } else {
    const SpMat le = edge_laplacian(g);
    op.spectral_bound = lambda_max_estimate(le);  // estimation failure propagates
    op.matrix = (2.0 / op.spectral_bound) * le;
    op.coupling = offdiagonal_csr(op.matrix);
  }
  return op;
}

}  // namespace gwac
