#pragma once

#include <Eigen/Dense>

#include "gwac/graph.hpp"
#include "gwac/kernels.hpp"

namespace gwac {

// Line graph of a UGraph: one node per source edge (same index), with two
// nodes adjacent exactly when their source edges share one endpoint. Depends
// only on the binary topology, never on weights.
struct LineGraph {
  int node_count = 0;
  SpMat adjacency;                            // binary, symmetric
  std::vector<std::pair<int, int>> edge_map;  // line-graph node -> source edge
};

LineGraph line_graph(const UGraph& g);

// B^T B for the directed incidence B: diagonal 2, off-diagonal +-1 on pairs
// of edges sharing an endpoint (sign from the shared endpoint's orientation).
SpMat edge_laplacian(const UGraph& g);

// Edge weights read off in edge-index order, i.e. the signal living on the
// line-graph nodes.
Eigen::VectorXd weight_signal(const UGraph& g);

enum class OperatorMode { line, edge };

// The matrix the filter bank treats as its frequency operator. In line mode
// it is the symmetric normalized Laplacian of the line-graph adjacency
// (spectrum in [0, 2]); in edge mode the edge Laplacian rescaled by
// 2 / spectral_bound so its spectrum also fits [0, 2]. `coupling` holds the
// off-diagonal part (line mode: the bare adjacency pattern), which is what
// the per-level operators are rebuilt from.
struct EdgeOperator {
  OperatorMode mode = OperatorMode::line;
  SpMat matrix;
  double spectral_bound = 2.0;
  CsrMatrix coupling;
};

EdgeOperator build_operator(const LineGraph& lg, const UGraph& g, OperatorMode mode);

}  // namespace gwac
