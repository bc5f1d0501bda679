#pragma once

#include <Eigen/Dense>
#include <Eigen/Sparse>
#include <string>
#include <utility>
#include <vector>

namespace gwac {

using SpMat = Eigen::SparseMatrix<double>;

// Undirected weighted graph. Edges are stored sorted lexicographically with
// i < j, and the position of an edge in the list is its edge index: incidence
// columns, line-graph nodes and subband coefficients all refer back to it.
// Weights are strictly positive.
struct UGraph {
  int n = 0;
  std::vector<std::pair<int, int>> edges;
  std::vector<double> weights;

  int num_edges() const { return static_cast<int>(edges.size()); }
};

struct EigenPair {
  Eigen::VectorXd values;   // ascending
  Eigen::MatrixXd vectors;  // column k pairs with values[k]
};

// Canonicalizes (sorts endpoints per edge is the caller's job: pairs must
// have i < j) and validates. Throws std::invalid_argument on self-loops,
// duplicate edges, indices out of range, non-positive weights or a
// weight/edge count mismatch.
UGraph make_ugraph(int n, std::vector<std::pair<int, int>> edges,
                   std::vector<double> weights);

SpMat weighted_adjacency(const UGraph& g);
SpMat binary_adjacency(const UGraph& g);
SpMat laplacian(const UGraph& g);  // D - W

// I - D^{-1/2} A D^{-1/2} with identity rows for isolated nodes. Throws on
// negative adjacency entries.
SpMat sym_normalized_laplacian(const SpMat& adjacency);

// Directed and undirected incidence matrices (n x m). Column alpha of the
// directed B carries +1 at the smaller endpoint and -1 at the larger one;
// B_undirected takes absolute values.
struct Incidence {
  SpMat directed;
  SpMat undirected;
};
Incidence incidence(const UGraph& g);

// Dense symmetric eigendecomposition, eigenvalues ascending. Throws if the
// input is not symmetric to within a small tolerance.
EigenPair eigendecomposition(const Eigen::MatrixXd& m);

// Largest eigenvalue of a symmetric PSD matrix by power iteration, returned
// with a fixed 1.01 safety inflation so the result never falls below the
// true value. Throws std::runtime_error when the iteration cap is reached
// without convergence.
double lambda_max_estimate(const SpMat& m, double tol = 1e-6);

// Edge-list text format: first line "n m", then one "i j w" line per edge
// (0-based, i < j, decimal weight). Readers sort lines into canonical order
// and reject anything violating the UGraph invariants.
UGraph parse_edge_list(const std::string& text);
std::string format_edge_list(const UGraph& g);
UGraph load_edge_list(const std::string& path);
void save_edge_list(const std::string& path, const UGraph& g);

}  // namespace gwac
