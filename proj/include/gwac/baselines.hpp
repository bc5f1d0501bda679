#pragma once

#include <Eigen/Dense>
#include <cstdint>

#include "gwac/codec.hpp"
#include "gwac/graph.hpp"

namespace gwac {

enum class BaselineMethod { direct_gfb, direct_lra, direct_dct, binary };

// A baseline run: the (symmetrized) reconstructed weighted adjacency matrix
// and the coded size. Baselines code the whole matrix rather than splitting
// topology and weights; `binary` codes the topology only.
struct BaselineResult {
  BaselineMethod method;
  Eigen::MatrixXd reconstructed;
  size_t bytes = 0;
  double operating_point = 0.0;  // rho, or the rank for direct_lra
};

// Orthonormal DCT-II matrix; C * x transforms, C^T * y inverts.
Eigen::MatrixXd dct_matrix(int n);

// Rank-r truncation of W without quantization (dense SVD).
Eigen::MatrixXd truncated_svd_reconstruct(const Eigen::MatrixXd& W, int r);

// Column-wise DCT of W, global NLA keeping ceil(rho * N^2) coefficients,
// shared quantizer + entropy coder, inverse DCT, symmetrized.
BaselineResult direct_dct(const Eigen::MatrixXd& W, double rho, double step = 0.01);

// Rank-r SVD truncation; U_r, sigma_r, V_r quantized and entropy-coded as one
// stream, reconstruction from the dequantized factors, symmetrized.
BaselineResult direct_lra(const Eigen::MatrixXd& W, int r, double step = 0.01);

// Columns of W filtered as node-domain signals on the binary topology of g,
// using the same filter bank, with a global NLA over all N^2 coefficients.
BaselineResult direct_gfb(const Eigen::MatrixXd& W, const UGraph& g, double rho,
                          double step = 0.01, int filter_order = 8, int m_max = 2);

// Topology only: the reconstruction is the binary adjacency matrix.
BaselineResult binary_baseline(const UGraph& g);

}  // namespace gwac
