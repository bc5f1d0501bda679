#include "gwac/baselines.hpp"

#include <Eigen/SVD>
#include <cmath>
#include <numbers>
#include <stdexcept>

#include "gwac/filterbank.hpp"
#include "gwac/line_graph.hpp"

namespace gwac {

namespace {

void check_square_symmetric(const Eigen::MatrixXd& W, const char* who) {
  if (W.rows() != W.cols())
    throw std::invalid_argument(std::string(who) + ": matrix must be square");
  const double scale = std::max(1.0, W.cwiseAbs().maxCoeff());
  if ((W - W.transpose()).cwiseAbs().maxCoeff() > 1e-9 * scale)
    throw std::invalid_argument(std::string(who) + ": matrix must be symmetric");
}

Eigen::MatrixXd symmetrized(const Eigen::MatrixXd& M) {
  return 0.5 * (M + M.transpose());
}

}  // namespace

Eigen::MatrixXd dct_matrix(int n) {
  if (n <= 0) throw std::invalid_argument("dct_matrix: n must be positive");
  Eigen::MatrixXd C(n, n);
  const double base = std::sqrt(2.0 / n);
  for (int k = 0; k < n; ++k) {
    const double s = (k == 0) ? std::sqrt(1.0 / n) : base;
    for (int i = 0; i < n; ++i)
      C(k, i) = s * std::cos(std::numbers::pi * (i + 0.5) * k / n);
  }
  return C;
}

Eigen::MatrixXd truncated_svd_reconstruct(const Eigen::MatrixXd& W, int r) {
  if (r < 1 || r > std::min(W.rows(), W.cols()))
    throw std::invalid_argument("truncated_svd_reconstruct: rank out of range");
  Eigen::BDCSVD<Eigen::MatrixXd> svd(W, Eigen::ComputeThinU | Eigen::ComputeThinV);
  if (svd.info() != Eigen::Success)
    throw std::runtime_error("truncated_svd_reconstruct: SVD failed");
  return svd.matrixU().leftCols(r) * svd.singularValues().head(r).asDiagonal() *
         svd.matrixV().leftCols(r).transpose();
}

BaselineResult direct_dct(const Eigen::MatrixXd& W, double rho, double step) {
  check_square_symmetric(W, "direct_dct");
  const int n = static_cast<int>(W.rows());
  const Eigen::MatrixXd C = dct_matrix(n);
  const Eigen::MatrixXd coeffs = C * W;

  const std::vector<uint8_t> coded = encode_coefficients(
      {coeffs.data(), static_cast<size_t>(coeffs.size())}, rho, step);
  const std::vector<double> decoded =
      decode_coefficients(coded, static_cast<size_t>(n) * n, step);
  const Eigen::Map<const Eigen::MatrixXd> rec(decoded.data(), n, n);

  BaselineResult res;
  res.method = BaselineMethod::direct_dct;
  res.reconstructed = symmetrized(C.transpose() * rec);
  res.bytes = coded.size();
  res.operating_point = rho;
  return res;
}

BaselineResult direct_lra(const Eigen::MatrixXd& W, int r, double step) {
  check_square_symmetric(W, "direct_lra");
  const int n = static_cast<int>(W.rows());
  if (r < 1 || r > n) throw std::invalid_argument("direct_lra: rank out of range");
  Eigen::BDCSVD<Eigen::MatrixXd> svd(W, Eigen::ComputeThinU | Eigen::ComputeThinV);
  if (svd.info() != Eigen::Success) throw std::runtime_error("direct_lra: SVD failed");

  // Factors travel as one flat stream: U_r, sigma_r, V_r in column-major
  // order; every entry is kept, the coder only quantizes.
  std::vector<double> flat;
  flat.reserve(static_cast<size_t>(n) * r * 2 + r);
  const Eigen::MatrixXd U = svd.matrixU().leftCols(r);
  const Eigen::MatrixXd V = svd.matrixV().leftCols(r);
  const Eigen::VectorXd s = svd.singularValues().head(r);
  flat.insert(flat.end(), U.data(), U.data() + U.size());
  flat.insert(flat.end(), s.data(), s.data() + s.size());
  flat.insert(flat.end(), V.data(), V.data() + V.size());

  const std::vector<uint8_t> coded = encode_coefficients(flat, 1.0, step);
  const std::vector<double> decoded = decode_coefficients(coded, flat.size(), step);
  const Eigen::Map<const Eigen::MatrixXd> Uq(decoded.data(), n, r);
  const Eigen::Map<const Eigen::VectorXd> sq(decoded.data() + static_cast<size_t>(n) * r, r);
  const Eigen::Map<const Eigen::MatrixXd> Vq(
      decoded.data() + static_cast<size_t>(n) * r + r, n, r);

  BaselineResult res;
  res.method = BaselineMethod::direct_lra;
  res.reconstructed = symmetrized(Uq * sq.asDiagonal() * Vq.transpose());
  res.bytes = coded.size();
  res.operating_point = static_cast<double>(r);
  return res;
}

BaselineResult direct_gfb(const Eigen::MatrixXd& W, const UGraph& g, double rho,
                          double step, int filter_order, int m_max) {
  check_square_symmetric(W, "direct_gfb");
  const int n = static_cast<int>(W.rows());
  if (g.n != n) throw std::invalid_argument("direct_gfb: graph size mismatch");

  // The node-domain transform reuses the line-graph machinery verbatim: the
  // original graph's binary adjacency plays the role of the coefficient graph.
  LineGraph nodes;
  nodes.node_count = n;
  nodes.adjacency = binary_adjacency(g);
  const EdgeOperator op = build_operator(nodes, g, OperatorMode::line);
  const BipartiteDecomposition dec = harary_decompose(nodes, m_max);
  const BiorFilterBank fb = design_biorthogonal(filter_order);

  std::vector<double> flat;
  flat.reserve(static_cast<size_t>(n) * n);
  for (int c = 0; c < n; ++c) {
    const SubbandCoefficients coefs = analyze(op, dec, fb, W.col(c));
    const std::vector<double> col = coefs.flatten();
    flat.insert(flat.end(), col.begin(), col.end());
  }

  const std::vector<uint8_t> coded = encode_coefficients(flat, rho, step);
  const std::vector<double> decoded = decode_coefficients(coded, flat.size(), step);

  Eigen::MatrixXd rec(n, n);
  SubbandCoefficients coefs = make_subband_layout(dec);
  for (int c = 0; c < n; ++c) {
    coefs.unflatten({decoded.data() + static_cast<size_t>(c) * n, static_cast<size_t>(n)});
    rec.col(c) = synthesize(op, dec, fb, coefs);
  }

  BaselineResult res;
  res.method = BaselineMethod::direct_gfb;
  res.reconstructed = symmetrized(rec);
  res.bytes = coded.size();
  res.operating_point = rho;
  return res;
}

BaselineResult binary_baseline(const UGraph& g) {
  BaselineResult res;
  res.method = BaselineMethod::binary;
  res.reconstructed = Eigen::MatrixXd(binary_adjacency(g));
  res.bytes = encode_topology(g.edges, g.n).size();
  res.operating_point = 0.0;
  return res;
}

}  // namespace gwac
