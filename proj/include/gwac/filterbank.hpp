#pragma once

#include <Eigen/Dense>
#include <cstdint>
#include <vector>

#include "gwac/kernels.hpp"
#include "gwac/line_graph.hpp"

namespace gwac {

// Polynomials are coefficient vectors in ascending powers of lambda.
using Poly = std::vector<double>;

double poly_eval(const Poly& p, double x);
Poly poly_mul(const Poly& a, const Poly& b);
Poly poly_reflect(const Poly& p);  // p(2 - lambda)

// Maximally flat half-band polynomial of even order K on [0, 2]:
// p(lambda) = (2 - lambda)^K q(lambda) with deg q = K - 1 and
// p(lambda) + p(2 - lambda) = 2. Coefficients are exact dyadic rationals.
Poly halfband_polynomial(int K);

// Two-channel biorthogonal filter pair obtained by factoring the half-band
// polynomial: the K zeros at lambda = 2 split evenly between h0 and g0, the
// remaining roots of q alternate between g0 and h0 in ascending order
// (starting with g0; complex-conjugate pairs travel together as real
// quadratic factors), and both lowpass filters are scaled to sqrt(2) at
// lambda = 0. The highpass pair is h1(lambda) = g0(2 - lambda),
// g1(lambda) = h0(2 - lambda), which makes
// h0(l) g0(l) + h0(2-l) g0(2-l) = 2 the whole perfect-reconstruction story.
struct BiorFilterBank {
  int K = 0;
  Poly h0, h1, g0, g1;
  std::pair<int, int> design_orders;  // zeros at lambda = 2 on (analysis, synthesis)
  double pr_residual = 0.0;           // max grid deviation from the half-band identity
};

BiorFilterBank design_biorthogonal(int K);

// Residual of the half-band identity for an (h0, g0) pair over a uniform
// 1001-point grid on [0, 2].
double pr_residual(const Poly& h0, const Poly& g0);

// Harary-style decomposition of a graph into bipartite edge subsets: a greedy
// proper coloring (descending degree, ties by index, smallest available
// color) assigns every node an m-bit color, and each edge goes to the level
// of the most significant bit where its endpoint colors differ. Levels at
// m_max and above are dropped from the filtering operators; their edges stay
// in the graph.
struct BipartiteDecomposition {
  int levels = 0;       // total m from the coloring, >= 1
  int used_levels = 0;  // min(levels, m_max)
  int num_colors = 0;
  std::vector<uint32_t> colors;
  std::vector<std::vector<std::pair<int, int>>> level_edges;  // all `levels` entries
};

BipartiteDecomposition harary_decompose(const LineGraph& lg, int m_max);

// Critically sampled transform output: channel k = (b_{m-1} ... b_0) holds
// the nodes whose color bits equal k on the used levels, ascending node
// order. channel_of/pos_of give each node's (channel, slot).
struct SubbandCoefficients {
  std::vector<std::vector<double>> channels;
  std::vector<int> channel_of;
  std::vector<int> pos_of;

  std::vector<double> flatten() const;  // channels concatenated in order
  void unflatten(std::span<const double> flat);
  size_t total() const;
};

// Zero-filled coefficient structure with the channel shapes implied by the
// decomposition; analyze produces the same layout.
SubbandCoefficients make_subband_layout(const BipartiteDecomposition& dec);

// Per-level filtering operator: identity diagonal plus the coupling entries
// restricted to that level's edges. Line mode renormalizes by the level-local
// degrees (a bipartite normalized Laplacian); edge mode renormalizes the
// edge-Laplacian couplings by the level-local coupling mass, keeping their
// signs. The unit diagonal is what makes the spectral folding identity
// J Op J = 2I - Op hold per level.
CsrMatrix build_level_operator(const EdgeOperator& op,
                               const BipartiteDecomposition& dec, int level);

// Analysis cascade. Levels are applied from the highest used level down to
// level 0; with the most-significant-differing-bit edge assignment this
// ordering is exactly what makes the multi-level telescope collapse to the
// identity. Downsampling happens once at the end, onto the color cells.
SubbandCoefficients analyze(const EdgeOperator& op, const BipartiteDecomposition& dec,
                            const BiorFilterBank& fb, const Eigen::VectorXd& f);

// Inverse cascade: upsample the channels onto their cells by zero insertion,
// then merge channel pairs with g0/g1 from level 0 up.
Eigen::VectorXd synthesize(const EdgeOperator& op, const BipartiteDecomposition& dec,
                           const BiorFilterBank& fb, const SubbandCoefficients& coefs);

}  // namespace gwac
