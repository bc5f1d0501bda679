#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include "doctest.h"

#include <Eigen/Dense>
#include <cmath>
#include <numeric>
#include <vector>

#include "gwac/codec.hpp"
#include "gwac/evalgen.hpp"
#include "gwac/filterbank.hpp"
#include "gwac/graph.hpp"
#include "gwac/line_graph.hpp"
#include "gwac/rng.hpp"

using gwac::Poly;
using gwac::UGraph;

namespace {

UGraph random_graph(int n, double p, uint64_t seed) {
  gwac::GenSpec spec;
  spec.kind = gwac::GraphKind::erdos_renyi;
  spec.n = n;
  spec.er_p = p;
  spec.seed = seed;
  return gwac::generate(spec);
}

double reconstruction_error(const UGraph& g, gwac::OperatorMode mode, int K, int m_max,
                            uint64_t signal_seed) {
  const gwac::LineGraph lg = gwac::line_graph(g);
  const gwac::EdgeOperator op = gwac::build_operator(lg, g, mode);
  const gwac::BipartiteDecomposition dec = gwac::harary_decompose(lg, m_max);
  const gwac::BiorFilterBank fb = gwac::design_biorthogonal(K);

  gwac::Rng rng(signal_seed);
  Eigen::VectorXd f(lg.node_count);
  for (int i = 0; i < lg.node_count; ++i) f[i] = rng.uniform01() * 3.0 + 0.1;

  const gwac::SubbandCoefficients coefs = gwac::analyze(op, dec, fb, f);
  REQUIRE(coefs.total() == static_cast<size_t>(lg.node_count));
  const Eigen::VectorXd rec = gwac::synthesize(op, dec, fb, coefs);
  return (rec - f).norm() / f.norm();
}

}  // namespace

TEST_CASE("half-band polynomial for K = 2 matches the closed form") {
  const Poly p = gwac::halfband_polynomial(2);
  REQUIRE(p.size() == 4);
  CHECK(p[0] == doctest::Approx(2.0).epsilon(1e-14));
  CHECK(p[1] == doctest::Approx(0.0).epsilon(1e-14));
  CHECK(p[2] == doctest::Approx(-1.5).epsilon(1e-14));
  CHECK(p[3] == doctest::Approx(0.5).epsilon(1e-14));
}

TEST_CASE("half-band identity p(l) + p(2 - l) = 2 holds across orders") {
  // Monomial evaluation of p loses digits as K grows; the factored filter
  // pair (checked through pr_residual below) is what the transform runs on.
  for (int K : {2, 4, 6, 8}) {
    const Poly p = gwac::halfband_polynomial(K);
    double worst = 0.0;
    for (int i = 0; i <= 200; ++i) {
      const double l = 2.0 * i / 200.0;
      worst = std::max(worst,
                       std::abs(gwac::poly_eval(p, l) + gwac::poly_eval(p, 2.0 - l) - 2.0));
    }
    CHECK(worst < 1e-10);
  }
  CHECK_THROWS_AS(gwac::halfband_polynomial(3), std::invalid_argument);
  CHECK_THROWS_AS(gwac::halfband_polynomial(0), std::invalid_argument);
}

TEST_CASE("poly_reflect substitutes 2 - lambda") {
  const Poly p{1.0, -2.0, 0.5};
  const Poly r = gwac::poly_reflect(p);
  for (double l : {0.0, 0.3, 1.0, 1.7, 2.0})
    CHECK(gwac::poly_eval(r, l) == doctest::Approx(gwac::poly_eval(p, 2.0 - l)));
}

TEST_CASE("K = 2 design reproduces the degree-one lowpass pair") {
  const gwac::BiorFilterBank fb = gwac::design_biorthogonal(2);
  const double s = std::sqrt(2.0);
  REQUIRE(fb.h0.size() == 2);
  REQUIRE(fb.g0.size() == 3);
  // h0 = sqrt(2)/2 (2 - l), g0 = sqrt(2)/2 (2 - l)(1 + l).
  CHECK(fb.h0[0] == doctest::Approx(s).epsilon(1e-14));
  CHECK(fb.h0[1] == doctest::Approx(-s / 2.0).epsilon(1e-14));
  CHECK(fb.g0[0] == doctest::Approx(s).epsilon(1e-14));
  CHECK(fb.g0[1] == doctest::Approx(s / 2.0).epsilon(1e-14));
  CHECK(fb.g0[2] == doctest::Approx(-s / 2.0).epsilon(1e-14));
}

TEST_CASE("designed pairs satisfy the perfect-reconstruction identity") {
  for (int K : {2, 4, 6, 8}) {
    const gwac::BiorFilterBank fb = gwac::design_biorthogonal(K);
    CHECK(fb.pr_residual < 1e-10);
    CHECK(gwac::poly_eval(fb.h0, 0.0) == doctest::Approx(std::sqrt(2.0)));
    CHECK(gwac::poly_eval(fb.g0, 0.0) == doctest::Approx(std::sqrt(2.0)));
    // Highpass filters are the reflected lowpass partners.
    for (double l : {0.1, 0.9, 1.5}) {
      CHECK(gwac::poly_eval(fb.h1, l) ==
            doctest::Approx(gwac::poly_eval(fb.g0, 2.0 - l)));
      CHECK(gwac::poly_eval(fb.g1, l) ==
            doctest::Approx(gwac::poly_eval(fb.h0, 2.0 - l)));
    }
    // Lowpass product recovers the half-band polynomial.
    const Poly p = gwac::halfband_polynomial(K);
    const Poly prod = gwac::poly_mul(fb.h0, fb.g0);
    REQUIRE(prod.size() >= p.size());
    for (size_t j = 0; j < prod.size(); ++j) {
      const double ref = j < p.size() ? p[j] : 0.0;
      CHECK(prod[j] == doctest::Approx(ref).epsilon(1e-9));
    }
  }
}

TEST_CASE("harary decomposition is a proper leveled coloring") {
  const UGraph g = random_graph(30, 0.25, 5);
  REQUIRE(g.num_edges() > 0);
  const gwac::LineGraph lg = gwac::line_graph(g);
  const gwac::BipartiteDecomposition dec = gwac::harary_decompose(lg, 2);

  CHECK(dec.used_levels == std::min(dec.levels, 2));
  CHECK((1 << dec.levels) >= dec.num_colors);
  const Eigen::MatrixXd A(lg.adjacency);
  size_t covered = 0;
  for (int t = 0; t < dec.levels; ++t) {
    for (const auto& [a, b] : dec.level_edges[t]) {
      CHECK(A(a, b) == 1.0);
      // Edges on level t differ at bit t and agree above it.
      const uint32_t diff = dec.colors[a] ^ dec.colors[b];
      CHECK((diff >> t) == 1u);
      ++covered;
    }
  }
  CHECK(covered == static_cast<size_t>(Eigen::MatrixXd(A).sum() / 2.0));
  // Adjacent nodes never share a color.
  for (int a = 0; a < lg.node_count; ++a)
    for (int b = a + 1; b < lg.node_count; ++b)
      if (A(a, b) == 1.0) CHECK(dec.colors[a] != dec.colors[b]);
}

TEST_CASE("level operators fold: J Op J = 2I - Op on their bipartition") {
  const UGraph g = random_graph(16, 0.3, 9);
  REQUIRE(g.num_edges() > 2);
  const gwac::LineGraph lg = gwac::line_graph(g);
  const gwac::BipartiteDecomposition dec = gwac::harary_decompose(lg, 3);
  for (gwac::OperatorMode mode : {gwac::OperatorMode::line, gwac::OperatorMode::edge}) {
    const gwac::EdgeOperator op = gwac::build_operator(lg, g, mode);
    for (int t = 0; t < dec.used_levels; ++t) {
      const gwac::CsrMatrix lvl = gwac::build_level_operator(op, dec, t);
      Eigen::MatrixXd M = Eigen::MatrixXd::Zero(lg.node_count, lg.node_count);
      for (int r = 0; r < lvl.rows; ++r)
        for (int k = lvl.indptr[r]; k < lvl.indptr[r + 1]; ++k)
          M(r, lvl.indices[k]) = lvl.values[k];
      Eigen::VectorXd J(lg.node_count);
      for (int v = 0; v < lg.node_count; ++v)
        J[v] = ((dec.colors[v] >> t) & 1u) ? -1.0 : 1.0;
      const Eigen::MatrixXd folded = J.asDiagonal() * M * J.asDiagonal();
      const Eigen::MatrixXd expect =
          2.0 * Eigen::MatrixXd::Identity(lg.node_count, lg.node_count) - M;
      CHECK((folded - expect).cwiseAbs().maxCoeff() < 1e-12);
    }
  }
}

TEST_CASE("analysis-synthesis is perfect reconstruction with all levels") {
  for (uint64_t seed = 0; seed < 20; ++seed) {
    const UGraph g = random_graph(8 + static_cast<int>(seed * 2), 0.3, 200 + seed);
    if (g.num_edges() < 2) continue;
    CHECK(reconstruction_error(g, gwac::OperatorMode::line, 8, 32, seed) < 1e-8);
  }
}

TEST_CASE("perfect reconstruction survives level truncation") {
  const UGraph g = random_graph(24, 0.35, 77);
  REQUIRE(g.num_edges() > 4);
  for (int m_max : {1, 2, 3}) {
    CHECK(reconstruction_error(g, gwac::OperatorMode::line, 8, m_max, 1) < 1e-8);
    CHECK(reconstruction_error(g, gwac::OperatorMode::edge, 8, m_max, 2) < 1e-8);
  }
}

TEST_CASE("perfect reconstruction holds for every even order") {
  const UGraph g = random_graph(20, 0.3, 31);
  REQUIRE(g.num_edges() > 4);
  for (int K : {2, 4, 6, 8, 12})
    CHECK(reconstruction_error(g, gwac::OperatorMode::line, K, 2, 3) < 1e-8);
}

TEST_CASE("disconnected edges and empty levels reconstruct exactly") {
  // Two disjoint edges: the line graph has no edges at all.
  const UGraph g = gwac::make_ugraph(4, {{0, 1}, {2, 3}}, {1.5, 0.25});
  CHECK(reconstruction_error(g, gwac::OperatorMode::line, 8, 2, 4) < 1e-10);
}

TEST_CASE("subband flatten and unflatten are inverse") {
  const UGraph g = random_graph(18, 0.3, 13);
  REQUIRE(g.num_edges() > 2);
  const gwac::LineGraph lg = gwac::line_graph(g);
  const gwac::EdgeOperator op = gwac::build_operator(lg, g, gwac::OperatorMode::line);
  const gwac::BipartiteDecomposition dec = gwac::harary_decompose(lg, 2);
  const gwac::BiorFilterBank fb = gwac::design_biorthogonal(4);
  const gwac::SubbandCoefficients coefs = gwac::analyze(op, dec, fb, gwac::weight_signal(g));

  const std::vector<double> flat = coefs.flatten();
  gwac::SubbandCoefficients layout = gwac::make_subband_layout(dec);
  REQUIRE(layout.total() == flat.size());
  layout.unflatten(flat);
  for (size_t k = 0; k < coefs.channels.size(); ++k)
    CHECK(layout.channels[k] == coefs.channels[k]);
  CHECK(layout.channel_of == coefs.channel_of);
  CHECK(layout.pos_of == coefs.pos_of);

  std::vector<double> bad(flat.size() + 1, 0.0);
  CHECK_THROWS_AS(layout.unflatten(bad), std::invalid_argument);
}

TEST_CASE("transform compacts smooth-weight energy better than random keeps") {
  // Community weights vary smoothly along the topology, so the largest
  // transform coefficients should beat a random coefficient subset of the
  // same size by a wide margin.
  gwac::GenSpec spec;
  spec.kind = gwac::GraphKind::community;
  spec.n = 120;
  spec.seed = 21;
  const UGraph g = gwac::generate(spec);
  const gwac::LineGraph lg = gwac::line_graph(g);
  const gwac::EdgeOperator op = gwac::build_operator(lg, g, gwac::OperatorMode::line);
  const gwac::BipartiteDecomposition dec = gwac::harary_decompose(lg, 2);
  const gwac::BiorFilterBank fb = gwac::design_biorthogonal(8);
  const Eigen::VectorXd f = gwac::weight_signal(g);
  const gwac::SubbandCoefficients coefs = gwac::analyze(op, dec, fb, f);
  const std::vector<double> flat = coefs.flatten();

  auto error_with = [&](const std::vector<double>& kept) {
    gwac::SubbandCoefficients c = gwac::make_subband_layout(dec);
    c.unflatten(kept);
    return (gwac::synthesize(op, dec, fb, c) - f).norm();
  };

  const gwac::NlaResult nla = gwac::nla_threshold(flat, 0.25);
  const double err_top = error_with(nla.coefficients);

  gwac::Rng rng(99);
  const size_t keep = static_cast<size_t>(
      std::count(nla.bitmap.begin(), nla.bitmap.end(), uint8_t{1}));
  double err_random = 0.0;
  const auto picks = rng.sample_without_replacement(static_cast<int>(flat.size()),
                                                    static_cast<int>(keep));
  std::vector<double> random_kept(flat.size(), 0.0);
  for (int i : picks) random_kept[i] = flat[i];
  err_random = error_with(random_kept);

  CHECK(err_top < 0.7 * err_random);
}
