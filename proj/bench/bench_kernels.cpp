#include <benchmark/benchmark.h>

#include <vector>

#include "gwac/evalgen.hpp"
#include "gwac/filterbank.hpp"
#include "gwac/kernels.hpp"
#include "gwac/line_graph.hpp"

namespace {

struct Fixture {
  gwac::CsrMatrix mat;
  std::vector<double> x, y;
  gwac::Poly poly;

  explicit Fixture(int n) {
    gwac::GenSpec spec;
    spec.kind = gwac::GraphKind::erdos_renyi;
    spec.n = n;
    spec.er_p = 0.02;
    spec.seed = 7;
    const gwac::UGraph g = gwac::generate(spec);
    const gwac::LineGraph lg = gwac::line_graph(g);
    const gwac::EdgeOperator op = gwac::build_operator(lg, g, gwac::OperatorMode::line);

    std::vector<std::tuple<int, int, double>> entries;
    for (int c = 0; c < op.matrix.outerSize(); ++c)
      for (gwac::SpMat::InnerIterator it(op.matrix, c); it; ++it)
        entries.emplace_back(static_cast<int>(it.row()), static_cast<int>(it.col()),
                             it.value());
    mat = gwac::CsrMatrix::from_triplets(lg.node_count, std::move(entries));

    x.assign(lg.node_count, 0.0);
    for (int i = 0; i < lg.node_count; ++i) x[i] = 1.0 + 0.001 * i;
    y.assign(lg.node_count, 0.0);
    poly = gwac::design_biorthogonal(8).h0;
  }
};

void BM_SpmvSerial(benchmark::State& state) {
  Fixture f(static_cast<int>(state.range(0)));
  for (auto _ : state) {
    gwac::spmv_serial(f.mat, f.x, f.y);
    benchmark::DoNotOptimize(f.y.data());
  }
}

void BM_SpmvParallel(benchmark::State& state) {
  Fixture f(static_cast<int>(state.range(0)));
  for (auto _ : state) {
    gwac::spmv(f.mat, f.x, f.y);
    benchmark::DoNotOptimize(f.y.data());
  }
}

void BM_PolynomialSerial(benchmark::State& state) {
  Fixture f(static_cast<int>(state.range(0)));
  for (auto _ : state) {
    gwac::apply_polynomial_serial(f.mat, f.poly, f.x, f.y);
    benchmark::DoNotOptimize(f.y.data());
  }
}

void BM_PolynomialParallel(benchmark::State& state) {
  Fixture f(static_cast<int>(state.range(0)));
  for (auto _ : state) {
    gwac::apply_polynomial(f.mat, f.poly, f.x, f.y);
    benchmark::DoNotOptimize(f.y.data());
  }
}

}  // namespace

BENCHMARK(BM_SpmvSerial)->Arg(200)->Arg(500)->Arg(1000);
BENCHMARK(BM_SpmvParallel)->Arg(200)->Arg(500)->Arg(1000);
BENCHMARK(BM_PolynomialSerial)->Arg(200)->Arg(500)->Arg(1000);
BENCHMARK(BM_PolynomialParallel)->Arg(200)->Arg(500)->Arg(1000);

BENCHMARK_MAIN();
