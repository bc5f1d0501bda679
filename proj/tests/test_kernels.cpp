#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include "doctest.h"

#include <cmath>
#include <tuple>
#include <vector>

#include "gwac/kernels.hpp"
#include "gwac/rng.hpp"

using gwac::CsrMatrix;

namespace {

CsrMatrix random_symmetric(int n, double density, uint64_t seed) {
  gwac::Rng rng(seed);
  std::vector<std::tuple<int, int, double>> entries;
  for (int i = 0; i < n; ++i) {
    for (int j = i; j < n; ++j) {
      if (rng.uniform01() >= density) continue;
      const double v = rng.uniform01() * 2.0 - 1.0;
      entries.emplace_back(i, j, v);
      if (i != j) entries.emplace_back(j, i, v);
    }
  }
  return CsrMatrix::from_triplets(n, std::move(entries));
}

std::vector<double> random_vector(int n, uint64_t seed) {
  gwac::Rng rng(seed);
  std::vector<double> x(n);
  for (double& v : x) v = rng.uniform01() * 4.0 - 2.0;
  return x;
}

}  // namespace

TEST_CASE("from_triplets sorts rows and sums duplicates") {
  CsrMatrix m = CsrMatrix::from_triplets(
      3, {{2, 0, 1.0}, {0, 1, 2.0}, {0, 1, 3.0}, {1, 2, -1.0}});
  CHECK(m.rows == 3);
  CHECK(m.indptr == std::vector<int>{0, 1, 2, 3});
  CHECK(m.indices == std::vector<int>{1, 2, 0});
  CHECK(m.values == std::vector<double>{5.0, -1.0, 1.0});
}

TEST_CASE("from_triplets keeps empty rows consistent") {
  CsrMatrix m = CsrMatrix::from_triplets(4, {{3, 3, 2.0}});
  CHECK(m.indptr == std::vector<int>{0, 0, 0, 0, 1});
  CHECK(m.nnz() == 1);
}

TEST_CASE("from_triplets rejects out-of-range entries") {
  CHECK_THROWS_AS(CsrMatrix::from_triplets(2, {{0, 2, 1.0}}), std::invalid_argument);
  CHECK_THROWS_AS(CsrMatrix::from_triplets(-1, {}), std::invalid_argument);
}

TEST_CASE("spmv matches the serial kernel bit for bit") {
  for (uint64_t seed : {1ull, 2ull, 3ull}) {
    const CsrMatrix m = random_symmetric(97, 0.15, seed);
    const std::vector<double> x = random_vector(97, seed + 100);
    std::vector<double> y_par(97), y_ser(97);
    gwac::spmv(m, x, y_par);
    gwac::spmv_serial(m, x, y_ser);
    CHECK(y_par == y_ser);
  }
}

TEST_CASE("spmv computes the expected product") {
  // [[1, 2], [0, 3]] applied to [1, 1].
  const CsrMatrix m = CsrMatrix::from_triplets(2, {{0, 0, 1.0}, {0, 1, 2.0}, {1, 1, 3.0}});
  std::vector<double> y(2);
  gwac::spmv(m, std::vector<double>{1.0, 1.0}, y);
  CHECK(y == std::vector<double>{3.0, 3.0});
}

TEST_CASE("apply_polynomial equals explicit Horner recursion") {
  const CsrMatrix m = random_symmetric(40, 0.2, 11);
  const std::vector<double> x = random_vector(40, 12);
  const std::vector<double> coeffs{0.5, -1.0, 0.25, 2.0};

  // p(A) x = c0 x + c1 A x + c2 A^2 x + c3 A^3 x, built with repeated spmv.
  std::vector<double> power = x, tmp(40), expect(40);
  for (int i = 0; i < 40; ++i) expect[i] = coeffs[0] * x[i];
  for (size_t j = 1; j < coeffs.size(); ++j) {
    gwac::spmv_serial(m, power, tmp);
    power = tmp;
    for (int i = 0; i < 40; ++i) expect[i] += coeffs[j] * power[i];
  }

  std::vector<double> y(40);
  gwac::apply_polynomial(m, coeffs, x, y);
  for (int i = 0; i < 40; ++i) CHECK(y[i] == doctest::Approx(expect[i]).epsilon(1e-12));

  std::vector<double> y_ser(40);
  gwac::apply_polynomial_serial(m, coeffs, x, y_ser);
  CHECK(y == y_ser);
}

TEST_CASE("apply_polynomial handles constants and rejects empty polynomials") {
  const CsrMatrix m = random_symmetric(5, 0.5, 3);
  const std::vector<double> x{1, 2, 3, 4, 5};
  std::vector<double> y(5);
  gwac::apply_polynomial(m, std::vector<double>{2.0}, x, y);
  CHECK(y == std::vector<double>{2, 4, 6, 8, 10});
  CHECK_THROWS_AS(gwac::apply_polynomial(m, std::vector<double>{}, x, y),
                  std::invalid_argument);
}
