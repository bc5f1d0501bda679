#pragma once

#include <span>
#include <tuple>
#include <vector>

namespace gwac {

// Compressed sparse row matrix used for the operators the transforms apply
// repeatedly. Symmetric matrices store both triangles; rows keep their
// column indices sorted so traversal order (and therefore floating-point
// summation order) is fixed.
struct CsrMatrix {
  int rows = 0;
  std::vector<int> indptr;  // size rows + 1
  std::vector<int> indices;
  std::vector<double> values;

  static CsrMatrix from_triplets(int n,
                                 std::vector<std::tuple<int, int, double>> entries);

  int nnz() const { return static_cast<int>(indices.size()); }
};

// y = a * x. Parallelized over rows with OpenMP; each output element is
// accumulated by exactly one thread in index order, so the result is
// bit-identical to spmv_serial for any thread count.
void spmv(const CsrMatrix& a, std::span<const double> x, std::span<double> y);

// Serial reference for spmv, kept for tests and benchmarks.
void spmv_serial(const CsrMatrix& a, std::span<const double> x, std::span<double> y);

// y = p(a) * x for the polynomial with ascending coefficients `coeffs`,
// evaluated by Horner's rule (degree-d evaluation costs d products with a).
void apply_polynomial(const CsrMatrix& a, std::span<const double> coeffs,
                      std::span<const double> x, std::span<double> y);
void apply_polynomial_serial(const CsrMatrix& a, std::span<const double> coeffs,
                             std::span<const double> x, std::span<double> y);

}  // namespace gwac
