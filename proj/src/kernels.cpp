#include "gwac/kernels.hpp"

#include <algorithm>
#include <cassert>
#include <stdexcept>

namespace gwac {

CsrMatrix CsrMatrix::from_triplets(int n,
                                   std::vector<std::tuple<int, int, double>> entries) {
  if (n < 0) throw std::invalid_argument("CsrMatrix: negative dimension");
  std::sort(entries.begin(), entries.end(), [](const auto& a, const auto& b) {
    return std::tie(std::get<0>(a), std::get<1>(a)) <
           std::tie(std::get<0>(b), std::get<1>(b));
  });
  CsrMatrix m;
  m.rows = n;
  m.indptr.assign(static_cast<size_t>(n) + 1, 0);
  m.indices.reserve(entries.size());
  m.values.reserve(entries.size());
  int last_r = -1, last_c = -1;
  for (const auto& [r, c, v] : entries) {
    if (r < 0 || r >= n || c < 0 || c >= n)
      throw std::invalid_argument("CsrMatrix: entry out of range");
    if (r == last_r && c == last_c) {
      // Duplicates are summed.
      m.values.back() += v;
      continue;
    }
    m.indices.push_back(c);
    m.values.push_back(v);
    m.indptr[static_cast<size_t>(r) + 1] = static_cast<int>(m.indices.size());
    last_r = r;
    last_c = c;
  }
  // Rows without entries inherit the previous offset.
  for (size_t r = 1; r < m.indptr.size(); ++r)
    m.indptr[r] = std::max(m.indptr[r], m.indptr[r - 1]);
  return m;
}

void spmv_serial(const CsrMatrix& a, std::span<const double> x, std::span<double> y) {
  assert(static_cast<int>(x.size()) == a.rows && x.size() == y.size());
  for (int r = 0; r < a.rows; ++r) {
    double acc = 0.0;
    for (int k = a.indptr[r]; k < a.indptr[r + 1]; ++k)
      acc += a.values[k] * x[a.indices[k]];
    y[r] = acc;
  }
}

void spmv(const CsrMatrix& a, std::span<const double> x, std::span<double> y) {
  assert(static_cast<int>(x.size()) == a.rows && x.size() == y.size());
#pragma omp parallel for schedule(static)
  for (int r = 0; r < a.rows; ++r) {
    double acc = 0.0;
    for (int k = a.indptr[r]; k < a.indptr[r + 1]; ++k)
      acc += a.values[k] * x[a.indices[k]];
    y[r] = acc;
  }
}

namespace {

template <void (*Spmv)(const CsrMatrix&, std::span<const double>, std::span<double>)>
void horner(const CsrMatrix& a, std::span<const double> coeffs,
            std::span<const double> x, std::span<double> y) {
  if (coeffs.empty()) throw std::invalid_argument("apply_polynomial: empty polynomial");
  const size_t n = x.size();
  const size_t d = coeffs.size() - 1;
  for (size_t i = 0; i < n; ++i) y[i] = coeffs[d] * x[i];
  if (d == 0) return;
  std::vector<double> tmp(n);
  for (size_t j = d; j-- > 0;) {
    Spmv(a, y, tmp);
    for (size_t i = 0; i < n; ++i) y[i] = tmp[i] + coeffs[j] * x[i];
  }
}

}  // namespace

void apply_polynomial(const CsrMatrix& a, std::span<const double> coeffs,
                      std::span<const double> x, std::span<double> y) {
  horner<spmv>(a, coeffs, x, y);
}

void apply_polynomial_serial(const CsrMatrix& a, std::span<const double> coeffs,
                             std::span<const double> x, std::span<double> y) {
  horner<spmv_serial>(a, coeffs, x, y);
}

}  // namespace gwac
