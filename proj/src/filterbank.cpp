#include "gwac/filterbank.hpp"

#include <algorithm>
#include <bit>
#include <cmath>
#include <complex>
#include <numeric>
#include <stdexcept>

namespace gwac {

double poly_eval(const Poly& p, double x) {
  double acc = 0.0;
  for (size_t j = p.size(); j-- > 0;) acc = acc * x + p[j];
  return acc;
}

Poly poly_mul(const Poly& a, const Poly& b) {
  if (a.empty() || b.empty()) return {};
  Poly out(a.size() + b.size() - 1, 0.0);
  for (size_t i = 0; i < a.size(); ++i)
    for (size_t j = 0; j < b.size(); ++j) out[i + j] += a[i] * b[j];
  return out;
}

Poly poly_reflect(const Poly& p) {
  // Substitute lambda -> 2 - lambda via binomial expansion of (2 - x)^j.
  Poly out(p.size(), 0.0);
  Poly power{1.0};  // (2 - x)^j, starting at j = 0
  for (size_t j = 0; j < p.size(); ++j) {
    for (size_t i = 0; i < power.size(); ++i) out[i] += p[j] * power[i];
    power = poly_mul(power, Poly{2.0, -1.0});
  }
  return out;
}

namespace {

double binomial(int n, int k) {
  // Each partial product is itself a binomial coefficient, hence integral;
  // exact for every coefficient this file needs (n stays below 60).
  long double acc = 1.0L;
  for (int i = 1; i <= k; ++i) acc = acc * (n - k + i) / i;
  return static_cast<double>(std::llroundl(acc));
}

}  // namespace

Poly halfband_polynomial(int K) {
  if (K < 2 || K % 2 != 0 || K > 20)
    throw std::invalid_argument("halfband_polynomial: K must be even and in [2, 20]");
  // In x = lambda / 2 the classical maximally flat half-band kernel is
  // P(x) = (1 - x)^K sum_{m<K} C(K-1+m, m) x^m with P(x) + P(1-x) = 1.
  Poly q(K);
  for (int m = 0; m < K; ++m) q[m] = binomial(K - 1 + m, m);
  Poly onemx(K + 1);
  for (int i = 0; i <= K; ++i) onemx[i] = binomial(K, i) * ((i % 2 == 0) ? 1.0 : -1.0);
  Poly P = poly_mul(onemx, q);
  // p(lambda) = 2 P(lambda / 2).
  Poly p(P.size());
  double scale = 2.0;
  for (size_t j = 0; j < P.size(); ++j) {
    p[j] = P[j] * scale;
    scale *= 0.5;
  }
  return p;
}

double pr_residual(const Poly& h0, const Poly& g0) {
  double worst = 0.0;
  for (int i = 0; i <= 1000; ++i) {
    const double l = 2.0 * i / 1000.0;
    const double v = poly_eval(h0, l) * poly_eval(g0, l) +
                     poly_eval(h0, 2.0 - l) * poly_eval(g0, 2.0 - l) - 2.0;
    worst = std::max(worst, std::abs(v));
  }
  return worst;
}

namespace {

using Cplx = std::complex<double>;

Cplx horner_c(const Poly& p, Cplx z) {
  Cplx acc = 0.0;
  for (size_t j = p.size(); j-- > 0;) acc = acc * z + p[j];
  return acc;
}

// Roots of a real polynomial via the companion matrix, polished with a few
// Newton steps.
std::vector<Cplx> poly_roots(const Poly& p) {
  int deg = static_cast<int>(p.size()) - 1;
  while (deg > 0 && p[deg] == 0.0) --deg;
  if (deg <= 0) return {};
  if (deg == 1) return {Cplx(-p[0] / p[1], 0.0)};

  Eigen::MatrixXd companion = Eigen::MatrixXd::Zero(deg, deg);
  for (int i = 0; i < deg; ++i) companion(i, deg - 1) = -p[i] / p[deg];
  for (int i = 1; i < deg; ++i) companion(i, i - 1) = 1.0;
  Eigen::EigenSolver<Eigen::MatrixXd> solver(companion);
  if (solver.info() != Eigen::Success)
    throw std::runtime_error("poly_roots: eigensolver failed");

  Poly dp(deg);
  for (int j = 1; j <= deg; ++j) dp[j - 1] = p[j] * j;
  std::vector<Cplx> roots(deg);
  for (int i = 0; i < deg; ++i) {
    Cplx z = solver.eigenvalues()[i];
    for (int it = 0; it < 4; ++it) {
      const Cplx d = horner_c(dp, z);
      if (std::abs(d) == 0.0) break;
      z -= horner_c(p, z) / d;
    }
    roots[i] = z;
  }
  return roots;
}

Poly poly_from_scale(double s) { return Poly{s}; }

}  // namespace

BiorFilterBank design_biorthogonal(int K) {
  const Poly p = halfband_polynomial(K);

  // Factor q, the part of p left after the K zeros at lambda = 2:
  // q(lambda) = 2 sum_{m<K} C(K-1+m, m) (lambda/2)^m / 2^{K-1}, written
  // directly in lambda with exact dyadic coefficients.
  Poly q(K);
  for (int m = 0; m < K; ++m) q[m] = std::ldexp(binomial(K - 1 + m, m), -(K - 2 + m));

  const auto roots = poly_roots(q);

  const double imag_tol = 1e-7;
  std::vector<double> real_roots;
  std::vector<Cplx> pair_roots;  // one representative (Im > 0) per pair
  int negatives = 0;
  for (const Cplx& z : roots) {
    if (std::abs(z.imag()) <= imag_tol * std::max(1.0, std::abs(z))) {
      real_roots.push_back(z.real());
    } else if (z.imag() > 0.0) {
      pair_roots.push_back(z);
    } else {
      ++negatives;
    }
  }
  if (static_cast<int>(pair_roots.size()) != negatives)
    throw std::runtime_error("design_biorthogonal: complex roots do not pair up");
  std::sort(real_roots.begin(), real_roots.end());
  std::sort(pair_roots.begin(), pair_roots.end(), [](const Cplx& a, const Cplx& b) {
    return std::pair(a.real(), a.imag()) < std::pair(b.real(), b.imag());
  });

  // Alternate factors between the two lowpass filters, g0 first (the split
  // that reproduces h0 = sqrt(2)/2 (2 - lambda) at K = 2). Real roots go in
  // ascending order, then complex pairs as whole quadratic factors, sorted by
  // (Re, Im), continuing the same rotation.
  Poly h0 = poly_from_scale(1.0), g0 = poly_from_scale(1.0);
  int turn = 0;
  auto take_factor = [&](const Poly& factor) {
    Poly& target = (turn % 2 == 0) ? g0 : h0;
    target = poly_mul(target, factor);
    ++turn;
  };
  for (double r : real_roots) take_factor(Poly{-r, 1.0});
  for (const Cplx& z : pair_roots) take_factor(Poly{std::norm(z), -2.0 * z.real(), 1.0});
  const Poly at_two{2.0, -1.0};
  for (int i = 0; i < K / 2; ++i) {
    h0 = poly_mul(h0, at_two);
    g0 = poly_mul(g0, at_two);
  }

  const double sqrt2 = std::sqrt(2.0);
  const double h0_dc = poly_eval(h0, 0.0);
  const double g0_dc = poly_eval(g0, 0.0);
  if (h0_dc == 0.0 || g0_dc == 0.0)
    throw std::runtime_error("design_biorthogonal: degenerate DC response");
  for (double& c : h0) c *= sqrt2 / h0_dc;
  for (double& c : g0) c *= sqrt2 / g0_dc;

  // The factored product must reproduce the half-band polynomial; a mismatch
  // means the root finder failed.
  const Poly prod = poly_mul(h0, g0);
  double scale = 0.0;
  for (double c : p) scale = std::max(scale, std::abs(c));
  for (size_t j = 0; j < prod.size(); ++j) {
    const double ref = j < p.size() ? p[j] : 0.0;
    if (std::abs(prod[j] - ref) > 1e-8 * scale)
      throw std::runtime_error("design_biorthogonal: factorization drifted from p");
  }

  BiorFilterBank fb;
  fb.K = K;
  fb.h0 = std::move(h0);
  fb.g0 = std::move(g0);
  fb.h1 = poly_reflect(fb.g0);
  fb.g1 = poly_reflect(fb.h0);
  fb.design_orders = {K / 2, K / 2};
  fb.pr_residual = pr_residual(fb.h0, fb.g0);
  if (!(fb.pr_residual < 1e-10))
    throw std::runtime_error("design_biorthogonal: half-band identity residual too large");
  return fb;
}

BipartiteDecomposition harary_decompose(const LineGraph& lg, int m_max) {
  if (m_max < 1) throw std::invalid_argument("harary_decompose: m_max must be >= 1");
  const int n = lg.node_count;
  const SpMat& a = lg.adjacency;

  std::vector<int> degree(n, 0);
  for (int c = 0; c < n; ++c) {
    int d = 0;
    for (SpMat::InnerIterator it(a, c); it; ++it) ++d;
    degree[c] = d;
  }

  std::vector<int> order(n);
  std::iota(order.begin(), order.end(), 0);
  std::sort(order.begin(), order.end(), [&degree](int u, int v) {
    return degree[u] != degree[v] ? degree[u] > degree[v] : u < v;
  });

  BipartiteDecomposition dec;
  dec.colors.assign(n, 0);
  std::vector<int> assigned(n, 0);
  std::vector<int> mark(n + 1, -1);
  int num_colors = 0;
  for (int v : order) {
    for (SpMat::InnerIterator it(a, v); it; ++it) {
      const int u = static_cast<int>(it.row());
      if (assigned[u]) mark[dec.colors[u]] = v;
    }
    int c = 0;
    while (mark[c] == v) ++c;
    dec.colors[v] = static_cast<uint32_t>(c);
    assigned[v] = 1;
    num_colors = std::max(num_colors, c + 1);
  }
  dec.num_colors = num_colors;

  int m = 1;
  while ((1 << m) < num_colors) ++m;
  dec.levels = m;
  dec.used_levels = std::min(m, m_max);

  dec.level_edges.assign(m, {});
  for (int c = 0; c < n; ++c) {
    for (SpMat::InnerIterator it(a, c); it; ++it) {
      const int r = static_cast<int>(it.row());
      if (r >= c) continue;
      const uint32_t diff = dec.colors[r] ^ dec.colors[c];
      const int level = std::bit_width(diff) - 1;  // proper coloring: diff != 0
      dec.level_edges[level].emplace_back(r, c);
    }
  }
  return dec;
}

CsrMatrix build_level_operator(const EdgeOperator& op,
                               const BipartiteDecomposition& dec, int level) {
  const int n = static_cast<int>(dec.colors.size());
  const auto& edges = dec.level_edges.at(level);
  std::vector<std::tuple<int, int, double>> entries;
  entries.reserve(edges.size() * 2 + n);
  for (int v = 0; v < n; ++v) entries.emplace_back(v, v, 1.0);

  if (op.mode == OperatorMode::line) {
    std::vector<int> deg(n, 0);
    for (const auto& [a, b] : edges) {
      ++deg[a];
      ++deg[b];
    }
    for (const auto& [a, b] : edges) {
      const double v = -1.0 / std::sqrt(static_cast<double>(deg[a]) * deg[b]);
      entries.emplace_back(a, b, v);
      entries.emplace_back(b, a, v);
    }
  } else {
    // Look the coupling value up in the CSR row (columns are sorted).
    auto coupling_at = [&op](int r, int c) {
      const auto begin = op.coupling.indices.begin() + op.coupling.indptr[r];
      const auto end = op.coupling.indices.begin() + op.coupling.indptr[r + 1];
      const auto it = std::lower_bound(begin, end, c);
      if (it == end || *it != c)
        throw std::logic_error("build_level_operator: level edge missing from coupling");
      return op.coupling.values[it - op.coupling.indices.begin()];
    };
    // Renormalize by the level-local absolute coupling mass so each level
    // operator has spectrum in [0, 2] regardless of the global scale; only
    // the sign pattern of the couplings survives.
    std::vector<double> mass(n, 0.0);
    std::vector<std::tuple<int, int, double>> raw;
    raw.reserve(edges.size());
    for (const auto& [a, b] : edges) {
      const double v = coupling_at(a, b);
      raw.emplace_back(a, b, v);
      mass[a] += std::abs(v);
      mass[b] += std::abs(v);
    }
    for (const auto& [a, b, v] : raw) {
      const double w = v / std::sqrt(mass[a] * mass[b]);
      entries.emplace_back(a, b, w);
      entries.emplace_back(b, a, w);
    }
  }
  return CsrMatrix::from_triplets(n, std::move(entries));
}

std::vector<double> SubbandCoefficients::flatten() const {
  std::vector<double> flat;
  flat.reserve(total());
  for (const auto& ch : channels) flat.insert(flat.end(), ch.begin(), ch.end());
  return flat;
}

void SubbandCoefficients::unflatten(std::span<const double> flat) {
  size_t at = 0;
  for (auto& ch : channels) {
    if (at + ch.size() > flat.size())
      throw std::invalid_argument("SubbandCoefficients: flat vector too short");
    std::copy(flat.begin() + at, flat.begin() + at + ch.size(), ch.begin());
    at += ch.size();
  }
  if (at != flat.size())
    throw std::invalid_argument("SubbandCoefficients: flat vector length mismatch");
}

size_t SubbandCoefficients::total() const {
  size_t t = 0;
  for (const auto& ch : channels) t += ch.size();
  return t;
}

namespace {

// Channel index of a node: its color bits on the used levels.
int cell_of(uint32_t color, int used_levels) {
  return static_cast<int>(color & ((1u << used_levels) - 1u));
}

}  // namespace

SubbandCoefficients make_subband_layout(const BipartiteDecomposition& dec) {
  const int n = static_cast<int>(dec.colors.size());
  const int m = dec.used_levels;
  SubbandCoefficients out;
  out.channels.assign(1 << m, {});
  out.channel_of.resize(n);
  out.pos_of.resize(n);
  for (int v = 0; v < n; ++v) {
    const int k = cell_of(dec.colors[v], m);
    out.channel_of[v] = k;
    out.pos_of[v] = static_cast<int>(out.channels[k].size());
    out.channels[k].push_back(0.0);
  }
  return out;
}

SubbandCoefficients analyze(const EdgeOperator& op, const BipartiteDecomposition& dec,
                            const BiorFilterBank& fb, const Eigen::VectorXd& f) {
  const int n = static_cast<int>(dec.colors.size());
  if (f.size() != n) throw std::invalid_argument("analyze: signal length mismatch");
  const int m = dec.used_levels;

  std::vector<CsrMatrix> ops(m);
  for (int t = 0; t < m; ++t) ops[t] = build_level_operator(op, dec, t);

  std::vector<Eigen::VectorXd> cur{f};
  for (int t = m - 1; t >= 0; --t) {
    std::vector<Eigen::VectorXd> next(2 * cur.size(), Eigen::VectorXd(n));
    for (size_t i = 0; i < cur.size(); ++i) {
      const std::span<const double> in(cur[i].data(), static_cast<size_t>(n));
      apply_polynomial(ops[t], fb.h0, in, {next[2 * i].data(), static_cast<size_t>(n)});
      apply_polynomial(ops[t], fb.h1, in, {next[2 * i + 1].data(), static_cast<size_t>(n)});
    }
    cur = std::move(next);
  }

  SubbandCoefficients out = make_subband_layout(dec);
  for (int v = 0; v < n; ++v)
    out.channels[out.channel_of[v]][out.pos_of[v]] = cur[out.channel_of[v]][v];
  return out;
}

Eigen::VectorXd synthesize(const EdgeOperator& op, const BipartiteDecomposition& dec,
                           const BiorFilterBank& fb, const SubbandCoefficients& coefs) {
  const int n = static_cast<int>(dec.colors.size());
  const int m = dec.used_levels;
  const int num_channels = 1 << m;
  if (static_cast<int>(coefs.channels.size()) != num_channels)
    throw std::invalid_argument("synthesize: channel count mismatch");
  if (coefs.total() != static_cast<size_t>(n))
    throw std::invalid_argument("synthesize: coefficient count mismatch");

  std::vector<CsrMatrix> ops(m);
  for (int t = 0; t < m; ++t) ops[t] = build_level_operator(op, dec, t);

  // Upsample by zero insertion onto the color cells.
  std::vector<Eigen::VectorXd> cur(num_channels, Eigen::VectorXd::Zero(n));
  {
    std::vector<size_t> fill(num_channels, 0);
    for (int v = 0; v < n; ++v) {
      const int k = cell_of(dec.colors[v], m);
      if (fill[k] >= coefs.channels[k].size())
        throw std::invalid_argument("synthesize: channel size mismatch");
      cur[k][v] = coefs.channels[k][fill[k]++];
    }
  }

  Eigen::VectorXd tmp(n);
  for (int t = 0; t < m; ++t) {
    std::vector<Eigen::VectorXd> next(cur.size() / 2, Eigen::VectorXd(n));
    for (size_t i = 0; i < next.size(); ++i) {
      apply_polynomial(ops[t], fb.g0, {cur[2 * i].data(), static_cast<size_t>(n)},
                       {next[i].data(), static_cast<size_t>(n)});
      apply_polynomial(ops[t], fb.g1, {cur[2 * i + 1].data(), static_cast<size_t>(n)},
                       {tmp.data(), static_cast<size_t>(n)});
      next[i] += tmp;
    }
    cur = std::move(next);
  }
  return cur[0];
}

}  // namespace gwac
