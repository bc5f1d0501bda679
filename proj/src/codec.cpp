#include "gwac/codec.hpp"

#include <algorithm>
#include <array>
#include <cmath>
#include <cstring>
#include <numeric>
#include <stdexcept>

#include "gwac/bitio.hpp"
#include "gwac/huffman.hpp"

namespace gwac {

namespace {

constexpr size_t kHeaderBytes = 31;  // magic + version + flags + n + m + step + rho + K

void append_u32le(std::vector<uint8_t>& out, uint32_t v) {
  for (int i = 0; i < 4; ++i) out.push_back(static_cast<uint8_t>(v >> (8 * i)));
}

void append_f64le(std::vector<uint8_t>& out, double d) {
  uint64_t bits;
  std::memcpy(&bits, &d, sizeof(bits));
  for (int i = 0; i < 8; ++i) out.push_back(static_cast<uint8_t>(bits >> (8 * i)));
}

uint32_t read_u32le(std::span<const uint8_t> bytes, size_t& at, const std::string& section) {
  if (at + 4 > bytes.size()) throw DecodeError(section, "truncated integer field");
  uint32_t v = 0;
  for (int i = 0; i < 4; ++i) v |= static_cast<uint32_t>(bytes[at + i]) << (8 * i);
  at += 4;
  return v;
}

double read_f64le(std::span<const uint8_t> bytes, size_t& at, const std::string& section) {
  if (at + 8 > bytes.size()) throw DecodeError(section, "truncated float field");
  uint64_t bits = 0;
  for (int i = 0; i < 8; ++i) bits |= static_cast<uint64_t>(bytes[at + i]) << (8 * i);
  at += 8;
  double d;
  std::memcpy(&d, &bits, sizeof(d));
  return d;
}

uint64_t flat_edge_index(int i, int j, int n) {
  // Row-major upper triangle without the diagonal.
  return static_cast<uint64_t>(i) * n - static_cast<uint64_t>(i) * (i + 1) / 2 +
         static_cast<uint64_t>(j - i - 1);
}

// Huffman-compress a byte stream; emits the 128-byte length table, the
// payload byte count, then the packed payload.
void append_huffman_block(std::vector<uint8_t>& out, const std::vector<uint8_t>& syms) {
  std::array<uint64_t, 256> counts{};
  for (uint8_t s : syms) ++counts[s];
  const HuffmanCode code = HuffmanCode::from_counts(counts);
  code.serialize_table(out);
  BitWriter w;
  for (uint8_t s : syms) code.encode_symbol(s, w);
  const std::vector<uint8_t> payload = w.finish();
  append_u32le(out, static_cast<uint32_t>(payload.size()));
  out.insert(out.end(), payload.begin(), payload.end());
}

struct HuffmanBlock {
  HuffmanCode code;
  std::span<const uint8_t> payload;
};

HuffmanBlock read_huffman_block(std::span<const uint8_t> bytes, size_t& at,
                                const std::string& section) {
  if (at + HuffmanCode::kTableBytes > bytes.size())
    throw DecodeError(section, "truncated Huffman table");
  HuffmanBlock block;
  block.code = HuffmanCode::from_table(bytes.subspan(at, HuffmanCode::kTableBytes), section);
  at += HuffmanCode::kTableBytes;
  const uint32_t len = read_u32le(bytes, at, section);
  if (at + len > bytes.size()) throw DecodeError(section, "truncated Huffman payload");
  block.payload = bytes.subspan(at, len);
  at += len;
  return block;
}

// A payload must end exactly where its last symbol does, modulo the zero
// padding that fills the final byte.
void expect_drained(BitReader& r, const std::string& section) {
  if (r.bits_left() >= 8) throw DecodeError(section, "unconsumed payload bytes");
  while (r.bits_left() > 0)
    if (r.read_bit() != 0) throw DecodeError(section, "nonzero padding bits");
}

// Varint whose bytes arrive through a Huffman decoder.
uint64_t read_coded_varint(const HuffmanCode& code, BitReader& r, const std::string& section) {
  uint64_t v = 0;
  int shift = 0;
  for (;;) {
    const uint8_t b = code.decode_symbol(r, section);
    const uint64_t group = b & 0x7f;
    if (shift == 63 && group > 1) throw DecodeError(section, "varint overflows 64 bits");
    v |= group << shift;
    if ((b & 0x80) == 0) return v;
    shift += 7;
    if (shift > 63) throw DecodeError(section, "varint overflows 64 bits");
  }
}

}  // namespace

void validate_config(const CodecConfig& cfg) {
  if (!(cfg.quant_step > 0.0) || !std::isfinite(cfg.quant_step))
    throw std::invalid_argument("codec config: quant_step must be positive and finite");
  if (!(cfg.rho > 0.0) || cfg.rho > 1.0)
    throw std::invalid_argument("codec config: rho must be in (0, 1]");
  if (cfg.filter_order < 2 || cfg.filter_order > 20 || cfg.filter_order % 2 != 0)
    throw std::invalid_argument("codec config: filter order must be even and in [2, 20]");
  if (cfg.m_max < 1 || cfg.m_max > 3)
    throw std::invalid_argument("codec config: m_max must be in [1, 3]");
  if (cfg.mode != OperatorMode::line && cfg.mode != OperatorMode::edge)
    throw std::invalid_argument("codec config: unknown operator mode");
  if (cfg.version != 1) throw std::invalid_argument("codec config: unsupported version");
}

std::vector<uint8_t> encode_topology(const std::vector<std::pair<int, int>>& edges, int n) {
  std::vector<uint8_t> varints;
  uint64_t prev = 0;
  bool first = true;
  for (const auto& [i, j] : edges) {
    if (i < 0 || j <= i || j >= n)
      throw std::invalid_argument("encode_topology: edge endpoints out of range");
    const uint64_t t = flat_edge_index(i, j, n);
    if (!first && t <= prev)
      throw std::invalid_argument("encode_topology: edges must be sorted and distinct");
    varint_append(varints, first ? t : t - prev);
    prev = t;
    first = false;
  }
  // Terminating zero gap: a zero is illegal between edges, so the decoder
  // can use it to cross-check the edge count from the container header.
  varint_append(varints, 0);
  std::vector<uint8_t> out;
  append_huffman_block(out, varints);
  return out;
}

std::vector<std::pair<int, int>> decode_topology(std::span<const uint8_t> bytes,
                                                 uint32_t n, uint32_t m) {
  const std::string section = "topology";
  const uint64_t capacity = static_cast<uint64_t>(n) * (n > 0 ? n - 1 : 0) / 2;
  if (m > capacity) throw DecodeError(section, "edge count exceeds graph capacity");

  size_t at = 0;
  const HuffmanBlock block = read_huffman_block(bytes, at, section);
  if (at != bytes.size()) throw DecodeError(section, "trailing bytes in section");

  std::vector<std::pair<int, int>> edges;
  edges.reserve(m);
  BitReader r(block.payload, section);
  uint64_t prev = 0;
  int i = 0;
  uint64_t row_base = 0;  // flat index of edge (i, i+1)
  for (uint32_t k = 0; k < m; ++k) {
    const uint64_t gap = read_coded_varint(block.code, r, section);
    if (k > 0 && gap == 0) throw DecodeError(section, "non-monotone edge index");
    const uint64_t base = (k == 0) ? 0 : prev;
    if (gap > capacity - 1 - base) throw DecodeError(section, "edge index out of range");
    const uint64_t t = base + gap;
    while (t >= row_base + (n - 1 - static_cast<uint64_t>(i))) {
      row_base += n - 1 - static_cast<uint64_t>(i);
      ++i;
    }
    const int j = i + 1 + static_cast<int>(t - row_base);
    edges.emplace_back(i, j);
    prev = t;
  }
  if (read_coded_varint(block.code, r, section) != 0)
    throw DecodeError(section, "edge count mismatch");
  expect_drained(r, section);
  return edges;
}

NlaResult nla_threshold(std::span<const double> coefficients, double rho) {
  if (!(rho > 0.0) || rho > 1.0)
    throw std::invalid_argument("nla_threshold: rho must be in (0, 1]");
  NlaResult res;
  res.coefficients.assign(coefficients.begin(), coefficients.end());
  res.bitmap.assign(coefficients.size(), 0);
  if (coefficients.empty()) return res;

  const size_t keep = std::min(
      coefficients.size(),
      static_cast<size_t>(std::ceil(rho * static_cast<double>(coefficients.size()))));
  std::vector<size_t> order(coefficients.size());
  std::iota(order.begin(), order.end(), size_t{0});
  std::sort(order.begin(), order.end(), [&coefficients](size_t a, size_t b) {
    const double ma = std::abs(coefficients[a]);
    const double mb = std::abs(coefficients[b]);
    return ma != mb ? ma > mb : a < b;
  });
  for (size_t k = 0; k < keep; ++k) res.bitmap[order[k]] = 1;
  for (size_t i = 0; i < res.coefficients.size(); ++i)
    if (!res.bitmap[i]) res.coefficients[i] = 0.0;
  return res;
}

std::vector<int32_t> quantize(std::span<const double> values, double step) {
  if (!(step > 0.0) || !std::isfinite(step))
    throw std::invalid_argument("quantize: step must be positive and finite");
  std::vector<int32_t> out;
  out.reserve(values.size());
  for (double v : values) {
    if (!std::isfinite(v)) throw std::invalid_argument("quantize: non-finite value");
    const double d = v / step;
    const double r = d >= 0.0 ? std::floor(d + 0.5) : std::ceil(d - 0.5);
    if (std::abs(r) > 2147483647.0)
      throw std::overflow_error("quantize: bin index overflows 32 bits");
    out.push_back(static_cast<int32_t>(r));
  }
  return out;
}

std::vector<double> dequantize(std::span<const int32_t> q, double step) {
  if (!(step > 0.0) || !std::isfinite(step))
    throw std::invalid_argument("dequantize: step must be positive and finite");
  std::vector<double> out;
  out.reserve(q.size());
  for (int32_t v : q) out.push_back(v * step);
  return out;
}

std::vector<uint8_t> entropy_encode(std::span<const int32_t> q,
                                    std::span<const uint8_t> bitmap) {
  if (q.size() != bitmap.size())
    throw std::invalid_argument("entropy_encode: bitmap length mismatch");

  std::vector<uint8_t> run_syms;
  std::vector<uint8_t> val_bytes;
  uint32_t n_kept = 0;
  size_t run = 0;
  for (size_t i = 0; i < q.size(); ++i) {
    if (bitmap[i]) {
      if (q[i] == 0)
        throw std::invalid_argument("entropy_encode: zero value at kept position");
      while (run >= 255) {
        run_syms.push_back(255);
        run -= 255;
      }
      run_syms.push_back(static_cast<uint8_t>(run));
      run = 0;
      varint_append(val_bytes, zigzag_encode(q[i]));
      ++n_kept;
    } else {
      if (q[i] != 0)
        throw std::invalid_argument("entropy_encode: nonzero value at dropped position");
      ++run;
    }
  }

  std::vector<uint8_t> out;
  append_u32le(out, n_kept);
  append_huffman_block(out, run_syms);
  append_huffman_block(out, val_bytes);
  return out;
}

EntropyDecoded entropy_decode(std::span<const uint8_t> bytes, size_t count) {
  const std::string section = "weights";
  size_t at = 0;
  const uint32_t n_kept = read_u32le(bytes, at, section);
  if (n_kept > count) throw DecodeError(section, "kept count exceeds coefficient count");
  const HuffmanBlock runs = read_huffman_block(bytes, at, section);
  const HuffmanBlock vals = read_huffman_block(bytes, at, section);
  if (at != bytes.size()) throw DecodeError(section, "trailing bytes in section");

  EntropyDecoded out;
  out.q.assign(count, 0);
  out.bitmap.assign(count, 0);

  std::vector<size_t> positions;
  positions.reserve(n_kept);
  BitReader rr(runs.payload, section);
  size_t pos = 0;
  for (uint32_t k = 0; k < n_kept; ++k) {
    uint8_t s;
    while ((s = runs.code.decode_symbol(rr, section)) == 255) pos += 255;
    pos += s;
    if (pos >= count) throw DecodeError(section, "coefficient position out of range");
    out.bitmap[pos] = 1;
    positions.push_back(pos);
    ++pos;
  }
  expect_drained(rr, section);

  BitReader vr(vals.payload, section);
  for (size_t p : positions) {
    const int64_t v = zigzag_decode(read_coded_varint(vals.code, vr, section));
    if (v == 0) throw DecodeError(section, "zero coded coefficient");
    if (v < INT32_MIN || v > INT32_MAX)
      throw DecodeError(section, "coefficient magnitude out of range");
    out.q[p] = static_cast<int32_t>(v);
  }
  expect_drained(vr, section);
  return out;
}

std::vector<uint8_t> encode_coefficients(std::span<const double> flat, double rho,
                                         double step) {
  NlaResult nla = nla_threshold(flat, rho);
  const std::vector<int32_t> q = quantize(nla.coefficients, step);
  // Kept coefficients that quantize to zero carry no information; drop them
  // from the bitmap so the run coder stays canonical.
  for (size_t i = 0; i < q.size(); ++i)
    if (nla.bitmap[i] && q[i] == 0) nla.bitmap[i] = 0;
  return entropy_encode(q, nla.bitmap);
}

std::vector<double> decode_coefficients(std::span<const uint8_t> bytes, size_t count,
                                        double step) {
  const EntropyDecoded dec = entropy_decode(bytes, count);
  return dequantize(dec.q, step);
}

std::vector<uint8_t> Bitstream::serialize() const {
  validate_config(config);
  std::vector<uint8_t> out;
  out.reserve(total_bytes());
  for (char c : {'G', 'W', 'A', 'C'}) out.push_back(static_cast<uint8_t>(c));
  out.push_back(config.version);
  const uint8_t flags = static_cast<uint8_t>(
      (config.mode == OperatorMode::edge ? 1 : 0) | (config.m_max << 1));
  out.push_back(flags);
  append_u32le(out, n);
  append_u32le(out, m);
  append_f64le(out, config.quant_step);
  append_f64le(out, config.rho);
  out.push_back(static_cast<uint8_t>(config.filter_order));
  append_u32le(out, static_cast<uint32_t>(topology.size()));
  out.insert(out.end(), topology.begin(), topology.end());
  append_u32le(out, static_cast<uint32_t>(weights.size()));
  out.insert(out.end(), weights.begin(), weights.end());
  return out;
}

Bitstream Bitstream::parse(std::span<const uint8_t> bytes) {
  const std::string section = "header";
  if (bytes.size() < kHeaderBytes + 8) throw DecodeError(section, "stream too short");
  if (std::memcmp(bytes.data(), "GWAC", 4) != 0) throw DecodeError(section, "bad magic");
  size_t at = 4;

  Bitstream b;
  b.config.version = bytes[at++];
  if (b.config.version != 1) throw DecodeError(section, "unsupported version");
  const uint8_t flags = bytes[at++];
  if (flags & ~0x07u) throw DecodeError(section, "unknown flag bits");
  b.config.mode = (flags & 1) ? OperatorMode::edge : OperatorMode::line;
  b.config.m_max = (flags >> 1) & 3;
  b.n = read_u32le(bytes, at, section);
  b.m = read_u32le(bytes, at, section);
  b.config.quant_step = read_f64le(bytes, at, section);
  b.config.rho = read_f64le(bytes, at, section);
  b.config.filter_order = bytes[at++];
  try {
    validate_config(b.config);
  } catch (const std::invalid_argument& e) {
    throw DecodeError(section, e.what());
  }
  const uint64_t capacity = static_cast<uint64_t>(b.n) * (b.n > 0 ? b.n - 1 : 0) / 2;
  if (b.m > capacity) throw DecodeError(section, "edge count exceeds graph capacity");

  const uint32_t topo_len = read_u32le(bytes, at, section);
  if (at + topo_len > bytes.size()) throw DecodeError(section, "truncated topology section");
  b.topology.assign(bytes.begin() + at, bytes.begin() + at + topo_len);
  at += topo_len;
  const uint32_t weights_len = read_u32le(bytes, at, section);
  if (at + weights_len > bytes.size()) throw DecodeError(section, "truncated weights section");
  b.weights.assign(bytes.begin() + at, bytes.begin() + at + weights_len);
  at += weights_len;
  if (at != bytes.size()) throw DecodeError(section, "trailing bytes");
  if (b.m == 0 && !b.weights.empty())
    throw DecodeError(section, "weights present for an edgeless graph");
  return b;
}

size_t Bitstream::total_bytes() const {
  return kHeaderBytes + 4 + topology.size() + 4 + weights.size();
}

Bitstream compress(const UGraph& g, const CodecConfig& cfg) {
  validate_config(cfg);
  Bitstream b;
  b.config = cfg;
  b.n = static_cast<uint32_t>(g.n);
  b.m = static_cast<uint32_t>(g.num_edges());
  b.topology = encode_topology(g.edges, g.n);
  if (b.m > 0) {
    const LineGraph lg = line_graph(g);
    const EdgeOperator op = build_operator(lg, g, cfg.mode);
    const BipartiteDecomposition dec = harary_decompose(lg, cfg.m_max);
    const BiorFilterBank fb = design_biorthogonal(cfg.filter_order);
    // The signal mean travels as a plain f64 ahead of the coefficient blocks
    // and only the zero-mean residual is transformed; starved rates then
    // degrade toward the mean graph instead of toward zero weights.
    Eigen::VectorXd f = weight_signal(g);
    const double mean = f.mean();
    f.array() -= mean;
    const SubbandCoefficients coefs = analyze(op, dec, fb, f);
    append_f64le(b.weights, mean);
    const std::vector<uint8_t> coded =
        encode_coefficients(coefs.flatten(), cfg.rho, cfg.quant_step);
    b.weights.insert(b.weights.end(), coded.begin(), coded.end());
  }
  return b;
}

UGraph decompress(const Bitstream& b) {
  const std::vector<std::pair<int, int>> edges = decode_topology(b.topology, b.n, b.m);
  if (b.m == 0) return make_ugraph(static_cast<int>(b.n), {}, {});

  // The transform machinery depends on topology only, so a unit-weight graph
  // reproduces the encoder's operators exactly.
  const UGraph skeleton = make_ugraph(static_cast<int>(b.n), edges,
                                      std::vector<double>(edges.size(), 1.0));
  const LineGraph lg = line_graph(skeleton);
  const EdgeOperator op = build_operator(lg, skeleton, b.config.mode);
  const BipartiteDecomposition dec = harary_decompose(lg, b.config.m_max);
  const BiorFilterBank fb = design_biorthogonal(b.config.filter_order);

  size_t at = 0;
  const double mean = read_f64le(b.weights, at, "weights");
  const std::vector<double> flat = decode_coefficients(
      std::span<const uint8_t>(b.weights).subspan(at), b.m, b.config.quant_step);
  SubbandCoefficients coefs = make_subband_layout(dec);
  coefs.unflatten(flat);
  const Eigen::VectorXd f = synthesize(op, dec, fb, coefs);

  std::vector<double> weights(b.m);
  for (uint32_t e = 0; e < b.m; ++e) weights[e] = std::max(f[e] + mean, 1e-9);
  return make_ugraph(static_cast<int>(b.n), edges, weights);
}

uint64_t transform_fingerprint(const EdgeOperator& op, const BipartiteDecomposition& dec,
                               const BiorFilterBank& fb) {
  uint64_t h = 14695981039346656037ull;
  auto mix = [&h](uint64_t v) {
    for (int i = 0; i < 8; ++i) {
      h ^= (v >> (8 * i)) & 0xff;
      h *= 1099511628211ull;
    }
  };
  auto mix_double = [&mix](double d) {
    uint64_t bits;
    std::memcpy(&bits, &d, sizeof(bits));
    mix(bits);
  };

  mix(op.mode == OperatorMode::edge ? 1 : 0);
  mix_double(op.spectral_bound);
  mix(static_cast<uint64_t>(dec.levels));
  mix(static_cast<uint64_t>(dec.used_levels));
  mix(static_cast<uint64_t>(dec.num_colors));
  for (uint32_t c : dec.colors) mix(c);
  for (const auto& level : dec.level_edges) {
    mix(level.size());
    for (const auto& [a, b] : level) {
      mix(static_cast<uint64_t>(a));
      mix(static_cast<uint64_t>(b));
    }
  }
  for (const Poly* p : {&fb.h0, &fb.h1, &fb.g0, &fb.g1}) {
    mix(p->size());
    for (double c : *p) mix_double(c);
  }
  mix(op.coupling.indptr.size());
  for (size_t v : op.coupling.indptr) mix(v);
  for (int c : op.coupling.indices) mix(static_cast<uint64_t>(c));
  for (double v : op.coupling.values) mix_double(v);
  return h;
}

}  // namespace gwac
