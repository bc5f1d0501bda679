#pragma once

#include <cstdint>
#include <span>
#include <vector>

#include "gwac/filterbank.hpp"
#include "gwac/graph.hpp"
#include "gwac/line_graph.hpp"

namespace gwac {

struct CodecConfig {
  double quant_step = 0.01;
  double rho = 1.0;  // kept fraction of coefficients, in (0, 1]
  OperatorMode mode = OperatorMode::line;
  int filter_order = 8;  // K, even
  int m_max = 2;         // decomposition levels used, 1..3 (2 bits in the header)
  uint8_t version = 1;
};

void validate_config(const CodecConfig& cfg);

// Container format (all integers little-endian):
//   "GWAC" | version u8 | flags u8 | n u32 | m u32 | quant_step f64 | rho f64
//   | K u8 | topology u32 length + payload | weights u32 length + payload
// flags: bit 0 = operator mode (0 line, 1 edge), bits 1-2 = m_max.
// The weights payload opens with the signal mean as an f64; the coefficient
// blocks that follow code the zero-mean residual.
struct Bitstream {
  CodecConfig config;
  uint32_t n = 0;
  uint32_t m = 0;
  std::vector<uint8_t> topology;
  std::vector<uint8_t> weights;

  std::vector<uint8_t> serialize() const;
  static Bitstream parse(std::span<const uint8_t> bytes);
  size_t total_bytes() const;
};

// Lossless topology coder: edges map to flat upper-triangular indices
// t = i n - i(i+1)/2 + (j - i - 1), whose sorted first differences are
// varint-coded and Huffman-compressed byte-wise. A terminating zero gap lets
// the decoder validate the edge count against the container header.
std::vector<uint8_t> encode_topology(const std::vector<std::pair<int, int>>& edges, int n);
std::vector<std::pair<int, int>> decode_topology(std::span<const uint8_t> bytes,
                                                 uint32_t n, uint32_t m);

// Keeps the ceil(rho * size) largest-magnitude coefficients (ties broken by
// lower index), zeroing the rest; bitmap marks survivors.
struct NlaResult {
  std::vector<double> coefficients;
  std::vector<uint8_t> bitmap;
};
NlaResult nla_threshold(std::span<const double> coefficients, double rho);

// Uniform scalar quantizer, rounding half away from zero. Throws when a
// value falls outside the 2^31 - 1 bin range.
std::vector<int32_t> quantize(std::span<const double> values, double step);
std::vector<double> dequantize(std::span<const int32_t> q, double step);

// Coefficient entropy coder: the bitmap as Huffman-coded zero-run lengths
// (runs of 255 or more emit the escape symbol 255 and continue), then the
// surviving values zigzag-mapped, varint-packed and Huffman-coded byte-wise.
// q must be nonzero exactly at the bitmap's ones.
std::vector<uint8_t> entropy_encode(std::span<const int32_t> q,
                                    std::span<const uint8_t> bitmap);
struct EntropyDecoded {
  std::vector<int32_t> q;
  std::vector<uint8_t> bitmap;
};
EntropyDecoded entropy_decode(std::span<const uint8_t> bytes, size_t count);

// Full lossy coefficient pipeline (NLA -> quantize -> entropy code) shared
// by the codec and all the baselines. `decode_coefficients` inverts it up to
// quantization.
std::vector<uint8_t> encode_coefficients(std::span<const double> flat, double rho,
                                         double step);
std::vector<double> decode_coefficients(std::span<const uint8_t> bytes, size_t count,
                                        double step);

Bitstream compress(const UGraph& g, const CodecConfig& cfg);
UGraph decompress(const Bitstream& b);

// Hash of everything the decoder rebuilds from topology alone (coloring,
// level edges, operator scale, filter coefficients); encoder and decoder
// must agree on it bit for bit.
uint64_t transform_fingerprint(const EdgeOperator& op, const BipartiteDecomposition& dec,
                               const BiorFilterBank& fb);

}  // namespace gwac
