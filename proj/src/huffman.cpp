#include "gwac/huffman.hpp"

#include <algorithm>
#include <numeric>
#include <queue>

namespace gwac {

namespace {

// Ordinary Huffman code lengths with deterministic tie-breaking: nodes are
// ordered by (weight, creation order), leaves created in symbol order before
// any internal node. Returns the maximum length.
int huffman_lengths(const std::array<uint64_t, 256>& counts,
                    std::array<uint8_t, 256>& lengths) {
  struct Node {
    uint64_t weight;
    int id;
    int left = -1, right = -1;
    int symbol = -1;
  };
  std::vector<Node> nodes;
  for (int s = 0; s < 256; ++s) {
    if (counts[s] > 0)
      nodes.push_back({counts[s], static_cast<int>(nodes.size()), -1, -1, s});
  }
  lengths.fill(0);
  if (nodes.empty()) return 0;
  if (nodes.size() == 1) {
    lengths[nodes[0].symbol] = 1;  // degenerate alphabet: one bit per symbol
    return 1;
  }

  auto cmp = [&nodes](int a, int b) {
    return std::pair(nodes[a].weight, nodes[a].id) > std::pair(nodes[b].weight, nodes[b].id);
  };
  std::priority_queue<int, std::vector<int>, decltype(cmp)> heap(cmp);
  for (size_t i = 0; i < nodes.size(); ++i) heap.push(static_cast<int>(i));
  while (heap.size() > 1) {
    const int a = heap.top();
    heap.pop();
    const int b = heap.top();
    heap.pop();
    nodes.push_back({nodes[a].weight + nodes[b].weight, static_cast<int>(nodes.size()),
                     a, b, -1});
    heap.push(static_cast<int>(nodes.size()) - 1);
  }

  int max_len = 0;
  // Depth-first length assignment, iterative to stay safe on skewed trees.
  std::vector<std::pair<int, int>> stack{{heap.top(), 0}};
  while (!stack.empty()) {
    const auto [idx, depth] = stack.back();
    stack.pop_back();
    const Node& nd = nodes[idx];
    if (nd.symbol >= 0) {
      lengths[nd.symbol] = static_cast<uint8_t>(depth);
      max_len = std::max(max_len, depth);
    } else {
      stack.emplace_back(nd.left, depth + 1);
      stack.emplace_back(nd.right, depth + 1);
    }
  }
  return max_len;
}

}  // namespace

HuffmanCode HuffmanCode::from_counts(const std::array<uint64_t, 256>& counts) {
  HuffmanCode code;
  // Flatten the histogram until the tree fits the 4-bit length field; the
  // depth shrinks monotonically and a uniform histogram needs only 8 bits.
  std::array<uint64_t, 256> scaled = counts;
  while (huffman_lengths(scaled, code.lengths_) > kMaxLength) {
    for (auto& c : scaled)
      if (c > 1) c = (c + 1) >> 1;
  }
  code.derive_codebook("encoder");
  return code;
}

HuffmanCode HuffmanCode::from_table(std::span<const uint8_t> table,
                                    const std::string& section) {
  if (table.size() != kTableBytes)
    throw DecodeError(section, "Huffman table has wrong size");
  HuffmanCode code;
  for (int s = 0; s < 256; ++s) {
    const uint8_t packed = table[s >> 1];
    code.lengths_[s] = (s & 1) ? (packed >> 4) : (packed & 0x0f);
  }
  code.derive_codebook(section);
  return code;
}

void HuffmanCode::serialize_table(std::vector<uint8_t>& out) const {
  for (int i = 0; i < 128; ++i)
    out.push_back(static_cast<uint8_t>((lengths_[2 * i] & 0x0f) |
                                       (lengths_[2 * i + 1] << 4)));
}

void HuffmanCode::derive_codebook(const std::string& section) {
  count_.fill(0);
  for (int s = 0; s < 256; ++s) ++count_[lengths_[s]];
  count_[0] = 0;

  // Kraft sum over 2^-length must not exceed 1, or codes collide.
  uint32_t kraft = 0;  // in units of 2^-kMaxLength
  for (int l = 1; l <= kMaxLength; ++l)
    kraft += static_cast<uint32_t>(count_[l]) << (kMaxLength - l);
  if (kraft > (1u << kMaxLength))
    throw DecodeError(section, "malformed Huffman table (overfull code)");

  uint16_t code = 0;
  uint16_t offset = 0;
  for (int l = 1; l <= kMaxLength; ++l) {
    code = static_cast<uint16_t>((code + count_[l - 1]) << 1);
    first_code_[l] = code;
    offset_[l] = offset;
    offset = static_cast<uint16_t>(offset + count_[l]);
  }
  std::array<uint16_t, kMaxLength + 1> next = first_code_;
  std::array<uint16_t, kMaxLength + 1> fill = offset_;
  for (int s = 0; s < 256; ++s) {
    const uint8_t l = lengths_[s];
    if (l == 0) continue;
    codes_[s] = next[l]++;
    sorted_symbols_[fill[l]++] = static_cast<uint8_t>(s);
  }
}

void HuffmanCode::encode_symbol(uint8_t symbol, BitWriter& w) const {
  w.put_bits(codes_[symbol], lengths_[symbol]);
}

uint8_t HuffmanCode::decode_symbol(BitReader& r, const std::string& section) const {
  uint16_t code = 0;
  for (int l = 1; l <= kMaxLength; ++l) {
    code = static_cast<uint16_t>((code << 1) | r.read_bit());
    if (count_[l] > 0 && code >= first_code_[l] &&
        code < first_code_[l] + count_[l]) {
      return sorted_symbols_[offset_[l] + (code - first_code_[l])];
    }
  }
  throw DecodeError(section, "invalid Huffman codeword");
}

}  // namespace gwac
