#pragma once

#include <array>
#include <cstdint>
#include <span>
#include <string>
#include <vector>

#include "gwac/bitio.hpp"

namespace gwac {

// Canonical Huffman code over the byte alphabet. Code lengths are capped at
// 15 so a table always serializes to 128 bytes of packed 4-bit lengths.
// Canonical codes are assigned in (length, symbol) order, so the lengths
// alone reproduce the codebook on both sides. An alphabet with a single
// distinct symbol falls back to a 1-bit code for it.
class HuffmanCode {
 public:
  static constexpr int kMaxLength = 15;
  static constexpr size_t kTableBytes = 128;

  static HuffmanCode from_counts(const std::array<uint64_t, 256>& counts);

  // Rebuilds the codebook from serialized lengths; throws DecodeError (with
  // the given section label) when the table is not canonical-decodable.
  static HuffmanCode from_table(std::span<const uint8_t> table, const std::string& section);

  void serialize_table(std::vector<uint8_t>& out) const;

  void encode_symbol(uint8_t symbol, BitWriter& w) const;
  uint8_t decode_symbol(BitReader& r, const std::string& section) const;

  uint8_t length(uint8_t symbol) const { return lengths_[symbol]; }

 private:
  void derive_codebook(const std::string& section);

  std::array<uint8_t, 256> lengths_{};
  std::array<uint16_t, 256> codes_{};
  // Canonical decode tables indexed by code length.
  std::array<uint16_t, kMaxLength + 1> first_code_{};
  std::array<uint16_t, kMaxLength + 1> count_{};
  std::array<uint16_t, kMaxLength + 1> offset_{};
  std::array<uint8_t, 256> sorted_symbols_{};
};

}  // namespace gwac
