#pragma once

#include <cstdint>
#include <span>
#include <string>
#include <vector>

#include "gwac/errors.hpp"

namespace gwac {

// MSB-first bit packing; the final byte is zero-padded.
class BitWriter {
 public:
  void put_bit(int bit) {
    acc_ = static_cast<uint8_t>((acc_ << 1) | (bit & 1));
    if (++nbits_ == 8) {
      bytes_.push_back(acc_);
      acc_ = 0;
      nbits_ = 0;
    }
  }

  void put_bits(uint32_t value, int count) {
    for (int i = count - 1; i >= 0; --i) put_bit(static_cast<int>(value >> i) & 1);
  }

  std::vector<uint8_t> finish() {
    if (nbits_ > 0) {
      bytes_.push_back(static_cast<uint8_t>(acc_ << (8 - nbits_)));
      acc_ = 0;
      nbits_ = 0;
    }
    return std::move(bytes_);
  }

 private:
  std::vector<uint8_t> bytes_;
  uint8_t acc_ = 0;
  int nbits_ = 0;
};

class BitReader {
 public:
  BitReader(std::span<const uint8_t> bytes, std::string section)
      : bytes_(bytes), section_(std::move(section)) {}

  int read_bit() {
    const size_t byte = pos_ >> 3;
    if (byte >= bytes_.size()) throw DecodeError(section_, "bit stream exhausted");
    const int bit = (bytes_[byte] >> (7 - (pos_ & 7))) & 1;
    ++pos_;
    return bit;
  }

  size_t bits_left() const { return bytes_.size() * 8 - pos_; }

 private:
  std::span<const uint8_t> bytes_;
  std::string section_;
  size_t pos_ = 0;
};

// Base-128 varints, least significant group first, high bit = continuation.
inline void varint_append(std::vector<uint8_t>& out, uint64_t v) {
  while (v >= 0x80) {
    out.push_back(static_cast<uint8_t>(v) | 0x80);
    v >>= 7;
  }
  out.push_back(static_cast<uint8_t>(v));
}

// Reads one varint starting at `at`, advancing it. Throws on truncation or a
// value that does not fit 64 bits.
inline uint64_t varint_read(std::span<const uint8_t> bytes, size_t& at,
                            const std::string& section) {
  uint64_t v = 0;
  int shift = 0;
  for (;;) {
    if (at >= bytes.size()) throw DecodeError(section, "truncated varint");
    const uint8_t b = bytes[at++];
    const uint64_t group = b & 0x7f;
    if (shift == 63 && group > 1)
      throw DecodeError(section, "varint overflows 64 bits");
    v |= group << shift;
    if ((b & 0x80) == 0) return v;
    shift += 7;
    if (shift > 63) throw DecodeError(section, "varint overflows 64 bits");
  }
}

// Zigzag maps 0, -1, 1, -2, 2, ... to 0, 1, 2, 3, 4, ...
inline uint64_t zigzag_encode(int64_t v) {
  return (static_cast<uint64_t>(v) << 1) ^ static_cast<uint64_t>(v >> 63);
}

inline int64_t zigzag_decode(uint64_t z) {
  return static_cast<int64_t>(z >> 1) ^ -static_cast<int64_t>(z & 1);
}

}  // namespace gwac
