#pragma once

#include <cstdint>
#include <string>
#include <string_view>
#include <vector>

namespace gwac {

std::vector<uint8_t> read_binary_file(const std::string& path);

// Writes to <path>.tmp in the same directory and renames into place, so a
// crash never leaves a half-written artifact behind.
void write_file_atomic(const std::string& path, std::string_view bytes);
void write_file_atomic(const std::string& path, const std::vector<uint8_t>& bytes);

}  // namespace gwac
