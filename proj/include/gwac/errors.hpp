#pragma once

#include <stdexcept>
#include <string>

namespace gwac {

// Malformed or truncated coded data. `section` names the part of the stream
// that failed ("header", "topology", "weights") so CLI diagnostics can point
// at it.
class DecodeError : public std::runtime_error {
 public:
  DecodeError(std::string section, const std::string& message)
      : std::runtime_error(section + ": " + message), section_(std::move(section)) {}

  const std::string& section() const { return section_; }

 private:
  std::string section_;
};

}  // namespace gwac
