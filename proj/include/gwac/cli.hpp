#pragma once

namespace gwac {

// Entry point behind the gwac binary: parses argv, dispatches the
// subcommand, and maps failures onto exit codes (0 success, 1 usage error,
// 2 malformed data, with the failing bitstream section named on stderr).
int run_cli(int argc, const char* const* argv);

}  // namespace gwac
