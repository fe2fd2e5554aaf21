#pragma once

#include <cstdint>
#include <iosfwd>
#include <optional>
#include <string>
#include <vector>

namespace snapcx::cli {

// Exit statuses.
inline constexpr int kOk = 0;
inline constexpr int kCheckFailed = 1;
inline constexpr int kUsage = 2;
inline constexpr int kCapExceeded = 3;

struct RunConfig {
  std::string command;
  std::string counter;
  std::vector<std::string> checks;
  std::string out;  // empty: stdout
  std::string format = "json";
  std::size_t max_simplices = 0;  // 0: SNAPCX_MAX_SIMPLICES or the default
  std::uint64_t seed = 0x5eed;
};

/// Runs one command line (args excludes the program name). Reports go to
/// `out` or the --out file, diagnostics to `err`.
int run(const std::vector<std::string>& args, std::ostream& out,
        std::ostream& err);

}  // namespace snapcx::cli
