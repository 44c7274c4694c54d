#pragma once

#include <iosfwd>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

namespace ptrobin::cli {

enum ExitCode : int {
  kOk = 0,
  kFailure = 1,  ///< verification failed or unexpected runtime error
  kUsage = 2,    ///< bad flags, malformed input, d mismatch, unknown suite
  kDegenerate = 3,
};

/// Parses "1.5", "pi", "-pi", "2pi", "2*pi", "pi/2", "3*pi/4". Locale
/// independent. Returns nullopt on anything else.
std::optional<double> parse_real(std::string_view text);

struct Range {
  double start = 0.0;
  double stop = 0.0;
  std::size_t steps = 0;
  std::vector<double> values() const;
};

/// "start:stop:steps" with steps >= 2; endpoints go through parse_real.
std::optional<Range> parse_range(std::string_view text);

/// Runs the command line (args excludes the program name). Primary output
/// goes to --out or `out`; diagnostics go to `err`.
int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);

}  // namespace ptrobin::cli
