#pragma once

#include <cstdint>
#include <iosfwd>
#include <optional>
#include <string>
#include <vector>

namespace ballbody {

// Exit codes.
inline constexpr int kExitPass = 0;
inline constexpr int kExitViolated = 1;
inline constexpr int kExitUsage = 2;
inline constexpr int kExitNoConvergence = 3;

struct RunConfig {
  std::string command;  // functionals | dual-check | verify | floating | search | scan
  std::string body_path;
  std::optional<int> dim;
  std::optional<int> resolution;  // default: 4096 (n=2), 32 (n=3), 100000 (n>=4)
  std::optional<std::uint64_t> seed;
  std::optional<double> tolerance;
  std::string output;  // empty: stdout
  std::string format;  // json | csv; empty: command default (csv for floating)
  std::string gnuplot;  // optional plain-text data file

  std::string suite = "all";  // verify: "all" or comma-separated kind names

  std::vector<double> deltas{1e-2, 3e-3, 1e-3, 3e-4, 1e-4};
  int directions = 256;
  bool relative = false;
  bool halfspace = false;
  double accept = 0.05;

  std::string family = "ball";

  double window_lo = 0.4;
  double window_hi = 0.6;
  int steps = 401;
};

// Runs one command; the report goes to config.output (or `out`),
// diagnostics to `err`.
int run(const RunConfig& config, std::ostream& out, std::ostream& err);

// Parses argv into a RunConfig and runs it.
int cli_main(int argc, const char* const* argv, std::ostream& out, std::ostream& err);

}  // namespace ballbody
