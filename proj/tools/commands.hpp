#pragma once

#include <cstdint>
#include <optional>
#include <stdexcept>
#include <string>

namespace symdesign::cli {

enum ExitCode : int { kSuccess = 0, kFailure = 1, kPartial = 2, kUsage = 64 };

/// Bad flag values or violated preconditions; mapped to exit code 64.
struct UsageError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

struct IntRange {
  int lo = 0;
  int hi = 0;
};

/// "4" or "2..6".
IntRange parse_range(const std::string& text, const std::string& flag);

struct RunConfig {
  std::string n = "3";
  std::string m = "2..6";
  int d = 2;
  int k = 2;
  std::string ensemble = "swap";
  std::string geometry = "open";
  std::string tuples = "all";
  std::string shape;
  std::string convention = "both";
  std::string solver = "auto";
  std::string name;
  double tol = 1e-6;
  std::uint64_t seed = 20240601;
  int threads = 0;
  long samples = 0;
  std::size_t max_dim = 40000;
  std::size_t dense_limit = 1500;
  std::string out;
  std::string format = "csv";
  bool resume = false;
  bool quick = false;
  bool inject_fault = false;
  std::optional<double> gap;
  std::optional<double> gamma;
  std::optional<double> delta;
  std::optional<double> epsilon;
};

int cmd_partitions(const RunConfig& cfg);
int cmd_rep(const RunConfig& cfg);
int cmd_gap_scan(const RunConfig& cfg);
int cmd_all_to_all(const RunConfig& cfg);
int cmd_brickwork(const RunConfig& cfg);
int cmd_counterexample(const RunConfig& cfg);
int cmd_frame_potential(const RunConfig& cfg);
int cmd_bounds(const RunConfig& cfg);
int cmd_convergence(const RunConfig& cfg);
int cmd_verify(const RunConfig& cfg);

}  // namespace symdesign::cli
