#pragma once

#include <cstdint>
#include <string>
#include <utility>
#include <vector>

#include "misq/config.hpp"

namespace misq {

struct RunOptions {
  std::uint64_t seed = 0;
  bool seed_set = false;
  bool ci = false;  // missing --seed is an error in CI mode
  int threads = 0;  // 0 = hardware concurrency
};

struct RunOutput {
  // 0 ok, 1 usage/config error (thrown as ConfigError instead), 2 numerical
  // non-convergence (artifacts still written).
  int exit_code = 0;
  std::vector<std::pair<std::string, std::string>> artifacts;  // file name -> content
  std::string report;
};

// Commands: phi, simulate, verify-mixture, attainable, rate, ldp-slope,
// schilder. Identical (config, seed) pairs produce byte-identical artifacts
// at any thread count.
RunOutput run_command(const std::string& command, const Config& cfg, const RunOptions& opts);

const std::vector<std::string>& known_commands();

}  // namespace misq
