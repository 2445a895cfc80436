#pragma once

#include <cstdint>
#include <optional>
#include <string>

#include "jsqd/harness.hpp"

namespace jsqd {

/// Parsed `compare --config` file. See configs/README.md for the key list.
struct CompareConfig {
  std::string kind = "fluctuation";  // fluctuation | lln
  FluctuationConfig fluctuation;
  LlnConfig lln;
  double lln_tolerance = 0.05;
  std::optional<std::int64_t> trend_factor;
  double trend_slack = 1.2;
  std::string output;  // report prefix; empty = no files
};

CompareConfig load_compare_config(const std::string& path);
CompareConfig parse_compare_config(const std::string& text);

}  // namespace jsqd
