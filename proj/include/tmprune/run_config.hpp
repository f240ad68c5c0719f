#pragma once

#include <cstddef>
#include <cstdint>
#include <filesystem>
#include <string>
#include <vector>

#include "tmprune/tsetlin.hpp"

namespace tmprune {

// Everything a run needs. Loaded from a key = value file, then overridden by
// command-line flags, then validated before any work starts.
struct RunConfig {
  std::string train_path;
  std::string test_path;
  std::size_t vocab_max_size = 5000;
  ModelConfig model;
  std::size_t epochs = 50;
  std::vector<double> prune_fractions;
  std::string metric = "comprehensiveness";
  std::string annotator = "all";  // "1", "2", "3" or "all"
  std::string out_dir = ".";
  std::uint64_t seed = 42;
  bool deterministic = true;
  std::size_t threads = 1;

  // Throws ConfigError.
  void validate() const;

  // Canonical key = value text, fixed key order; the fingerprint hashes it.
  std::string to_text() const;
  std::uint64_t fingerprint() const;
};

// Lines are `key = value`; '#' starts a comment; values may be double-quoted;
// lists are comma-separated. Unknown keys and malformed values throw
// ConfigError.
void apply_config_text(RunConfig& config, const std::string& text);
void apply_config_file(RunConfig& config, const std::filesystem::path& path);

// "0.05,0.1" or "start:stop:step" (inclusive, all fractions).
std::vector<double> parse_fraction_list(const std::string& text);

}  // namespace tmprune
