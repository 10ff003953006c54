#pragma once

#include <cstddef>
#include <cstdint>
#include <filesystem>
#include <map>
#include <string>
#include <string_view>
#include <vector>

namespace scatternet::harness {

inline constexpr std::uint64_t kDefaultSeed = 20240601;

/// One experiment invocation. Parameters arrive as strings and are parsed and
/// range-checked by the typed getters; an experiment lists the keys it knows
/// and any other key is rejected.
struct ExperimentConfig {
  std::string id;
  std::uint64_t seed = kDefaultSeed;
  std::filesystem::path out_dir;
  std::map<std::string, std::string> params;

  /// Throws std::invalid_argument naming the first unknown key.
  void check_keys(const std::vector<std::string>& allowed) const;

  double number(const std::string& key, double fallback, double lo, double hi) const;
  std::size_t count(const std::string& key, std::size_t fallback, std::size_t lo, std::size_t hi) const;
  std::string text(const std::string& key, const std::string& fallback) const;
  /// Comma-separated reals, e.g. "1,0.5,0.2,0.5,1".
  std::vector<double> list(const std::string& key, const std::vector<double>& fallback) const;
};

/// Adds "key=value" to cfg.params; throws on malformed input or duplicates.
void add_param(ExperimentConfig& cfg, std::string_view key_value);

std::vector<double> parse_list(std::string_view text);

}  // namespace scatternet::harness
