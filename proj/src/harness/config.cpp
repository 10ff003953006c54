#include "scatternet/harness/config.hpp"

#include <algorithm>
#include <charconv>
#include <cmath>
#include <stdexcept>

namespace scatternet::harness {

namespace {

double parse_double(std::string_view s, const std::string& key) {
  // std::from_chars for double is unavailable in older libstdc++; strtod on a
  // copied string with a full-consumption check gives the same contract.
  const std::string copy(s);
  char* end = nullptr;
  const double v = std::strtod(copy.c_str(), &end);
  if (copy.empty() || end != copy.c_str() + copy.size() || !std::isfinite(v)) {
    throw std::invalid_argument("parameter '" + key + "': not a finite number: '" + copy + "'");
  }
  return v;
}

}  // namespace

void ExperimentConfig::check_keys(const std::vector<std::string>& allowed) const {
  for (const auto& [k, v] : params) {
    if (std::find(allowed.begin(), allowed.end(), k) == allowed.end()) {
      std::string known;
      for (const auto& a : allowed) known += (known.empty() ? "" : ", ") + a;
      throw std::invalid_argument("experiment '" + id + "' has no parameter '" + k + "' (known: " + known + ")");
    }
  }
}

double ExperimentConfig::number(const std::string& key, double fallback, double lo, double hi) const {
  const auto it = params.find(key);
  const double v = it == params.end() ? fallback : parse_double(it->second, key);
  if (v < lo || v > hi) {
    throw std::invalid_argument("parameter '" + key + "' = " + std::to_string(v) + " outside [" + std::to_string(lo) +
                                ", " + std::to_string(hi) + "]");
  }
  return v;
}

std::size_t ExperimentConfig::count(const std::string& key, std::size_t fallback, std::size_t lo,
                                    std::size_t hi) const {
  std::size_t v = fallback;
  if (const auto it = params.find(key); it != params.end()) {
    const auto& s = it->second;
    const auto [ptr, ec] = std::from_chars(s.data(), s.data() + s.size(), v);
    if (ec != std::errc{} || ptr != s.data() + s.size()) {
      throw std::invalid_argument("parameter '" + key + "': not a non-negative integer: '" + s + "'");
    }
  }
  if (v < lo || v > hi) {
    throw std::invalid_argument("parameter '" + key + "' = " + std::to_string(v) + " outside [" + std::to_string(lo) +
                                ", " + std::to_string(hi) + "]");
  }
  return v;
}

std::string ExperimentConfig::text(const std::string& key, const std::string& fallback) const {
  const auto it = params.find(key);
  return it == params.end() ? fallback : it->second;
}

std::vector<double> ExperimentConfig::list(const std::string& key, const std::vector<double>& fallback) const {
  const auto it = params.find(key);
  return it == params.end() ? fallback : parse_list(it->second);
}

std::vector<double> parse_list(std::string_view text) {
  std::vector<double> out;
  std::size_t start = 0;
  while (start <= text.size()) {
    const std::size_t comma = std::min(text.find(',', start), text.size());
    out.push_back(parse_double(text.substr(start, comma - start), "list"));
    start = comma + 1;
  }
  return out;
}

void add_param(ExperimentConfig& cfg, std::string_view key_value) {
  const auto eq = key_value.find('=');
  if (eq == std::string_view::npos || eq == 0) {
    throw std::invalid_argument("expected key=value, got '" + std::string(key_value) + "'");
  }
  const std::string key(key_value.substr(0, eq));
  if (!cfg.params.emplace(key, std::string(key_value.substr(eq + 1))).second) {
    throw std::invalid_argument("parameter '" + key + "' given twice");
  }
}

}  // namespace scatternet::harness
