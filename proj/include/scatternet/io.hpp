#pragma once

#include <cstddef>
#include <filesystem>
#include <iosfwd>
#include <map>
#include <span>
#include <string>
#include <string_view>
#include <vector>

namespace scatternet::io {

/// Round-trippable text for a double, always 17 significant digits ("%.17g").
std::string format_double(double x);

/// Shortest text that parses back to the same double.
std::string format_shortest(double x);

/// How real values are mapped onto the 16-bit grey range.
enum class GreyScale {
  kMaxModulus,  // [0, max] -> [0, 65535]; inputs must be >= 0
  kMinMax,      // [min, max] -> [0, 65535]
};

/// Binary PGM (P5), maxval 65535, big-endian samples, row-major.
/// A constant image maps to all zeros.
std::string encode_pgm16(std::size_t width, std::size_t height, std::span<const double> values,
                         GreyScale scale);

/// Writes bytes to path, creating parent directories.
void write_file(const std::filesystem::path& path, std::string_view bytes);

/// Plain-text CSV with a header row. Every row must have header.size() cells.
class CsvTable {
 public:
  explicit CsvTable(std::vector<std::string> header);
  void add_row(std::span<const double> cells);
  void add_row(std::initializer_list<double> cells) { add_row(std::span(cells.begin(), cells.size())); }
  std::string str() const;

 private:
  std::vector<std::string> header_;
  std::string body_;
};

// Versioned plain-text checkpoint. Layout:
//
//   # scatternet-checkpoint v1 kind=<kind>
//   [layer 0] type=conv shape=4x1x5x5 stride=1
//   <one value per line, 17 significant digits>
//   [layer 1] type=relu shape=-
//   ...
inline constexpr int kCheckpointVersion = 1;

struct CheckpointSection {
  std::string type;
  std::vector<std::size_t> shape;
  std::map<std::string, std::string> attributes;
  std::vector<double> values;
};

std::string encode_checkpoint(std::string_view kind, std::span<const CheckpointSection> sections);

/// Throws std::runtime_error on malformed input, version mismatch, or kind
/// mismatch.
std::vector<CheckpointSection> decode_checkpoint(std::istream& in, std::string_view expected_kind);

}  // namespace scatternet::io
