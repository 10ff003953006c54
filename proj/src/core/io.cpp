#include "scatternet/io.hpp"

#include <algorithm>
#include <charconv>
#include <cmath>
#include <cstdio>
#include <cstdlib>
#include <fstream>
#include <istream>
#include <sstream>
#include <stdexcept>

namespace scatternet::io {

std::string format_double(double x) {
  char buf[32];
  std::snprintf(buf, sizeof buf, "%.17g", x);
  return buf;
}

std::string format_shortest(double x) {
  char buf[32];
  for (int precision = 1; precision < 17; ++precision) {
    std::snprintf(buf, sizeof buf, "%.*g", precision, x);
    if (std::strtod(buf, nullptr) == x) return buf;
  }
  return format_double(x);
}

std::string encode_pgm16(std::size_t width, std::size_t height, std::span<const double> values,
                         GreyScale scale) {
  if (values.size() != width * height || width == 0 || height == 0) {
    throw std::invalid_argument("encode_pgm16: value count does not match image size");
  }
  double lo = 0.0;
  double hi = 0.0;
  if (scale == GreyScale::kMinMax) {
    const auto [mn, mx] = std::minmax_element(values.begin(), values.end());
    lo = *mn;
    hi = *mx;
  } else {
    for (double v : values) {
      if (v < 0.0) throw std::invalid_argument("encode_pgm16: negative value under max-modulus scaling");
      hi = std::max(hi, v);
    }
  }
  std::string out = "P5\n" + std::to_string(width) + " " + std::to_string(height) + "\n65535\n";
  out.reserve(out.size() + 2 * values.size());
  const double range = hi - lo;
  for (double v : values) {
    if (!std::isfinite(v)) throw std::invalid_argument("encode_pgm16: non-finite value");
    const double t = range > 0.0 ? (v - lo) / range : 0.0;
    const auto grey = static_cast<unsigned>(std::lround(std::clamp(t, 0.0, 1.0) * 65535.0));
    out.push_back(static_cast<char>((grey >> 8) & 0xff));
    out.push_back(static_cast<char>(grey & 0xff));
  }
  return out;
}

void write_file(const std::filesystem::path& path, std::string_view bytes) {
  if (path.has_parent_path()) std::filesystem::create_directories(path.parent_path());
  std::ofstream f(path, std::ios::binary | std::ios::trunc);
  if (!f) throw std::runtime_error("cannot open " + path.string() + " for writing");
  f.write(bytes.data(), static_cast<std::streamsize>(bytes.size()));
  if (!f) throw std::runtime_error("write failed: " + path.string());
}

CsvTable::CsvTable(std::vector<std::string> header) : header_(std::move(header)) {}

void CsvTable::add_row(std::span<const double> cells) {
  if (cells.size() != header_.size()) throw std::invalid_argument("CsvTable: row width mismatch");
  for (std::size_t i = 0; i < cells.size(); ++i) {
    if (i) body_ += ',';
    body_ += format_double(cells[i]);
  }
  body_ += '\n';
}

std::string CsvTable::str() const {
  std::string out;
  for (std::size_t i = 0; i < header_.size(); ++i) {
    if (i) out += ',';
    out += header_[i];
  }
  out += '\n';
  return out + body_;
}

namespace {

std::string shape_string(std::span<const std::size_t> shape) {
  if (shape.empty()) return "-";
  std::string s;
  for (std::size_t i = 0; i < shape.size(); ++i) {
    if (i) s += 'x';
    s += std::to_string(shape[i]);
  }
  return s;
}

std::vector<std::size_t> parse_shape(const std::string& s) {
  std::vector<std::size_t> shape;
  if (s == "-") return shape;
  std::stringstream ss(s);
  std::string part;
  while (std::getline(ss, part, 'x')) {
    std::size_t v = 0;
    const auto [end, ec] = std::from_chars(part.data(), part.data() + part.size(), v);
    if (ec != std::errc() || end != part.data() + part.size() || part.empty()) {
      throw std::runtime_error("checkpoint: bad shape '" + s + "'");
    }
    shape.push_back(v);
  }
  return shape;
}

std::map<std::string, std::string> parse_attributes(std::istringstream& in) {
  std::map<std::string, std::string> attrs;
  std::string token;
  while (in >> token) {
    const auto eq = token.find('=');
    if (eq == std::string::npos || eq == 0) throw std::runtime_error("checkpoint: bad attribute '" + token + "'");
    attrs[token.substr(0, eq)] = token.substr(eq + 1);
  }
  return attrs;
}

}  // namespace

std::string encode_checkpoint(std::string_view kind, std::span<const CheckpointSection> sections) {
  std::string out = "# scatternet-checkpoint v" + std::to_string(kCheckpointVersion) + " kind=" +
                    std::string(kind) + "\n";
  for (std::size_t i = 0; i < sections.size(); ++i) {
    const auto& s = sections[i];
    out += "[layer " + std::to_string(i) + "] type=" + s.type + " shape=" + shape_string(s.shape);
    for (const auto& [key, value] : s.attributes) out += " " + key + "=" + value;
    out += '\n';
    for (double v : s.values) {
      out += format_double(v);
      out += '\n';
    }
  }
  return out;
}

std::vector<CheckpointSection> decode_checkpoint(std::istream& in, std::string_view expected_kind) {
  std::string line;
  if (!std::getline(in, line)) throw std::runtime_error("checkpoint: empty input");
  const std::string expected_header = "# scatternet-checkpoint v" + std::to_string(kCheckpointVersion) +
                                      " kind=" + std::string(expected_kind);
  if (line != expected_header) throw std::runtime_error("checkpoint: unexpected header '" + line + "'");

  std::vector<CheckpointSection> sections;
  while (std::getline(in, line)) {
    if (line.empty()) continue;
    if (line.front() == '[') {
      std::istringstream header(line);
      std::string tag;
      std::size_t index = 0;
      std::string close;
      header >> tag >> index >> close;
      if (tag != "[layer" || close != "]" || index != sections.size()) {
        throw std::runtime_error("checkpoint: bad section header '" + line + "'");
      }
      auto attrs = parse_attributes(header);
      CheckpointSection s;
      if (!attrs.contains("type") || !attrs.contains("shape")) {
        throw std::runtime_error("checkpoint: section missing type/shape");
      }
      s.type = attrs["type"];
      s.shape = parse_shape(attrs["shape"]);
      attrs.erase("type");
      attrs.erase("shape");
      s.attributes = std::move(attrs);
      sections.push_back(std::move(s));
      continue;
    }
    if (sections.empty()) throw std::runtime_error("checkpoint: value before first section");
    double v = 0.0;
    const auto [end, ec] = std::from_chars(line.data(), line.data() + line.size(), v);
    if (ec != std::errc() || end != line.data() + line.size()) {
      throw std::runtime_error("checkpoint: bad value '" + line + "'");
    }
    sections.back().values.push_back(v);
  }
  return sections;
}

}  // namespace scatternet::io
