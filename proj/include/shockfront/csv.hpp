#pragma once

#include <cstdint>
#include <cstdio>
#include <filesystem>
#include <fstream>
#include <initializer_list>
#include <stdexcept>
#include <string>
#include <vector>

namespace shockfront {

/// Round-trip decimal form; bit-stable across runs on one platform.
inline std::string format_number(double v) {
  char buf[32];
  std::snprintf(buf, sizeof(buf), "%.17g", v);
  return buf;
}

/// Short human form for file names and labels (0.1 stays "0.1").
inline std::string format_compact(double v) {
  char buf[32];
  std::snprintf(buf, sizeof(buf), "%g", v);
  return buf;
}

/// CSV with a leading '#' metadata block, then a header row and data rows.
class CsvWriter {
public:
  explicit CsvWriter(const std::filesystem::path& path) : out_(path) {
    if (!out_)
      throw std::runtime_error("CsvWriter: cannot open " + path.string());
  }

  void comment(const std::string& line) { out_ << "# " << line << "\n"; }

  void header(std::initializer_list<std::string> cols) {
    bool first = true;
    for (const auto& c : cols) {
      if (!first)
        out_ << ",";
      out_ << c;
      first = false;
    }
    out_ << "\n";
  }

  void row(std::initializer_list<double> values) {
    bool first = true;
    for (double v : values) {
      if (!first)
        out_ << ",";
      out_ << format_number(v);
      first = false;
    }
    out_ << "\n";
  }

  void text_row(std::initializer_list<std::string> values) {
    bool first = true;
    for (const auto& v : values) {
      if (!first)
        out_ << ",";
      out_ << v;
      first = false;
    }
    out_ << "\n";
  }

private:
  std::ofstream out_;
};

inline std::uint64_t fnv1a64(const std::string& bytes) {
  std::uint64_t h = 14695981039346656037ull;
  for (unsigned char c : bytes) {
    h ^= c;
    h *= 1099511628211ull;
  }
  return h;
}

inline std::uint64_t fnv1a64_file(const std::filesystem::path& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in)
    throw std::runtime_error("fnv1a64_file: cannot open " + path.string());
  std::string bytes((std::istreambuf_iterator<char>(in)),
                    std::istreambuf_iterator<char>());
  return fnv1a64(bytes);
}

inline std::string hex64(std::uint64_t v) {
  char buf[17];
  std::snprintf(buf, sizeof(buf), "%016llx",
                static_cast<unsigned long long>(v));
  return buf;
}

} // namespace shockfront
