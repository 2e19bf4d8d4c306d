#pragma once

#include <cstdint>
#include <cstdio>
#include <filesystem>
#include <fstream>
#include <stdexcept>
#include <string>
#include <vector>

namespace mixlab {

/// Shortest round-trip decimal form, stable across platforms for a fixed
/// binary (CSV bytes are part of the reproducibility contract).
inline std::string format_real(double v) {
  char buf[64];
  std::snprintf(buf, sizeof(buf), "%.17g", v);
  return buf;
}

class CsvFile {
 public:
  CsvFile(std::filesystem::path path, const std::vector<std::string>& header)
      : path_(std::move(path)), out_(path_) {
    if (!out_) throw std::runtime_error("cannot open " + path_.string());
    write_row(header);
  }

  void row(const std::vector<std::string>& cells) { write_row(cells); }

  const std::filesystem::path& path() const { return path_; }

 private:
  void write_row(const std::vector<std::string>& cells) {
    for (std::size_t i = 0; i < cells.size(); ++i) {
      if (i > 0) out_ << ',';
      out_ << cells[i];
    }
    out_ << '\n';
  }

  std::filesystem::path path_;
  std::ofstream out_;
};

}  // namespace mixlab
