#pragma once

// Deterministic text output: 12-significant-digit numbers, LF-terminated CSV,
// and atomic file replacement.

#include <cstdio>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <string>
#include <system_error>
#include <vector>

#include <unistd.h>

#include "gatelab/errors.hpp"

namespace gatelab::io {

inline std::string format_number(double x) {
  if (x == 0.0) return "0";  // avoids "-0"
  char buf[32];
  std::snprintf(buf, sizeof buf, "%.12g", x);
  return buf;
}

class CsvTable {
 public:
  explicit CsvTable(std::vector<std::string> header) : columns_(header.size()) { add_row(header); }

  void add_row(const std::vector<std::string>& cells) {
    detail::require(cells.size() == columns_, "csv: row has wrong number of cells");
    for (std::size_t i = 0; i < cells.size(); ++i) {
      if (i) text_ += ',';
      text_ += cells[i];
    }
    text_ += '\n';
  }
  void add_numbers(const std::vector<double>& values) {
    std::vector<std::string> cells;
    cells.reserve(values.size());
    for (double v : values) cells.push_back(format_number(v));
    add_row(cells);
  }
  const std::string& str() const { return text_; }

 private:
  std::size_t columns_;
  std::string text_;
};

/// Flat `key = value` record.
class Record {
 public:
  void add(const std::string& key, const std::string& value) { text_ += key + " = " + value + "\n"; }
  void add(const std::string& key, double value) { add(key, format_number(value)); }
  void add(const std::string& key, bool value) { add(key, std::string(value ? "true" : "false")); }
  const std::string& str() const { return text_; }

 private:
  std::string text_;
};

/// Write `content` to `path` via a temporary file in the same directory and a rename,
/// so readers never observe a partial file. "-" writes to stdout.
inline void write_atomic(const std::filesystem::path& path, const std::string& content) {
  if (path == "-") {
    std::cout << content << std::flush;
    return;
  }
  std::filesystem::path tmp = path;
  tmp += ".tmp." + std::to_string(::getpid());
  {
    std::ofstream out(tmp, std::ios::binary | std::ios::trunc);
    if (!out) throw ValidationError("cannot open output file '" + tmp.string() + "'");
    out << content;
    out.flush();
    if (!out) throw ValidationError("failed writing output file '" + tmp.string() + "'");
  }
  std::error_code ec;
  std::filesystem::rename(tmp, path, ec);
  if (ec) {
    std::filesystem::remove(tmp);
    throw ValidationError("cannot move output into place at '" + path.string() + "': " + ec.message());
  }
}

}  // namespace gatelab::io
