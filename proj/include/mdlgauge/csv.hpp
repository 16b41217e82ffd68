#pragma once

#include <filesystem>
#include <initializer_list>
#include <string>
#include <string_view>
#include <vector>

namespace mdlgauge::csv {

// RFC-4180 quoting: fields containing a comma, quote, CR or LF are quoted.
std::string escape(std::string_view field);

// Fixed 6-fractional-digit rendering used for every real-valued column.
std::string fixed6(double value);

class Writer {
 public:
  void row(std::initializer_list<std::string> fields);
  void row(const std::vector<std::string>& fields);
  const std::string& str() const { return buf_; }

 private:
  std::string buf_;
};

// Writes to a sibling temp file and renames it over `path`, so readers never
// see a partial report.
void write_atomically(const std::filesystem::path& path, std::string_view contents);

}  // namespace mdlgauge::csv
