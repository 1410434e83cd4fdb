#pragma once

#include <filesystem>
#include <fstream>
#include <string>
#include <variant>
#include <vector>

namespace fdcr {

// One CSV cell; doubles are rendered with 12 significant digits through
// std::to_chars, so output bytes do not depend on locale or platform.
struct CsvCell {
  std::variant<double, long long, std::string> value;

  CsvCell(double v) : value(v) {}
  CsvCell(int v) : value(static_cast<long long>(v)) {}
  CsvCell(long long v) : value(v) {}
  CsvCell(const char* v) : value(std::string(v)) {}
  CsvCell(std::string v) : value(std::move(v)) {}
};

std::string format_csv_number(double v);

class CsvWriter {
 public:
  CsvWriter(const std::filesystem::path& path,
            const std::vector<std::string>& header);

  void row(const std::vector<CsvCell>& cells);

 private:
  std::ofstream out_;
  size_t columns_;
};

}  // namespace fdcr
