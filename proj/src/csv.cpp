#include "fdcr/csv.hpp"

#include <charconv>
#include <stdexcept>
#include <system_error>

namespace fdcr {

std::string format_csv_number(double v) {
  char buf[40];
  const auto res =
      std::to_chars(buf, buf + sizeof(buf), v, std::chars_format::general, 12);
  if (res.ec != std::errc()) {
    throw std::runtime_error("format_csv_number: conversion failed");
  }
  return std::string(buf, res.ptr);
}

CsvWriter::CsvWriter(const std::filesystem::path& path,
                     const std::vector<std::string>& header)
    : out_(path, std::ios::binary), columns_(header.size()) {
  if (!out_) {
    throw std::runtime_error("CsvWriter: cannot open " + path.string());
  }
  for (size_t i = 0; i < header.size(); ++i) {
    if (i) out_ << ',';
    out_ << header[i];
  }
  out_ << '\n';
}

void CsvWriter::row(const std::vector<CsvCell>& cells) {
  if (cells.size() != columns_) {
    throw std::runtime_error("CsvWriter: column count mismatch");
  }
  for (size_t i = 0; i < cells.size(); ++i) {
    if (i) out_ << ',';
    const auto& v = cells[i].value;
    if (std::holds_alternative<double>(v)) {
      out_ << format_csv_number(std::get<double>(v));
    } else if (std::holds_alternative<long long>(v)) {
      out_ << std::get<long long>(v);
    } else {
      out_ << std::get<std::string>(v);
    }
  }
  out_ << '\n';
}

}  // namespace fdcr
