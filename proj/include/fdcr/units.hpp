#pragma once

#include <string>

namespace fdcr {

// Parsers for the quantity strings used throughout the config schema
// ("4 ms", "6 MHz", "20 dB", "0.01 /s", ...). Every dimensioned value must
// carry a unit; a bare number is a schema error. `where` names the config
// path for diagnostics.

double parse_duration_s(const std::string& text, const std::string& where);
double parse_frequency_hz(const std::string& text, const std::string& where);
double parse_rate_per_s(const std::string& text, const std::string& where);
// "x dB" -> 10^(x/10); "x linear" -> x (must be positive).
double parse_ratio_linear(const std::string& text, const std::string& where);
double parse_power(const std::string& text, const std::string& where);
double parse_distance_m(const std::string& text, const std::string& where);

double linear_to_db(double linear);

}  // namespace fdcr
