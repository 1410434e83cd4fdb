#include "fdcr/units.hpp"

#include <cmath>
#include <cstdlib>
#include <initializer_list>
#include <utility>

#include "fdcr/errors.hpp"

namespace fdcr {

namespace {

struct Parsed {
  double value;
  std::string unit;
};

Parsed split_quantity(const std::string& text, const std::string& where) {
  const char* begin = text.c_str();
  char* end = nullptr;
  const double value = std::strtod(begin, &end);
  if (end == begin) {
    throw ConfigError(where + ": cannot parse quantity '" + text + "'");
  }
  std::string unit(end);
  const auto first = unit.find_first_not_of(' ');
  if (first == std::string::npos) {
    throw ConfigError(where + ": missing unit suffix in '" + text +
                      "' (units are mandatory)");
  }
  const auto last = unit.find_last_not_of(' ');
  unit = unit.substr(first, last - first + 1);
  return Parsed{value, unit};
}

double convert(
    const std::string& text, const std::string& where,
    std::initializer_list<std::pair<const char*, double>> scales,
    const char* expected) {
  const Parsed p = split_quantity(text, where);
  for (const auto& [unit, scale] : scales) {
    if (p.unit == unit) return p.value * scale;
  }
  throw ConfigError(where + ": unknown unit '" + p.unit + "' in '" + text +
                    "' (expected " + expected + ")");
}

}  // namespace

double parse_duration_s(const std::string& text, const std::string& where) {
  const double v = convert(text, where,
                           {{"s", 1.0}, {"ms", 1e-3}, {"us", 1e-6}},
                           "s, ms, us");
  if (!(v >= 0.0)) throw ConfigError(where + ": duration must be nonnegative");
  return v;
}

double parse_frequency_hz(const std::string& text, const std::string& where) {
  const double v = convert(
      text, where, {{"Hz", 1.0}, {"kHz", 1e3}, {"MHz", 1e6}, {"GHz", 1e9}},
      "Hz, kHz, MHz, GHz");
  if (!(v > 0.0)) throw ConfigError(where + ": frequency must be positive");
  return v;
}

double parse_rate_per_s(const std::string& text, const std::string& where) {
  const double v =
      convert(text, where, {{"/s", 1.0}, {"/ms", 1e3}}, "/s, /ms");
  if (!(v > 0.0)) throw ConfigError(where + ": rate must be positive");
  return v;
}

double parse_ratio_linear(const std::string& text, const std::string& where) {
  const Parsed p = split_quantity(text, where);
  double linear;
  if (p.unit == "dB") {
    linear = std::pow(10.0, p.value / 10.0);
  } else if (p.unit == "linear") {
    linear = p.value;
  } else {
    throw ConfigError(where + ": unknown unit '" + p.unit + "' in '" + text +
                      "' (expected dB or linear)");
  }
  if (!(linear > 0.0)) throw ConfigError(where + ": ratio must be positive");
  return linear;
}

double parse_power(const std::string& text, const std::string& where) {
  const double v = convert(text, where,
                           {{"linear", 1.0}, {"W", 1.0}, {"mW", 1e-3}},
                           "linear, W, mW");
  if (!(v > 0.0)) throw ConfigError(where + ": power must be positive");
  return v;
}

double parse_distance_m(const std::string& text, const std::string& where) {
  const double v =
      convert(text, where, {{"m", 1.0}, {"km", 1e3}}, "m, km");
  if (!(v > 0.0)) throw ConfigError(where + ": distance must be positive");
  return v;
}

double linear_to_db(double linear) { return 10.0 * std::log10(linear); }

}  // namespace fdcr
