#pragma once

#include <algorithm>
#include <string>

#include <json.hpp>

#include "kricci/errors.hpp"
#include "kricci/linalg.hpp"

namespace kricci::detail {

/// Parses JSON text; on failure throws ParseError naming line and column.
inline nlohmann::json parse_json(const std::string& text,
                                 const std::string& origin) {
  try {
    return nlohmann::json::parse(text);
  } catch (const nlohmann::json::parse_error& e) {
    std::size_t line = 1;
    std::size_t col = 1;
    const std::size_t stop = std::min<std::size_t>(e.byte, text.size() + 1);
    for (std::size_t i = 0; i + 1 < stop; ++i) {
      if (text[i] == '\n') {
        ++line;
        col = 1;
      } else {
        ++col;
      }
    }
    throw ParseError(origin + ": JSON parse error at line " +
                     std::to_string(line) + ", column " + std::to_string(col) +
                     ": " + e.what());
  }
}

inline nlohmann::json complex_to_json(Complex z) {
  return nlohmann::json::array({z.real(), z.imag()});
}

inline Complex complex_from_json(const nlohmann::json& j,
                                 const std::string& origin) {
  if (j.is_number()) return Complex(j.get<double>(), 0.0);
  if (!j.is_array() || j.size() != 2 || !j[0].is_number() ||
      !j[1].is_number()) {
    throw ParseError(origin + ": expected [re, im] pair");
  }
  return Complex(j[0].get<double>(), j[1].get<double>());
}

template <typename T>
T require(const nlohmann::json& j, const char* key, const std::string& origin) {
  if (!j.is_object() || !j.contains(key)) {
    throw ParseError(origin + ": missing key '" + key + "'");
  }
  try {
    return j.at(key).get<T>();
  } catch (const nlohmann::json::exception& e) {
    throw ParseError(origin + ": bad value for '" + key + "': " + e.what());
  }
}

template <typename T>
T value_or(const nlohmann::json& j, const char* key, T fallback,
           const std::string& origin) {
  if (!j.is_object() || !j.contains(key)) return fallback;
  return require<T>(j, key, origin);
}

}  // namespace kricci::detail
