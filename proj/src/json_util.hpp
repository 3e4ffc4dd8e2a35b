#pragma once

#include <charconv>
#include <cmath>

#include <nlohmann/json.hpp>

#include "tinv/ingest.hpp"

namespace tinv::detail {

// Value as it reads back from its 12-significant-digit text form.
inline double round12(double x) {
  if (!std::isfinite(x)) return x;
  const std::string text = format_number(x);
  double out = x;
  std::from_chars(text.data(), text.data() + text.size(), out);
  return out;
}

// JSON value for a double: rounded to 12 digits, null when not finite.
inline nlohmann::ordered_json json_number(double x) {
  if (!std::isfinite(x)) return nullptr;
  return round12(x);
}

}  // namespace tinv::detail
