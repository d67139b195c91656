#include "specbound/exponent.hpp"

#include <charconv>
#include <cmath>
#include <cstdio>
#include <string>

#include "specbound/error.hpp"

namespace specbound {

Exponent::Exponent(double v) : value_(v) {
  if (std::isnan(v) || v < 1.0) {
    throw DomainError("exponent must lie in [1, inf], got " + std::to_string(v));
  }
}

Exponent Exponent::parse(std::string_view text) {
  if (text == "inf" || text == "Inf" || text == "INF" || text == "infinity") {
    return infinity();
  }
  double v = 0.0;
  const auto* first = text.data();
  const auto* last = text.data() + text.size();
  const auto [ptr, ec] = std::from_chars(first, last, v);
  if (ec != std::errc() || ptr != last) {
    throw std::invalid_argument("cannot parse exponent '" + std::string(text) + "'");
  }
  return Exponent(v);
}

Exponent Exponent::conjugate() const {
  if (is_infinite()) return Exponent(1.0);
  if (is_one()) return infinity();
  return Exponent(value_ / (value_ - 1.0));
}

std::string Exponent::to_string() const {
  if (is_infinite()) return "inf";
  char buf[32];
  std::snprintf(buf, sizeof buf, "%.17g", value_);
  return buf;
}

}  // namespace specbound
