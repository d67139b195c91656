#pragma once

#include <limits>
#include <string>
#include <string_view>

namespace specbound {

/// An l_p exponent p in [1, inf]. Infinity is a distinguished state rather than
/// a large number, so every case split on p (1 <= p < 2, 2 <= p < inf, p = inf)
/// is exact.
class Exponent {
 public:
  // Throws DomainError unless v >= 1 (v may be +inf).
  Exponent(double v);  // NOLINT: implicit so call sites can pass 2.0 or 1.5

  static Exponent infinity() { return Exponent(std::numeric_limits<double>::infinity()); }

  // Accepts a decimal numeral or the literal "inf".
  static Exponent parse(std::string_view text);

  double value() const { return value_; }
  bool is_infinite() const { return value_ == std::numeric_limits<double>::infinity(); }
  bool is_one() const { return value_ == 1.0; }
  bool is_two() const { return value_ == 2.0; }

  // 1/p with 1/inf = 0.
  double reciprocal() const { return is_infinite() ? 0.0 : 1.0 / value_; }

  // Hoelder conjugate p* with 1/p + 1/p* = 1.
  Exponent conjugate() const;

  std::string to_string() const;

  friend bool operator==(const Exponent&, const Exponent&) = default;

 private:
  double value_;
};

}  // namespace specbound
