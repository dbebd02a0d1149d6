#pragma once

#include <cmath>
#include <cstdint>
#include <numeric>
#include <string>
#include <string_view>

#include "vprs/error.hpp"

namespace vprs {

// Non-negative exact fraction of object counts. All threshold tests in the
// rough-set code compare Ratios by cross-multiplication, never as doubles.
// Numerators and denominators stay below 2^31 so products fit in int64.
struct Ratio {
  std::int64_t num = 0;
  std::int64_t den = 1;

  constexpr Ratio() = default;
  constexpr Ratio(std::int64_t n, std::int64_t d) : num(n), den(d) {
    if (den <= 0) throw DomainError("ratio denominator must be positive");
  }

  [[nodiscard]] double value() const { return static_cast<double>(num) / static_cast<double>(den); }

  [[nodiscard]] Ratio reduced() const {
    const auto g = std::gcd(num, den);
    return g == 0 ? *this : Ratio{num / g, den / g};
  }

  [[nodiscard]] Ratio complement() const { return Ratio{den - num, den}; }

  friend constexpr bool operator==(const Ratio& a, const Ratio& b) { return a.num * b.den == b.num * a.den; }
  friend constexpr bool operator<(const Ratio& a, const Ratio& b) { return a.num * b.den < b.num * a.den; }
  friend constexpr bool operator>(const Ratio& a, const Ratio& b) { return b < a; }
  friend constexpr bool operator<=(const Ratio& a, const Ratio& b) { return !(b < a); }
  friend constexpr bool operator>=(const Ratio& a, const Ratio& b) { return !(a < b); }

  [[nodiscard]] std::string str() const { return std::to_string(num) + "/" + std::to_string(den); }

  // Closest fraction with denominator <= max_den (continued-fraction convergents).
  static Ratio approximate(double x, std::int64_t max_den = 1'000'000) {
    if (!std::isfinite(x) || x < 0) throw DomainError("cannot approximate non-finite or negative value as a ratio");
    std::int64_t p0 = 0, q0 = 1, p1 = 1, q1 = 0;
    double r = x;
    for (int it = 0; it < 64; ++it) {
      const double a_d = std::floor(r);
      if (a_d > 1e12) break;
      const auto a = static_cast<std::int64_t>(a_d);
      const std::int64_t q2 = q0 + a * q1;
      if (q2 > max_den) break;
      const std::int64_t p2 = p0 + a * p1;
      p0 = p1; q0 = q1; p1 = p2; q1 = q2;
      const double frac = r - a_d;
      if (frac < 1e-15 || std::abs(static_cast<double>(p1) / static_cast<double>(q1) - x) < 1e-15) break;
      r = 1.0 / frac;
    }
    if (q1 == 0) return Ratio{static_cast<std::int64_t>(std::llround(x)), 1};
    return Ratio{p1, q1}.reduced();
  }

  // Exact parse of a plain decimal literal such as "0.6" or "1".
  static Ratio parse_decimal(std::string_view text) {
    if (text.empty()) throw DomainError("empty decimal literal");
    std::int64_t num = 0, den = 1;
    bool seen_dot = false, seen_digit = false;
    for (char ch : text) {
      if (ch == '.') {
        if (seen_dot) throw DomainError("malformed decimal literal '" + std::string(text) + "'");
        seen_dot = true;
      } else if (ch >= '0' && ch <= '9') {
        seen_digit = true;
        if (num > 100'000'000 || (seen_dot && den >= 1'000'000'000)) {
          throw DomainError("decimal literal '" + std::string(text) + "' has too many digits");
        }
        num = num * 10 + (ch - '0');
        if (seen_dot) den *= 10;
      } else {
        throw DomainError("malformed decimal literal '" + std::string(text) + "'");
      }
    }
    if (!seen_digit) throw DomainError("malformed decimal literal '" + std::string(text) + "'");
    return Ratio{num, den}.reduced();
  }
};

}  // namespace vprs
