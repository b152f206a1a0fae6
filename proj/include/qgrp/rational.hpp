#pragma once

#include <compare>
#include <cstdint>
#include <numeric>
#include <stdexcept>
#include <string>

namespace qgrp {

/// Exact rational number kept in lowest terms with a positive denominator.
///
/// Backed by 64-bit integers; every arithmetic operation checks for overflow
/// and throws std::overflow_error instead of wrapping.
class Rational {
 public:
  constexpr Rational() = default;
  constexpr Rational(std::int64_t n) : num_(n) {}  // NOLINT: implicit from integer
  Rational(std::int64_t n, std::int64_t d);

  std::int64_t num() const { return num_; }
  std::int64_t den() const { return den_; }
  bool is_integer() const { return den_ == 1; }
  bool is_zero() const { return num_ == 0; }

  /// Largest integer not exceeding the value.
  std::int64_t floor() const;
  /// Value minus floor(), in [0, 1).
  Rational frac() const;

  Rational operator-() const;
  friend Rational operator+(const Rational& a, const Rational& b);
  friend Rational operator-(const Rational& a, const Rational& b);
  friend Rational operator*(const Rational& a, const Rational& b);
  friend Rational operator/(const Rational& a, const Rational& b);
  Rational& operator+=(const Rational& o) { return *this = *this + o; }
  Rational& operator-=(const Rational& o) { return *this = *this - o; }
  Rational& operator*=(const Rational& o) { return *this = *this * o; }

  friend bool operator==(const Rational&, const Rational&) = default;
  friend std::strong_ordering operator<=>(const Rational& a, const Rational& b);

  /// "p/q", or "p" when integral.
  std::string str() const;
  /// Inverse of str(); also accepts a bare integer.
  static Rational parse(const std::string& text);

 private:
  std::int64_t num_ = 0;
  std::int64_t den_ = 1;
};

namespace detail {
std::int64_t checked_mul(std::int64_t a, std::int64_t b);
std::int64_t checked_add(std::int64_t a, std::int64_t b);
}  // namespace detail

}  // namespace qgrp
