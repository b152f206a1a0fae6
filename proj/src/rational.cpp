#include "qgrp/rational.hpp"

#include <charconv>

namespace qgrp {

namespace detail {

std::int64_t checked_mul(std::int64_t a, std::int64_t b) {
  std::int64_t r;
  if (__builtin_mul_overflow(a, b, &r)) throw std::overflow_error("rational overflow");
  return r;
}

std::int64_t checked_add(std::int64_t a, std::int64_t b) {
  std::int64_t r;
  if (__builtin_add_overflow(a, b, &r)) throw std::overflow_error("rational overflow");
  return r;
}

}  // namespace detail

using detail::checked_add;
using detail::checked_mul;

Rational::Rational(std::int64_t n, std::int64_t d) {
  if (d == 0) throw std::domain_error("zero denominator");
  if (d < 0) {
    n = checked_mul(n, -1);
    d = checked_mul(d, -1);
  }
  std::int64_t g = std::gcd(n, d);
  num_ = n / g;
  den_ = d / g;
}

std::int64_t Rational::floor() const {
  std::int64_t q = num_ / den_;
  if (num_ % den_ != 0 && num_ < 0) --q;
  return q;
}

Rational Rational::frac() const { return *this - Rational(floor()); }

Rational Rational::operator-() const { return Rational(checked_mul(num_, -1), den_); }

Rational operator+(const Rational& a, const Rational& b) {
  std::int64_t g = std::gcd(a.den_, b.den_);
  std::int64_t n = checked_add(checked_mul(a.num_, b.den_ / g), checked_mul(b.num_, a.den_ / g));
  return Rational(n, checked_mul(a.den_, b.den_ / g));
}

Rational operator-(const Rational& a, const Rational& b) { return a + (-b); }

Rational operator*(const Rational& a, const Rational& b) {
  std::int64_t g1 = std::gcd(a.num_, b.den_);
  std::int64_t g2 = std::gcd(b.num_, a.den_);
  if (g1 == 0) g1 = 1;
  if (g2 == 0) g2 = 1;
  return Rational(checked_mul(a.num_ / g1, b.num_ / g2), checked_mul(a.den_ / g2, b.den_ / g1));
}

Rational operator/(const Rational& a, const Rational& b) {
  if (b.num_ == 0) throw std::domain_error("division by zero");
  return a * Rational(b.den_, b.num_);
}

std::strong_ordering operator<=>(const Rational& a, const Rational& b) {
  __int128 l = static_cast<__int128>(a.num_) * b.den_;
  __int128 r = static_cast<__int128>(b.num_) * a.den_;
  if (l < r) return std::strong_ordering::less;
  if (l > r) return std::strong_ordering::greater;
  return std::strong_ordering::equal;
}

std::string Rational::str() const {
  if (den_ == 1) return std::to_string(num_);
  return std::to_string(num_) + "/" + std::to_string(den_);
}

Rational Rational::parse(const std::string& text) {
  auto slash = text.find('/');
  auto to_int = [&](std::string_view s) {
    std::int64_t v = 0;
    auto [p, ec] = std::from_chars(s.data(), s.data() + s.size(), v);
    if (ec != std::errc() || p != s.data() + s.size() || s.empty())
      throw std::invalid_argument("bad rational: " + text);
    return v;
  };
  std::string_view sv(text);
  if (slash == std::string::npos) return Rational(to_int(sv));
  return Rational(to_int(sv.substr(0, slash)), to_int(sv.substr(slash + 1)));
}

}  // namespace qgrp
