#pragma once

#include <cstdint>
#include <numeric>
#include <stdexcept>
#include <string>

namespace ghz {

// Exact rational on int64 with __int128 intermediates.  Values in this
// project stay tiny (grid coordinates, phases mod 2, 2^-32 draws), so no
// arbitrary-precision fallback is needed; overflow of an intermediate
// product is checked before narrowing.
struct Rational {
  std::int64_t num = 0;
  std::int64_t den = 1;

  constexpr Rational() = default;
  constexpr Rational(std::int64_t n) : num(n), den(1) {}
  constexpr Rational(std::int64_t n, std::int64_t d) : num(n), den(d) {
    if (den == 0) throw std::invalid_argument("Rational: zero denominator");
    normalize();
  }

  constexpr void normalize() {
    if (den < 0) { num = -num; den = -den; }
    const std::int64_t g = std::gcd(num < 0 ? -num : num, den);
    if (g > 1) { num /= g; den /= g; }
    if (num == 0) den = 1;
  }

  static constexpr std::int64_t narrow(__int128 v) {
    if (v > INT64_MAX || v < INT64_MIN)
      throw std::overflow_error("Rational: intermediate overflow");
    return static_cast<std::int64_t>(v);
  }

  static constexpr Rational from_i128(__int128 n, __int128 d) {
    if (d < 0) { n = -n; d = -d; }
    const __int128 a = n < 0 ? -n : n;
    __int128 x = a, y = d;
    while (y != 0) { const __int128 t = x % y; x = y; y = t; }
    if (x > 1) { n /= x; d /= x; }
    Rational r;
    r.num = narrow(n);
    r.den = narrow(d == 0 ? 1 : d);
    if (r.num == 0) r.den = 1;
    return r;
  }

  constexpr bool is_integer() const { return den == 1; }
  constexpr bool is_zero() const { return num == 0; }
  constexpr double value() const {
    return static_cast<double>(num) / static_cast<double>(den);
  }

  friend constexpr Rational operator+(const Rational& a, const Rational& b) {
    return from_i128(static_cast<__int128>(a.num) * b.den +
                         static_cast<__int128>(b.num) * a.den,
                     static_cast<__int128>(a.den) * b.den);
  }
  friend constexpr Rational operator-(const Rational& a, const Rational& b) {
    return from_i128(static_cast<__int128>(a.num) * b.den -
                         static_cast<__int128>(b.num) * a.den,
                     static_cast<__int128>(a.den) * b.den);
  }
  friend constexpr Rational operator*(const Rational& a, const Rational& b) {
    return from_i128(static_cast<__int128>(a.num) * b.num,
                     static_cast<__int128>(a.den) * b.den);
  }
  friend constexpr Rational operator/(const Rational& a, const Rational& b) {
    if (b.num == 0) throw std::invalid_argument("Rational: division by zero");
    return from_i128(static_cast<__int128>(a.num) * b.den,
                     static_cast<__int128>(a.den) * b.num);
  }
  constexpr Rational operator-() const {
    Rational r;
    r.num = -num;
    r.den = den;
    return r;
  }
  Rational& operator+=(const Rational& o) { return *this = *this + o; }
  Rational& operator-=(const Rational& o) { return *this = *this - o; }
  Rational& operator*=(const Rational& o) { return *this = *this * o; }

  friend constexpr bool operator==(const Rational& a, const Rational& b) {
    return a.num == b.num && a.den == b.den;
  }
  friend constexpr bool operator<(const Rational& a, const Rational& b) {
    return static_cast<__int128>(a.num) * b.den <
           static_cast<__int128>(b.num) * a.den;
  }
  friend constexpr bool operator<=(const Rational& a, const Rational& b) {
    return !(b < a);
  }
  friend constexpr bool operator>(const Rational& a, const Rational& b) {
    return b < a;
  }
  friend constexpr bool operator>=(const Rational& a, const Rational& b) {
    return !(a < b);
  }

  // floor(a / b) as an integer, b > 0.
  static constexpr std::int64_t floor_div(const Rational& a, const Rational& b) {
    const __int128 n = static_cast<__int128>(a.num) * b.den;
    const __int128 d = static_cast<__int128>(a.den) * b.num;
    __int128 q = n / d;
    if ((n % d != 0) && ((n < 0) != (d < 0))) --q;
    return narrow(q);
  }

  // Nonnegative residue: a - m*floor(a/m), in [0, m) for m > 0.
  constexpr Rational mod(const Rational& m) const {
    return *this - m * Rational(floor_div(*this, m));
  }
  constexpr Rational mod2() const { return mod(Rational(2)); }

  std::string str() const {
    if (den == 1) return std::to_string(num);
    return std::to_string(num) + "/" + std::to_string(den);
  }

  static Rational parse(const std::string& s) {
    const auto integer = [&s](std::string t) {
      const auto b = t.find_first_not_of(" \t");
      const auto e = t.find_last_not_of(" \t");
      if (b == std::string::npos)
        throw std::invalid_argument("Rational: cannot parse '" + s + "'");
      t = t.substr(b, e - b + 1);
      std::size_t pos = 0;
      std::int64_t v = 0;
      try {
        v = std::stoll(t, &pos);
      } catch (const std::logic_error&) {
        throw std::invalid_argument("Rational: cannot parse '" + s + "'");
      }
      if (pos != t.size())
        throw std::invalid_argument("Rational: cannot parse '" + s + "'");
      return v;
    };
    const auto slash = s.find('/');
    if (slash == std::string::npos) return Rational(integer(s));
    const std::int64_t den = integer(s.substr(slash + 1));
    if (den == 0)
      throw std::invalid_argument("Rational: cannot parse '" + s + "'");
    return Rational(integer(s.substr(0, slash)), den);
  }
};

}  // namespace ghz
