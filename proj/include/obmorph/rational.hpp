#pragma once

// Exact rational scalars and points.
//
// All geometric decisions in this library are made over arbitrary-precision
// rationals; floating point appears only in rendering output.

#include <boost/multiprecision/cpp_int.hpp>
#include <optional>
#include <stdexcept>
#include <string>
#include <utility>

namespace obmorph {

using Integer  = boost::multiprecision::cpp_int;
using Rational = boost::multiprecision::cpp_rational;

inline Integer num(const Rational& q) { return boost::multiprecision::numerator(q); }
inline Integer den(const Rational& q) { return boost::multiprecision::denominator(q); }

inline int sign(const Rational& q) { return q.sign(); }
inline int sign(const Integer& z) { return z.sign(); }

inline Rational abs(const Rational& q) { return q < 0 ? Rational(-q) : q; }

// Canonical "num/den" serialization ("7", "-3/4").  The denominator is
// omitted when it is 1; cpp_rational keeps gcd==1 and den>0 invariantly.
inline std::string to_string(const Rational& q) {
  Integer n = num(q), d = den(q);
  std::string s = n.str();
  if (d != 1) { s += "/"; s += d.str(); }
  return s;
}

// Parse "num", "num/den" (optional sign on the numerator).  Returns nullopt
// on malformed input or zero denominator.
inline std::optional<Rational> parse_rational(const std::string& s) {
  if (s.empty()) return std::nullopt;
  auto slash = s.find('/');
  auto is_int = [](const std::string& t) {
    if (t.empty()) return false;
    std::size_t i = (t[0] == '-' || t[0] == '+') ? 1 : 0;
    if (i == t.size()) return false;
    for (; i < t.size(); ++i)
      if (t[i] < '0' || t[i] > '9') return false;
    return true;
  };
  try {
    if (slash == std::string::npos) {
      if (!is_int(s)) return std::nullopt;
      return Rational(Integer(s[0] == '+' ? s.substr(1) : s));
    }
    std::string ns = s.substr(0, slash), ds = s.substr(slash + 1);
    if (!is_int(ns) || !is_int(ds)) return std::nullopt;
    if (ns[0] == '+') ns.erase(0, 1);
    if (ds[0] == '+') ds.erase(0, 1);
    Integer n(ns), d(ds);
    if (d == 0) return std::nullopt;
    if (d < 0) { d = -d; n = -n; }  // cpp_rational requires a positive denominator
    return Rational(n, d);
  } catch (const std::exception&) {
    return std::nullopt;
  }
}

struct Point2 {
  Rational x, y;

  Point2() = default;
  Point2(Rational xx, Rational yy) : x(std::move(xx)), y(std::move(yy)) {}

  friend Point2 operator+(const Point2& a, const Point2& b) { return {a.x + b.x, a.y + b.y}; }
  friend Point2 operator-(const Point2& a, const Point2& b) { return {a.x - b.x, a.y - b.y}; }
  friend Point2 operator*(const Rational& s, const Point2& p) { return {s * p.x, s * p.y}; }
  friend bool operator==(const Point2& a, const Point2& b) { return a.x == b.x && a.y == b.y; }
  friend bool operator!=(const Point2& a, const Point2& b) { return !(a == b); }
  // Lexicographic; handy for canonical ordering and map keys.
  friend bool operator<(const Point2& a, const Point2& b) {
    if (a.x != b.x) return a.x < b.x;
    return a.y < b.y;
  }
};

inline Rational dot(const Point2& a, const Point2& b) { return a.x * b.x + a.y * b.y; }
inline Rational cross(const Point2& a, const Point2& b) { return a.x * b.y - a.y * b.x; }
inline Rational dist2(const Point2& a, const Point2& b) {
  Rational dx = a.x - b.x, dy = a.y - b.y;
  return dx * dx + dy * dy;
}

// Midpoint-style interpolation p + t (q - p) at a rational time.
inline Point2 lerp(const Point2& p, const Point2& q, const Rational& t) {
  return {p.x + t * (q.x - p.x), p.y + t * (q.y - p.y)};
}

// A rational r with 0 < r and r^2 <= s (s > 0): a power of two works and is
// cheap to find.  Used to turn exact squared-distance clearances into usable
// rational radii.
inline Rational rational_below_sqrt(const Rational& s) {
  if (s <= 0) throw std::invalid_argument("rational_below_sqrt: s must be positive");
  Rational r(1);
  while (r * r > s) r /= 2;
  while ((2 * r) * (2 * r) <= s) r *= 2;
  return r;
}

}  // namespace obmorph
