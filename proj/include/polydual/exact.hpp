#pragma once

// Exact scalars and small fixed-size vectors.
//
// Everything in the library is computed over Rational, which GMP keeps in
// lowest terms with a positive denominator. There is no floating point
// anywhere; Euclidean lengths only ever appear squared.

#include <algorithm>
#include <cstdint>
#include <optional>
#include <ostream>
#include <string>
#include <string_view>

#include <boost/multiprecision/gmp.hpp>

namespace polydual {

namespace mp = boost::multiprecision;

using Rational = mp::number<mp::gmp_rational, mp::et_off>;
using Integer = mp::number<mp::gmp_int, mp::et_off>;

inline Integer numerator(const Rational& q) { return Integer(mp::numerator(q)); }
inline Integer denominator(const Rational& q) { return Integer(mp::denominator(q)); }

inline bool is_integer(const Rational& q) { return denominator(q) == 1; }

inline int sign(const Rational& q) { return q.sign(); }
inline int sign(const Integer& z) { return z.sign(); }

// Floor division for a positive divisor (GMP's operator/ truncates).
inline Integer floor_div(const Integer& n, const Integer& d) {
  Integer q = n / d;
  if (n % d != 0 && (n.sign() < 0) != (d.sign() < 0)) q -= 1;
  return q;
}

inline Integer floor(const Rational& q) { return floor_div(numerator(q), denominator(q)); }
inline Integer ceil(const Rational& q) { return -floor(-q); }

inline Integer pow(const Integer& base, unsigned exponent) {
  return Integer(mp::pow(base, exponent));
}

inline Integer lcm(const Integer& a, const Integer& b) {
  if (a == 0 || b == 0) return Integer(0);
  return Integer(mp::lcm(a, b));
}

// Largest integer r with r*r <= n, for n >= 0.
inline Integer isqrt(const Integer& n) { return Integer(mp::sqrt(n)); }

// Accepts "[+-]digits" or "[+-]digits/digits" with a nonzero denominator.
inline std::optional<Rational> parse_rational(std::string_view text) {
  auto valid_integer = [](std::string_view s, bool allow_sign) {
    if (allow_sign && !s.empty() && (s.front() == '-' || s.front() == '+')) s.remove_prefix(1);
    return !s.empty() && std::all_of(s.begin(), s.end(), [](char c) { return c >= '0' && c <= '9'; });
  };
  // GMP would read a leading zero as an octal prefix
  auto to_integer = [](std::string_view s) {
    const bool neg = s.front() == '-';
    if (s.front() == '-' || s.front() == '+') s.remove_prefix(1);
    s.remove_prefix(std::min(s.find_first_not_of('0'), s.size() - 1));
    const Integer z(std::string{s});
    return neg ? Integer(-z) : z;
  };
  const auto slash = text.find('/');
  if (slash == std::string_view::npos) {
    if (!valid_integer(text, true)) return std::nullopt;
    return Rational(to_integer(text));
  }
  const auto num = text.substr(0, slash);
  const auto den = text.substr(slash + 1);
  if (!valid_integer(num, true) || !valid_integer(den, false)) return std::nullopt;
  Integer d = to_integer(den);
  if (d == 0) return std::nullopt;
  return Rational(to_integer(num), d);
}

inline std::string to_string(const Rational& q) { return q.str(); }
inline std::string to_string(const Integer& z) { return z.str(); }

struct Vec2 {
  Rational x, y;

  friend bool operator==(const Vec2&, const Vec2&) = default;
  friend Vec2 operator+(const Vec2& a, const Vec2& b) { return {a.x + b.x, a.y + b.y}; }
  friend Vec2 operator-(const Vec2& a, const Vec2& b) { return {a.x - b.x, a.y - b.y}; }
  friend Vec2 operator-(const Vec2& a) { return {-a.x, -a.y}; }
  friend Vec2 operator*(const Rational& s, const Vec2& a) { return {s * a.x, s * a.y}; }
  friend Vec2 operator/(const Vec2& a, const Rational& s) { return {a.x / s, a.y / s}; }
  Vec2& operator+=(const Vec2& b) { x += b.x; y += b.y; return *this; }
  Vec2& operator-=(const Vec2& b) { x -= b.x; y -= b.y; return *this; }

  bool is_zero() const { return x == 0 && y == 0; }
};

struct Vec3 {
  Rational x, y, z;

  friend bool operator==(const Vec3&, const Vec3&) = default;
  friend Vec3 operator+(const Vec3& a, const Vec3& b) { return {a.x + b.x, a.y + b.y, a.z + b.z}; }
  friend Vec3 operator-(const Vec3& a, const Vec3& b) { return {a.x - b.x, a.y - b.y, a.z - b.z}; }
  friend Vec3 operator-(const Vec3& a) { return {-a.x, -a.y, -a.z}; }
  friend Vec3 operator*(const Rational& s, const Vec3& a) { return {s * a.x, s * a.y, s * a.z}; }
  friend Vec3 operator/(const Vec3& a, const Rational& s) { return {a.x / s, a.y / s, a.z / s}; }
  Vec3& operator+=(const Vec3& b) { x += b.x; y += b.y; z += b.z; return *this; }
  Vec3& operator-=(const Vec3& b) { x -= b.x; y -= b.y; z -= b.z; return *this; }

  bool is_zero() const { return x == 0 && y == 0 && z == 0; }
  const Rational& operator[](int k) const { return k == 0 ? x : (k == 1 ? y : z); }
  Rational& operator[](int k) { return k == 0 ? x : (k == 1 ? y : z); }
};

inline std::ostream& operator<<(std::ostream& os, const Vec2& v) {
  return os << '(' << v.x << ',' << v.y << ')';
}
inline std::ostream& operator<<(std::ostream& os, const Vec3& v) {
  return os << '(' << v.x << ',' << v.y << ',' << v.z << ')';
}

inline Rational dot(const Vec2& a, const Vec2& b) { return a.x * b.x + a.y * b.y; }
inline Rational dot(const Vec3& a, const Vec3& b) { return a.x * b.x + a.y * b.y + a.z * b.z; }

inline Rational norm_sq(const Vec2& a) { return dot(a, a); }
inline Rational norm_sq(const Vec3& a) { return dot(a, a); }

// z-component of the planar cross product.
inline Rational cross(const Vec2& a, const Vec2& b) { return a.x * b.y - a.y * b.x; }

inline Vec3 cross(const Vec3& a, const Vec3& b) {
  return {a.y * b.z - a.z * b.y, a.z * b.x - a.x * b.z, a.x * b.y - a.y * b.x};
}

// Determinant of the 3x3 matrix with columns a, b, c.
inline Rational det3(const Vec3& a, const Vec3& b, const Vec3& c) { return dot(a, cross(b, c)); }

// [p q r]: determinant of the columns (p,1), (q,1), (r,1). Twice the signed
// area, positive for a counterclockwise triangle.
inline Rational bracket3(const Vec2& p, const Vec2& q, const Vec2& r) { return cross(q - p, r - p); }

// [a b c d]: determinant of the columns (a,1), (b,1), (c,1), (d,1), with the
// row of ones last. Expanding along that row gives -det3(b-a, c-a, d-a), so
// the value is positive when d lies on the side of plane(a,b,c) opposite to
// the normal (b-a) x (c-a).
inline Rational bracket4(const Vec3& a, const Vec3& b, const Vec3& c, const Vec3& d) {
  return -det3(b - a, c - a, d - a);
}

inline bool is_integer(const Vec2& v) { return is_integer(v.x) && is_integer(v.y); }
inline bool is_integer(const Vec3& v) { return is_integer(v.x) && is_integer(v.y) && is_integer(v.z); }

// Index of a nonzero component, or -1 for the zero vector.
inline int nonzero_component(const Vec3& v) {
  for (int k = 0; k < 3; ++k)
    if (v[k] != 0) return k;
  return -1;
}

// If a = s*b for some scalar s (b != 0), returns s.
inline std::optional<Rational> parallel_factor(const Vec3& a, const Vec3& b) {
  const int k = nonzero_component(b);
  if (k < 0) return std::nullopt;
  Rational s = a[k] / b[k];
  if (s * b == a) return s;
  return std::nullopt;
}

}  // namespace polydual
