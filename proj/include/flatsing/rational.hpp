// Copyright 2026 The flatsing Authors.
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//      http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#pragma once

#include <gmpxx.h>

#include <compare>
#include <cstdint>
#include <optional>
#include <string>
#include <string_view>

namespace flatsing {

/// Arbitrary precision rational, always kept in canonical reduced form.
using Rational = mpq_class;

inline constexpr double kPi = 3.14159265358979323846;
inline constexpr double kTwoPi = 2.0 * kPi;

/// Parses "p/q", "p" or a finite decimal such as "0.25".
Rational parse_rational(std::string_view text);
/// Always "p/q", including "n/1" for integers.
std::string format_rational(const Rational& r);
/// Fixed 15 significant digits; the only float format used in reports.
std::string format_double(double v);

inline double to_double(const Rational& r) { return r.get_d(); }
/// Exact conversion of a finite double.
Rational from_double(double v);
Rational rational_pow(const Rational& base, long long exponent);

struct Vec2 {
  Rational x;
  Rational y;

  Vec2() = default;
  Vec2(Rational px, Rational py) : x(std::move(px)), y(std::move(py)) {}
  Vec2(long px, long py) : x(px), y(py) {}

  bool is_zero() const { return sgn(x) == 0 && sgn(y) == 0; }
  double dx() const { return x.get_d(); }
  double dy() const { return y.get_d(); }

  friend bool operator==(const Vec2& a, const Vec2& b) {
    return a.x == b.x && a.y == b.y;
  }
  friend Vec2 operator+(const Vec2& a, const Vec2& b) {
    return {Rational(a.x + b.x), Rational(a.y + b.y)};
  }
  friend Vec2 operator-(const Vec2& a, const Vec2& b) {
    return {Rational(a.x - b.x), Rational(a.y - b.y)};
  }
  friend Vec2 operator-(const Vec2& a) { return {Rational(-a.x), Rational(-a.y)}; }
  friend Vec2 operator*(const Rational& s, const Vec2& a) {
    return {Rational(s * a.x), Rational(s * a.y)};
  }
  Vec2& operator+=(const Vec2& o) {
    x += o.x;
    y += o.y;
    return *this;
  }
  Vec2& operator-=(const Vec2& o) {
    x -= o.x;
    y -= o.y;
    return *this;
  }
};

/// Lexicographic order on (x, y).
bool lex_less(const Vec2& a, const Vec2& b);

inline Rational cross(const Vec2& a, const Vec2& b) { return a.x * b.y - a.y * b.x; }
inline Rational dot(const Vec2& a, const Vec2& b) { return a.x * b.x + a.y * b.y; }
inline Rational norm2(const Vec2& a) { return dot(a, a); }
double norm(const Vec2& a);
/// Angle of a in [0, 2pi).
double angle_of(const Vec2& a);
/// Smallest integer vector that is a positive multiple of a.
Vec2 primitive(const Vec2& a);
/// True when a and b are positive multiples of each other.
bool same_ray(const Vec2& a, const Vec2& b);

/// Exact comparison of counter-clockwise angles measured from ref, in [0, 2pi).
/// Returns <0, 0, >0 like a three-way compare.
int compare_ccw(const Vec2& ref, const Vec2& a, const Vec2& b);
/// Exact counter-clockwise angle comparison against the positive x axis.
int compare_angle(const Vec2& a, const Vec2& b);

/// Rational vector close to (cos t, sin t); exact from the doubles.
Vec2 unit_approx(double t);

/// An angle carried as a float, plus an exact multiple of pi when known.
struct Angle {
  double value = 0.0;
  std::optional<Rational> pi_multiple;

  static Angle from_pi(const Rational& m) { return {m.get_d() * kPi, m}; }
  static Angle approx(double v) { return {v, std::nullopt}; }

  friend Angle operator+(const Angle& a, const Angle& b) {
    Angle r{a.value + b.value, std::nullopt};
    if (a.pi_multiple && b.pi_multiple) {
      r.pi_multiple = Rational(*a.pi_multiple + *b.pi_multiple);
      r.value = r.pi_multiple->get_d() * kPi;
    }
    return r;
  }
  friend Angle operator-(const Angle& a, const Angle& b) {
    Angle r{a.value - b.value, std::nullopt};
    if (a.pi_multiple && b.pi_multiple) {
      r.pi_multiple = Rational(*a.pi_multiple - *b.pi_multiple);
      r.value = r.pi_multiple->get_d() * kPi;
    }
    return r;
  }
};

/// Exact counter-clockwise angle from a to b in (0, 2pi]; equal rays give
/// 2pi unless zero_when_equal is set.
Angle ccw_angle(const Vec2& a, const Vec2& b, bool zero_when_equal = false);

/// Direction: a nonzero rational vector with cached float angle.
class Direction {
 public:
  Direction() : vec_(1, 0), angle_(0.0) {}
  explicit Direction(Vec2 v);

  const Vec2& vec() const { return vec_; }
  double angle() const { return angle_; }
  double ux() const;
  double uy() const;

  friend bool operator==(const Direction& a, const Direction& b) {
    return same_ray(a.vec_, b.vec_);
  }
  Direction reversed() const { return Direction(-vec_); }

 private:
  Vec2 vec_;
  double angle_;
};

}  // namespace flatsing
