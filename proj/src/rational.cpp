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

#include "flatsing/rational.hpp"

#include <cmath>
#include <cstdio>

#include "flatsing/error.hpp"

namespace flatsing {

const char* error_name(ErrorCode code) {
  switch (code) {
    case ErrorCode::kInvalidArgument: return "InvalidArgument";
    case ErrorCode::kMalformedGeometry: return "MalformedGeometry";
    case ErrorCode::kLocatorRangeExceeded: return "LocatorRangeExceeded";
    case ErrorCode::kDanglingEdge: return "DanglingEdge";
    case ErrorCode::kUnresolvedIdentification: return "UnresolvedIdentification";
    case ErrorCode::kDirectionNotRealized: return "DirectionNotRealized";
    case ErrorCode::kAmbiguousWedge: return "AmbiguousWedge";
    case ErrorCode::kNotShort: return "NotShort";
    case ErrorCode::kIncomparable: return "Incomparable";
    case ErrorCode::kIncomplete: return "Incomplete";
    case ErrorCode::kOutsideSweep: return "OutsideSweep";
    case ErrorCode::kInconclusive: return "Inconclusive";
    case ErrorCode::kCorrespondenceGap: return "CorrespondenceGap";
    case ErrorCode::kOrientationReversed: return "OrientationReversed";
    case ErrorCode::kNotAreaPreserving: return "NotAreaPreserving";
    case ErrorCode::kParallelSegment: return "ParallelSegment";
    case ErrorCode::kNotFull: return "NotFull";
    case ErrorCode::kNoComparableSamples: return "NoComparableSamples";
    case ErrorCode::kIsolationViolated: return "IsolationViolated";
  }
  return "Unknown";
}

Rational parse_rational(std::string_view text) {
  std::string s(text);
  while (!s.empty() && s.front() == ' ') s.erase(s.begin());
  while (!s.empty() && s.back() == ' ') s.pop_back();
  if (s.empty()) throw Error(ErrorCode::kInvalidArgument, "empty rational");
  auto dot_pos = s.find('.');
  if (dot_pos != std::string::npos) {
    bool neg = s.front() == '-';
    std::string digits = s.substr(neg ? 1 : 0);
    dot_pos = digits.find('.');
    std::string whole = digits.substr(0, dot_pos);
    std::string frac = digits.substr(dot_pos + 1);
    if (whole.empty()) whole = "0";
    for (char c : whole + frac) {
      if (c < '0' || c > '9') throw Error(ErrorCode::kInvalidArgument, "bad rational '" + s + "'");
    }
    mpz_class num(whole + frac, 10);
    mpz_class den;
    mpz_ui_pow_ui(den.get_mpz_t(), 10, frac.size());
    Rational r(num, den);
    r.canonicalize();
    return neg ? Rational(-r) : r;
  }
  Rational r;
  if (r.set_str(s, 10) != 0) throw Error(ErrorCode::kInvalidArgument, "bad rational '" + s + "'");
  if (sgn(r.get_den()) == 0) throw Error(ErrorCode::kInvalidArgument, "zero denominator");
  r.canonicalize();
  return r;
}

std::string format_rational(const Rational& r) {
  return r.get_num().get_str() + "/" + r.get_den().get_str();
}

std::string format_double(double v) {
  if (std::isinf(v)) return v > 0 ? "inf" : "-inf";
  if (std::isnan(v)) return "nan";
  if (v == 0.0) return "0";
  char buf[64];
  std::snprintf(buf, sizeof buf, "%.15g", v);
  return buf;
}

Rational from_double(double v) {
  if (!std::isfinite(v)) throw Error(ErrorCode::kInvalidArgument, "non-finite value");
  return Rational(v);
}

Rational rational_pow(const Rational& base, long long exponent) {
  Rational result(1);
  Rational b = base;
  bool invert = exponent < 0;
  unsigned long long e = invert ? static_cast<unsigned long long>(-exponent)
                                : static_cast<unsigned long long>(exponent);
  while (e > 0) {
    if (e & 1ULL) result *= b;
    b *= b;
    e >>= 1;
  }
  if (invert) {
    if (sgn(result) == 0) throw Error(ErrorCode::kInvalidArgument, "zero to a negative power");
    result = 1 / result;
  }
  return result;
}

bool lex_less(const Vec2& a, const Vec2& b) {
  if (a.x != b.x) return a.x < b.x;
  return a.y < b.y;
}

double norm(const Vec2& a) { return std::hypot(a.dx(), a.dy()); }

double angle_of(const Vec2& a) {
  double t = std::atan2(a.dy(), a.dx());
  if (t < 0) t += kTwoPi;
  if (t >= kTwoPi) t -= kTwoPi;
  return t;
}

Vec2 primitive(const Vec2& a) {
  mpz_class l;
  mpz_lcm(l.get_mpz_t(), a.x.get_den_mpz_t(), a.y.get_den_mpz_t());
  mpz_class nx = a.x.get_num() * (l / a.x.get_den());
  mpz_class ny = a.y.get_num() * (l / a.y.get_den());
  mpz_class g;
  mpz_gcd(g.get_mpz_t(), nx.get_mpz_t(), ny.get_mpz_t());
  if (g == 0) return a;
  return {Rational(nx / g), Rational(ny / g)};
}

bool same_ray(const Vec2& a, const Vec2& b) {
  return sgn(cross(a, b)) == 0 && sgn(dot(a, b)) > 0;
}

namespace {

// 0 for angles in [0, pi), 1 for [pi, 2pi).
int half_of(const Vec2& v) {
  int sy = sgn(v.y);
  if (sy > 0) return 0;
  if (sy < 0) return 1;
  return sgn(v.x) > 0 ? 0 : 1;
}

}  // namespace

int compare_angle(const Vec2& a, const Vec2& b) {
  int ha = half_of(a), hb = half_of(b);
  if (ha != hb) return ha < hb ? -1 : 1;
  int c = sgn(cross(a, b));
  return c > 0 ? -1 : (c < 0 ? 1 : 0);
}

int compare_ccw(const Vec2& ref, const Vec2& a, const Vec2& b) {
  Vec2 ra(dot(ref, a), cross(ref, a));
  Vec2 rb(dot(ref, b), cross(ref, b));
  return compare_angle(ra, rb);
}

Vec2 unit_approx(double t) { return {from_double(std::cos(t)), from_double(std::sin(t))}; }

Angle ccw_angle(const Vec2& a, const Vec2& b, bool zero_when_equal) {
  Rational c = cross(a, b);
  Rational d = dot(a, b);
  if (sgn(c) == 0) {
    if (sgn(d) > 0) return zero_when_equal ? Angle::from_pi(0) : Angle::from_pi(2);
    return Angle::from_pi(1);
  }
  if (sgn(d) == 0) return Angle::from_pi(sgn(c) > 0 ? Rational(1, 2) : Rational(3, 2));
  if (abs(c) == abs(d)) {
    if (sgn(c) > 0) return Angle::from_pi(sgn(d) > 0 ? Rational(1, 4) : Rational(3, 4));
    return Angle::from_pi(sgn(d) < 0 ? Rational(5, 4) : Rational(7, 4));
  }
  double t = std::atan2(c.get_d(), d.get_d());
  if (t < 0) t += kTwoPi;
  return Angle::approx(t);
}

Direction::Direction(Vec2 v) : vec_(std::move(v)) {
  if (vec_.is_zero()) throw Error(ErrorCode::kInvalidArgument, "zero direction vector");
  angle_ = angle_of(vec_);
}

double Direction::ux() const { return std::cos(angle_); }
double Direction::uy() const { return std::sin(angle_); }

}  // namespace flatsing
