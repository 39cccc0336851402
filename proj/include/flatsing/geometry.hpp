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

#include <array>
#include <optional>

#include "flatsing/rational.hpp"

namespace flatsing {

using PlanarPoint = Vec2;

/// Oriented boundary segment; the cell interior lies to its left.
/// An infinite end extends the segment as a ray beyond that endpoint.
struct Segment {
  Vec2 a;
  Vec2 b;
  bool a_infinite = false;
  bool b_infinite = false;

  Vec2 delta() const { return b - a; }
  bool finite() const { return !a_infinite && !b_infinite; }
};

struct RayHit {
  enum class Where { kInterior, kAtA, kAtB };
  Rational s;       // hit = origin + s * v, s > 0
  Rational lambda;  // hit = a + lambda * (b - a)
  Where where = Where::kInterior;
};

/// First intersection of the open ray {o + s v : s > 0} with a closed segment.
/// A collinear ray running forward along the segment reports the first finite
/// endpoint strictly ahead; one running against it reports nothing.
std::optional<RayHit> intersect_ray_segment(const Vec2& o, const Vec2& v, const Segment& seg);

/// Whether p lies on the segment (endpoints included).
bool on_segment(const Vec2& p, const Segment& seg);

/// Float helpers used only for pruning searches.
struct DPoint {
  double x = 0;
  double y = 0;
};
inline DPoint to_dpoint(const Vec2& v) { return {v.dx(), v.dy()}; }
/// Float copy of a Segment, same conventions for infinite ends.
struct DSegment {
  DPoint a;
  DPoint b;
  bool a_infinite = false;
  bool b_infinite = false;
};
inline DSegment to_dsegment(const Segment& s) {
  return {to_dpoint(s.a), to_dpoint(s.b), s.a_infinite, s.b_infinite};
}
double distance_to_segment(const DPoint& p, const DSegment& seg);
inline double distance_to_segment(const DPoint& p, const Segment& seg) {
  return distance_to_segment(p, to_dsegment(seg));
}

/// 2x2 rational matrix [[a, b], [c, d]].
struct Matrix2 {
  Rational a{1}, b{0}, c{0}, d{1};

  static Matrix2 identity() { return {}; }
  Rational det() const { return a * d - b * c; }
  Rational trace() const { return a + d; }
  Vec2 apply(const Vec2& v) const {
    return {Rational(a * v.x + b * v.y), Rational(c * v.x + d * v.y)};
  }
  Matrix2 inverse() const;
  friend Matrix2 operator*(const Matrix2& m, const Matrix2& n);
  friend bool operator==(const Matrix2& m, const Matrix2& n) {
    return m.a == n.a && m.b == n.b && m.c == n.c && m.d == n.d;
  }
  bool is_identity() const { return a == 1 && b == 0 && c == 0 && d == 1; }
  double norm_bound() const;
};

}  // namespace flatsing
