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

#include "flatsing/geometry.hpp"

#include <cmath>
#include <limits>

#include "flatsing/error.hpp"

namespace flatsing {

namespace {

bool lambda_in_range(const Rational& lambda, const Segment& seg) {
  if (!seg.a_infinite && sgn(lambda) < 0) return false;
  if (!seg.b_infinite && lambda > 1) return false;
  return true;
}

}  // namespace

std::optional<RayHit> intersect_ray_segment(const Vec2& o, const Vec2& v, const Segment& seg) {
  const Vec2 w = seg.delta();
  const Vec2 ao = seg.a - o;
  const Rational denom = cross(v, w);
  if (sgn(denom) != 0) {
    Rational s = cross(ao, w) / denom;
    if (sgn(s) <= 0) return std::nullopt;
    Rational lambda = cross(ao, v) / denom;
    if (!lambda_in_range(lambda, seg)) return std::nullopt;
    RayHit hit{s, lambda, RayHit::Where::kInterior};
    if (!seg.a_infinite && sgn(lambda) == 0) hit.where = RayHit::Where::kAtA;
    if (!seg.b_infinite && lambda == 1) hit.where = RayHit::Where::kAtB;
    return hit;
  }
  if (sgn(cross(ao, v)) != 0) return std::nullopt;
  // Collinear: the ray meets the next finite endpoint ahead. A ray running
  // against the segment lies on the far side of the boundary.
  if (sgn(dot(v, w)) < 0) return std::nullopt;
  const Rational vv = norm2(v);
  std::optional<RayHit> best;
  auto consider = [&](const Vec2& p, RayHit::Where where, const Rational& lambda) {
    Rational s = dot(p - o, v) / vv;
    if (sgn(s) <= 0) return;
    if (!best || s < best->s) best = RayHit{s, lambda, where};
  };
  if (!seg.a_infinite) consider(seg.a, RayHit::Where::kAtA, Rational(0));
  if (!seg.b_infinite) consider(seg.b, RayHit::Where::kAtB, Rational(1));
  return best;
}

bool on_segment(const Vec2& p, const Segment& seg) {
  const Vec2 w = seg.delta();
  if (sgn(cross(p - seg.a, w)) != 0) return false;
  Rational lambda = dot(p - seg.a, w) / norm2(w);
  return lambda_in_range(lambda, seg);
}

double distance_to_segment(const DPoint& p, const DSegment& seg) {
  const double ax = seg.a.x, ay = seg.a.y;
  const double wx = seg.b.x - ax, wy = seg.b.y - ay;
  const double ww = wx * wx + wy * wy;
  double lambda = ww > 0 ? ((p.x - ax) * wx + (p.y - ay) * wy) / ww : 0.0;
  if (!seg.a_infinite && lambda < 0) lambda = 0;
  if (!seg.b_infinite && lambda > 1) lambda = 1;
  const double qx = ax + lambda * wx - p.x, qy = ay + lambda * wy - p.y;
  return std::hypot(qx, qy);
}

Matrix2 Matrix2::inverse() const {
  Rational dt = det();
  if (sgn(dt) == 0) throw Error(ErrorCode::kInvalidArgument, "singular matrix");
  return {Rational(d / dt), Rational(-b / dt), Rational(-c / dt), Rational(a / dt)};
}

Matrix2 operator*(const Matrix2& m, const Matrix2& n) {
  return {Rational(m.a * n.a + m.b * n.c), Rational(m.a * n.b + m.b * n.d),
          Rational(m.c * n.a + m.d * n.c), Rational(m.c * n.b + m.d * n.d)};
}

double Matrix2::norm_bound() const {
  const double fa = a.get_d(), fb = b.get_d(), fc = c.get_d(), fd = d.get_d();
  return std::sqrt(fa * fa + fb * fb + fc * fc + fd * fd);
}

}  // namespace flatsing
