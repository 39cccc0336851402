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

#include <optional>
#include <string>
#include <vector>

#include "flatsing/surface.hpp"

namespace flatsing {

enum class Termination {
  kHitSingularVertex,
  kBudgetExhausted,
  kEscaped,
  kLocatorRangeExceeded,
  kReachedTarget,
};

const char* termination_name(Termination t);

/// One straight piece of a path inside a single cell. Parameters s0 and s1
/// count multiples of the (unnormalized) direction vector.
struct PathSegment {
  int cell = 0;
  Vec2 a;
  Vec2 b;
  Rational s0;
  Rational s1;
  /// Developed position of a point is its cell position plus offset.
  Vec2 offset;
};

struct GeodesicPath {
  Vec2 dir;
  std::vector<PathSegment> segments;
  std::vector<Crossing> crossings;
  Termination termination = Termination::kBudgetExhausted;
  std::string detail;
  /// Set for kHitSingularVertex.
  std::optional<std::string> end_anchor;
  std::optional<CornerKey> end_corner;
  /// Edge holding the end point when the path stops exactly on it.
  std::optional<EdgeRef> end_edge;

  /// Final parameter, in units of dir.
  Rational end_s() const;
  double length() const;
  /// Squared length, exact.
  Rational length2() const;
  SurfacePoint end_point() const;
  Vec2 end_offset() const;
};

/// Where a path starts: a flat point, or a vertex together with the wedge
/// the direction leaves through.
struct TraceStart {
  std::optional<SurfacePoint> point;
  std::optional<CornerKey> corner;

  static TraceStart at(const SurfacePoint& p) { return {p, std::nullopt}; }
  static TraceStart at(const CornerKey& k) { return {std::nullopt, k}; }
};

struct TraceOptions {
  /// Stop after this many units of dir; takes precedence over the budget.
  std::optional<Rational> s_limit;
  long long max_steps = 200000;
};

/// Straight-line flow from start in direction v for the given length.
GeodesicPath trace(const Surface& s, const TraceStart& start, const Vec2& v, double budget,
                   const TraceOptions& opts = {});

/// Germ of a straight line leaving a singular anchor, or a flat point.
struct LinearApproach {
  std::optional<std::string> anchor;
  std::optional<CornerKey> corner;
  std::optional<SurfacePoint> base;
  Vec2 dir;
  double delta = 0;
  GeodesicPath germ;

  TraceStart start() const;
  /// Same base wedge and same direction ray.
  bool same_germ(const LinearApproach& o) const;
};

/// Approach leaving the given corner's vertex in direction v.
LinearApproach approach_at(const Surface& s, const CornerKey& corner, const Vec2& v, double delta);
/// Approach from a flat surface point.
LinearApproach approach_from_point(const Surface& s, const SurfacePoint& p, const Vec2& v,
                                   double delta);
/// Approach of an anchor in direction v. selector picks the wedge when v
/// is realized at several corners; searched corners are limited for
/// infinite anchors.
LinearApproach linear_approach(const Surface& s, const std::string& anchor, const Vec2& v,
                               double delta, const std::optional<CornerKey>& selector = {},
                               std::size_t corner_limit = 256);

struct MaximalLength {
  double value = 0;
  /// Exact squared length of the connection when the ray hits a singular
  /// vertex before the cutoff.
  std::optional<Rational> hit_length2;
  GeodesicPath path;
};

/// min(eps, distance to the first singular point along the approach).
MaximalLength maximal_length(const Surface& s, const LinearApproach& a, double eps);

/// Approach at the far end of a saddle connection shorter than eps.
LinearApproach sigma_pair(const Surface& s, const LinearApproach& a, double eps);

struct BaseDir {
  std::string base;
  Direction dir;
};
BaseDir bp_dir(const LinearApproach& a);

/// Uniform distance sup_{0<t<eps} |a(t) - b(t)| for approaches sharing a
/// chart; throws Incomparable otherwise.
double uniform_distance(const Surface& s, const LinearApproach& a, const LinearApproach& b,
                        double eps);

/// Position reached at arc length t along the approach.
GeodesicPath trace_to_length(const Surface& s, const LinearApproach& a, double t);

}  // namespace flatsing
