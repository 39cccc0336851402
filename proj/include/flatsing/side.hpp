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

#include <memory>
#include <optional>
#include <string>
#include <vector>

#include "flatsing/geometry.hpp"

namespace flatsing {

/// How a boundary side ends: at a vertex, at an accumulation point of its
/// subdivision, or at infinity.
enum class EndKind { kVertex, kAccumulation, kInfinity };

struct SideEnd {
  EndKind kind = EndKind::kVertex;
  Vec2 point;    // meaningless for kInfinity
  Vec2 tangent;  // direction of travel along the side at this end
};

struct SideHit {
  enum class Kind { kEdge, kVertexA, kVertexB, kAccumulationStart, kAccumulationFinish };
  long long index = 0;  // segment hit; unused for accumulation kinds
  Rational s;
  Vec2 point;
  Kind kind = Kind::kEdge;

  bool at_vertex() const { return kind != Kind::kEdge; }
};

/// Serializable description of a side; round-trips through make_side.
struct SideSpec {
  std::string scheme;          // polyline | geometric | ray | chord_chain
  std::vector<Vec2> points;    // polyline vertices, or (from, to), or (apex, direction)
  Rational ratio;              // geometric ratio
  bool flag = false;           // geometric: big end at start; ray/chord: outward
  long long window = 0;        // subdivision window
  int sx = 1, sy = 1;          // chord chain quadrant signs
  bool transformed = false;
  Matrix2 matrix;
  Vec2 offset;
  std::shared_ptr<SideSpec> base;  // transformed sides
};

/// One boundary arc of a cell: a finite or infinite sequence of collinear or
/// chained sub-segments, walked from start() to finish().
class Side {
 public:
  virtual ~Side() = default;

  virtual SideSpec spec() const = 0;

  /// First and last instantiated segment indices in walk order.
  virtual long long first() const = 0;
  virtual long long last() const = 0;
  /// Neighbours in walk order. nullopt at a vertex end of the side; throws
  /// LocatorRangeExceeded when the neighbour exists outside the window.
  virtual std::optional<long long> next(long long i) const = 0;
  virtual std::optional<long long> prev(long long i) const = 0;
  virtual bool valid(long long i) const = 0;
  virtual Segment segment(long long i) const = 0;
  virtual DSegment dsegment(long long i) const { return to_dsegment(segment(i)); }
  virtual SideEnd start() const = 0;
  virtual SideEnd finish() const = 0;

  /// First hit strictly ahead of o along direction v.
  virtual std::optional<SideHit> first_hit(const Vec2& o, const Vec2& v) const = 0;
  /// Indices of instantiated segments within distance radius of c (conservative).
  virtual void near(const DPoint& c, double radius, std::vector<long long>& out) const;
  /// Accumulation points of the side that lie within radius of c.
  std::vector<Vec2> accumulation_near(const DPoint& c, double radius) const;

  /// All instantiated indices in walk order.
  std::vector<long long> indices() const;
};

std::unique_ptr<Side> make_side(const SideSpec& spec);

std::unique_ptr<Side> polyline_side(std::vector<Vec2> points);
/// Straight side from -> to split into pieces of relative lengths
/// (1 - ratio) ratio^k, k = 0 .. window - 1, the largest piece at the start
/// when big_at_start is set; the pieces accumulate at the other end.
std::unique_ptr<Side> geometric_side(Vec2 from, Vec2 to, Rational ratio, bool big_at_start,
                                     long long window);
/// Ray through apex with direction dir; walked away from the apex when outward.
std::unique_ptr<Side> ray_side(Vec2 apex, Vec2 dir, bool outward);
/// Chords between (sx 2^n, sy 4^n) and (sx 2^(n+1), sy 4^(n+1)), |n| <= window.
std::unique_ptr<Side> chord_chain_side(int sx, int sy, bool outward, long long window);
/// Image of a side under z -> m z + offset.
std::unique_ptr<Side> transformed_side(const Side& base, const Matrix2& m, const Vec2& offset);

}  // namespace flatsing
