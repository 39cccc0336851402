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

#include "flatsing/tracer.hpp"

#include <cmath>

namespace flatsing {

const char* termination_name(Termination t) {
  switch (t) {
    case Termination::kHitSingularVertex: return "HitSingularVertex";
    case Termination::kBudgetExhausted: return "BudgetExhausted";
    case Termination::kEscaped: return "Escaped";
    case Termination::kLocatorRangeExceeded: return "LocatorRangeExceeded";
    case Termination::kReachedTarget: return "ReachedTarget";
  }
  return "?";
}

Rational GeodesicPath::end_s() const {
  if (segments.empty()) return Rational(0);
  return segments.back().s1;
}

Rational GeodesicPath::length2() const {
  Rational s = end_s();
  return s * s * norm2(dir);
}

double GeodesicPath::length() const { return std::sqrt(length2().get_d()); }

SurfacePoint GeodesicPath::end_point() const {
  if (segments.empty()) throw Error(ErrorCode::kInvalidArgument, "empty path");
  return {segments.back().cell, segments.back().b, end_edge};
}

Vec2 GeodesicPath::end_offset() const {
  if (segments.empty()) return Vec2(0, 0);
  return segments.back().offset;
}

namespace {

struct Cursor {
  int cell = 0;
  Vec2 p;
  Vec2 offset;
  Rational s;
  std::optional<EdgeRef> on_edge;
};

Cursor start_cursor(const Surface& s, const TraceStart& start, const Vec2& v) {
  if (start.corner) {
    Corner c = s.corner(*start.corner);
    if (!c.contains(v)) {
      throw Error(ErrorCode::kDirectionNotRealized,
                  "direction is not in the wedge of corner " + to_string(*start.corner));
    }
    return {start.corner->cell, c.vertex, Vec2(0, 0), Rational(0), std::nullopt};
  }
  if (!start.point) throw Error(ErrorCode::kInvalidArgument, "empty trace start");
  const SurfacePoint& p = *start.point;
  Cursor cur{p.cell, p.position, Vec2(0, 0), Rational(0), p.edge};
  if (p.edge) {
    Segment seg = s.segment(*p.edge);
    int side = sgn(cross(seg.delta(), v));
    if (side < 0 || (side == 0 && sgn(dot(seg.delta(), v)) < 0)) {
      EdgeRef q = s.partner(*p.edge);
      Vec2 t = s.translation(*p.edge);
      cur.offset = Rational(-1) * t;
      cur.cell = q.cell;
      cur.p = p.position + t;
      cur.on_edge = q;
    }
  }
  return cur;
}

}  // namespace

GeodesicPath trace(const Surface& s, const TraceStart& start, const Vec2& v, double budget,
                   const TraceOptions& opts) {
  if (v.is_zero()) throw Error(ErrorCode::kInvalidArgument, "zero direction");
  if (!opts.s_limit && !(budget > 0)) throw Error(ErrorCode::kInvalidArgument, "budget must be positive");
  GeodesicPath path;
  path.dir = v;
  Cursor cur = start_cursor(s, start, v);

  std::optional<Rational> limit;
  Termination at_limit = Termination::kBudgetExhausted;
  if (std::isfinite(budget) && budget > 0) limit = from_double(budget / norm(v));
  if (opts.s_limit && (!limit || *opts.s_limit <= *limit)) {
    limit = *opts.s_limit;
    at_limit = Termination::kReachedTarget;
  }

  auto push = [&](const Vec2& b, const Rational& s1) {
    path.segments.push_back({cur.cell, cur.p, b, cur.s, s1, cur.offset});
  };

  try {
    for (long long step = 0; step < opts.max_steps; ++step) {
      auto h = s.locate(cur.cell, cur.p, v);
      if (!h) {
        Rational s1 = limit ? *limit : cur.s;
        push(cur.p + Rational(s1 - cur.s) * v, s1);
        path.termination = at_limit == Termination::kReachedTarget ? at_limit : Termination::kEscaped;
        return path;
      }
      Rational s_hit = cur.s + h->hit.s;
      if (limit && s_hit > *limit) {
        if (*limit == cur.s) path.end_edge = cur.on_edge;
        push(cur.p + Rational(*limit - cur.s) * v, *limit);
        path.termination = at_limit;
        return path;
      }
      push(h->hit.point, s_hit);
      if (h->hit.at_vertex()) {
        Corner c = s.corner_at(*h);
        if (auto label = s.anchor_label(c.key)) {
          auto end = s.resolve_wedge(c, -v);
          path.termination = Termination::kHitSingularVertex;
          path.end_anchor = *label;
          path.end_corner = end ? end->key : c.key;
          return path;
        }
        auto next = s.resolve_wedge(c, v);
        if (!next) {
          throw Error(ErrorCode::kMalformedGeometry, "no wedge continues through " + to_string(c.key));
        }
        cur.offset += c.vertex - next->vertex;
        cur.cell = next->key.cell;
        cur.p = next->vertex;
        cur.on_edge.reset();
      } else {
        EdgeRef e = h->edge;
        EdgeRef q = s.partner(e);
        Vec2 t = s.translation(e);
        path.crossings.push_back({e, q, t});
        cur.p = h->hit.point + t;
        cur.offset -= t;
        cur.cell = q.cell;
        cur.on_edge = q;
      }
      cur.s = s_hit;
    }
    path.termination = Termination::kLocatorRangeExceeded;
    path.detail = "step cap reached";
  } catch (const Error& err) {
    if (err.code() != ErrorCode::kLocatorRangeExceeded) throw;
    path.termination = Termination::kLocatorRangeExceeded;
    path.detail = err.what();
  }
  return path;
}

TraceStart LinearApproach::start() const {
  if (corner) return TraceStart::at(*corner);
  return TraceStart::at(*base);
}

bool LinearApproach::same_germ(const LinearApproach& o) const {
  if (!same_ray(dir, o.dir)) return false;
  if (corner || o.corner) return corner == o.corner;
  return base->cell == o.base->cell && base->position == o.base->position;
}

LinearApproach approach_at(const Surface& s, const CornerKey& corner, const Vec2& v, double delta) {
  if (!(delta > 0)) throw Error(ErrorCode::kInvalidArgument, "germ length must be positive");
  LinearApproach a;
  a.corner = corner;
  a.anchor = s.anchor_label(corner);
  a.dir = v;
  a.delta = delta;
  if (!a.anchor) a.base = SurfacePoint{corner.cell, s.corner(corner).vertex, std::nullopt};
  a.germ = trace(s, TraceStart::at(corner), v, delta);
  return a;
}

LinearApproach approach_from_point(const Surface& s, const SurfacePoint& p, const Vec2& v,
                                   double delta) {
  if (!(delta > 0)) throw Error(ErrorCode::kInvalidArgument, "germ length must be positive");
  LinearApproach a;
  a.base = p;
  a.dir = v;
  a.delta = delta;
  a.germ = trace(s, TraceStart::at(p), v, delta);
  return a;
}

LinearApproach linear_approach(const Surface& s, const std::string& anchor, const Vec2& v,
                               double delta, const std::optional<CornerKey>& selector,
                               std::size_t corner_limit) {
  if (selector) {
    auto label = s.anchor_label(*selector);
    if (!label || *label != anchor) {
      throw Error(ErrorCode::kInvalidArgument, "selector " + to_string(*selector) + " is not at " + anchor);
    }
    if (!s.corner(*selector).contains(v)) {
      throw Error(ErrorCode::kDirectionNotRealized, "direction not in the selected wedge");
    }
    return approach_at(s, *selector, v, delta);
  }
  std::vector<CornerKey> keys = s.finite_combinatorics() ? s.anchor(anchor).corners
                                                         : s.anchor_corners(anchor, corner_limit);
  std::vector<CornerKey> hits;
  for (const CornerKey& k : keys) {
    try {
      if (s.corner(k).contains(v)) hits.push_back(k);
    } catch (const Error& e) {
      if (e.code() != ErrorCode::kLocatorRangeExceeded) throw;
    }
  }
  if (hits.empty()) throw Error(ErrorCode::kDirectionNotRealized, "direction lies in no wedge of " + anchor);
  if (hits.size() > 1) {
    throw Error(ErrorCode::kAmbiguousWedge,
                "direction realized in " + std::to_string(hits.size()) + " wedges of " + anchor);
  }
  return approach_at(s, hits.front(), v, delta);
}

MaximalLength maximal_length(const Surface& s, const LinearApproach& a, double eps) {
  if (!(eps > 0)) throw Error(ErrorCode::kInvalidArgument, "cutoff must be positive");
  MaximalLength out;
  out.path = trace(s, a.start(), a.dir, eps);
  if (out.path.termination == Termination::kLocatorRangeExceeded) {
    throw Error(ErrorCode::kLocatorRangeExceeded, out.path.detail);
  }
  out.value = eps;
  if (out.path.termination == Termination::kHitSingularVertex) {
    out.hit_length2 = out.path.length2();
    out.value = std::min(eps, out.path.length());
  }
  return out;
}

LinearApproach sigma_pair(const Surface& s, const LinearApproach& a, double eps) {
  MaximalLength ml = maximal_length(s, a, eps);
  if (!ml.hit_length2 || !(ml.value < eps)) {
    throw Error(ErrorCode::kNotShort, "approach is not a saddle connection shorter than the cutoff");
  }
  return approach_at(s, *ml.path.end_corner, -a.dir, a.delta);
}

BaseDir bp_dir(const LinearApproach& a) {
  std::string base;
  if (a.anchor) {
    base = *a.anchor;
  } else {
    base = "cell" + std::to_string(a.base->cell) + "(" + format_rational(a.base->position.x) + "," +
           format_rational(a.base->position.y) + ")";
  }
  return {base, Direction(a.dir)};
}

double uniform_distance(const Surface& s, const LinearApproach& a, const LinearApproach& b,
                        double eps) {
  (void)s;
  bool shared = false;
  if (a.corner && b.corner) {
    shared = *a.corner == *b.corner;
  } else if (a.base && b.base && !a.corner && !b.corner) {
    shared = a.base->cell == b.base->cell && a.base->position == b.base->position;
  }
  if (!shared) throw Error(ErrorCode::kIncomparable, "approaches do not share a chart");
  Direction da(a.dir), db(b.dir);
  return eps * std::hypot(da.ux() - db.ux(), da.uy() - db.uy());
}

GeodesicPath trace_to_length(const Surface& s, const LinearApproach& a, double t) {
  return trace(s, a.start(), a.dir, t);
}

}  // namespace flatsing
