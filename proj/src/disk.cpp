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

#include "flatsing/disk.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <map>
#include <queue>
#include <set>
#include <tuple>

namespace flatsing {

namespace {

constexpr double kSlack = 1e-9;

struct NodeOrder {
  bool operator()(const DiskNode& a, const DiskNode& b) const { return a.entry > b.entry; }
};

/// Lifted angle theta lies in [lo, hi] up to whole turns.
bool in_window(double theta, double lo, double hi) {
  double k = std::ceil((lo - kSlack - theta) / kTwoPi);
  double t = theta + k * kTwoPi;
  return t <= hi + kSlack;
}

bool declared_all(const Surface& s) {
  for (const auto& d : s.declarations()) {
    if (d.all_vertices) return true;
  }
  return false;
}

}  // namespace

Vec2 centre_position(const Surface& s, const TraceStart& centre) {
  if (centre.corner) return s.corner(*centre.corner).vertex;
  if (!centre.point) throw Error(ErrorCode::kInvalidArgument, "empty centre");
  return centre.point->position;
}

namespace {

/// Some part of the segment lies strictly past the entry line.
bool beyond_gate(const DiskNode& n, const DSegment& ds) {
  auto side = [&](const DPoint& p) {
    return (p.x - n.gate.x) * n.gate_normal.x + (p.y - n.gate.y) * n.gate_normal.y;
  };
  double scale = std::hypot(n.gate_normal.x, n.gate_normal.y);
  double tol = 1e-12 * scale * (1 + std::abs(n.gate.x) + std::abs(n.gate.y));
  auto toward = [&](const DPoint& from, const DPoint& to) {
    return (to.x - from.x) * n.gate_normal.x + (to.y - from.y) * n.gate_normal.y > 0;
  };
  if (ds.a_infinite && toward(ds.b, ds.a)) return true;
  if (ds.b_infinite && toward(ds.a, ds.b)) return true;
  if (!ds.a_infinite && side(ds.a) > tol) return true;
  if (!ds.b_infinite && side(ds.b) > tol) return true;
  return false;
}

}  // namespace

DiskStats explore_disk(const Surface& s, const TraceStart& centre, double radius,
                       const DiskVisitor& visit, std::size_t node_cap) {
  if (!(radius > 0)) throw Error(ErrorCode::kInvalidArgument, "radius must be positive");
  const Vec2 c = centre_position(s, centre);
  const DPoint cd = to_dpoint(c);
  std::priority_queue<DiskNode, std::vector<DiskNode>, NodeOrder> queue;

  if (centre.corner) {
    Corner k = s.corner(*centre.corner);
    double lo = angle_of(k.start_dir);
    double width = k.cusp ? 0.0 : k.angle.value;
    queue.push({centre.corner->cell, Vec2(0, 0), lo, lo + width, 0.0, false, {}, {}});
  } else if (centre.point->edge) {
    const EdgeRef& e = *centre.point->edge;
    double th = angle_of(s.segment(e).delta());
    queue.push({centre.point->cell, Vec2(0, 0), th, th + kPi, 0.0, false, {}, {}});
    EdgeRef q = s.partner(e);
    queue.push({q.cell, Rational(-1) * s.translation(e), th + kPi, th + kTwoPi, 0.0, false, {}, {}});
  } else {
    queue.push({centre.point->cell, Vec2(0, 0), 0.0, kTwoPi, 0.0, false, {}, {}});
  }

  DiskStats stats;
  stats.confidence_radius = std::numeric_limits<double>::infinity();
  std::vector<long long> idx;
  std::set<std::tuple<int, double, double, long long, long long>> seen;
  while (!queue.empty()) {
    if (stats.nodes >= node_cap) {
      stats.complete = false;
      stats.confidence_radius = std::min(stats.confidence_radius, queue.top().entry);
      break;
    }
    DiskNode node = queue.top();
    if (node.entry > radius) break;
    queue.pop();
    auto key = std::make_tuple(node.cell, node.offset.dx(), node.offset.dy(), std::llround(node.lo * 1e9),
                               std::llround(node.hi * 1e9));
    if (!seen.insert(key).second) continue;
    ++stats.nodes;
    visit(node, radius);
    const Cell& cl = s.cell(node.cell);
    const DPoint lc{cd.x - node.offset.dx(), cd.y - node.offset.dy()};
    for (std::size_t i = 0; i < cl.sides.size(); ++i) {
      idx.clear();
      cl.sides[i]->near(lc, radius, idx);
      for (long long k : idx) {
        DSegment ds = cl.sides[i]->dsegment(k);
        double dist = distance_to_segment(lc, ds);
        if (dist > radius) continue;
        if (node.gated && !beyond_gate(node, ds)) continue;
        double ax = ds.a_infinite ? ds.a.x - ds.b.x : ds.a.x - lc.x;
        double ay = ds.a_infinite ? ds.a.y - ds.b.y : ds.a.y - lc.y;
        double bx = ds.b_infinite ? ds.b.x - ds.a.x : ds.b.x - lc.x;
        double by = ds.b_infinite ? ds.b.y - ds.a.y : ds.b.y - lc.y;
        double cr = ax * by - ay * bx;
        double scale = std::hypot(ax, ay) * std::hypot(bx, by);
        if (!(cr > 1e-14 * scale)) continue;
        double span = std::atan2(cr, ax * bx + ay * by);
        double base = std::atan2(ay, ax);
        base += kTwoPi * std::ceil((node.lo - kSlack - base - span) / kTwoPi);
        for (; base <= node.hi + kSlack; base += kTwoPi) {
          double lo = std::max(node.lo, base);
          double hi = std::min(node.hi, base + span);
          // Degenerate windows only continue a degenerate parent.
          if (node.hi - node.lo > kSlack ? hi - lo <= kSlack : hi < lo - kSlack) continue;
          hi = std::max(hi, lo);
          EdgeRef e{node.cell, static_cast<int>(i), k};
          bool window = !cl.window_edge.empty() && cl.window_edge[i];
          if (window) {
            stats.complete = false;
            stats.confidence_radius = std::min(stats.confidence_radius, dist);
            continue;
          }
          try {
            EdgeRef q = s.partner(e);
            Vec2 t = s.translation(e);
            DiskNode child{q.cell, node.offset - t, lo, hi, std::max(node.entry, dist), false, {}, {}};
            DSegment qs = to_dsegment(s.segment(q));
            DPoint qa = qs.a_infinite ? qs.b : qs.a;
            DPoint qd{qs.b.x - qs.a.x, qs.b.y - qs.a.y};
            DPoint nrm{qd.y, -qd.x};
            const DPoint cl2{cd.x - child.offset.dx(), cd.y - child.offset.dy()};
            if ((cl2.x - qa.x) * nrm.x + (cl2.y - qa.y) * nrm.y > 0) nrm = {-nrm.x, -nrm.y};
            child.gated = true;
            child.gate = qa;
            child.gate_normal = nrm;
            queue.push(child);
          } catch (const Error& err) {
            if (err.code() != ErrorCode::kLocatorRangeExceeded) throw;
            stats.complete = false;
            stats.confidence_radius = std::min(stats.confidence_radius, dist);
          }
        }
      }
    }
  }
  stats.confidence_radius = std::min(stats.confidence_radius, radius);
  return stats;
}

namespace {

/// Collects the singular vertices of one developed cell copy.
class LiftCollector {
 public:
  LiftCollector(const Surface& s, const Vec2& centre) : s_(s), c_(centre), all_(declared_all(s)) {}

  void collect(const DiskNode& node, double radius, std::vector<SingularLift>& out) {
    const Cell& cl = s_.cell(node.cell);
    const DPoint lc{c_.dx() - node.offset.dx(), c_.dy() - node.offset.dy()};
    for (std::size_t i = 0; i < cl.sides.size(); ++i) {
      const Side& sd = *cl.sides[i];
      idx_.clear();
      sd.near(lc, radius, idx_);
      int ci = node.cell, si = static_cast<int>(i);
      for (long long k : idx_) {
        DSegment ds = sd.dsegment(k);
        bool a_ok = !ds.a_infinite && near_point(lc, ds.a, radius);
        bool b_ok = !ds.b_infinite && near_point(lc, ds.b, radius);
        if (!a_ok && !b_ok) continue;
        Segment seg = sd.segment(k);
        if (a_ok && singular(ci, si, k, false)) consider(node, seg.a, radius, out);
        if (b_ok && singular(ci, si, k, true)) consider(node, seg.b, radius, out);
      }
      for (const Vec2& acc : sd.accumulation_near(lc, radius)) consider(node, acc, radius, out);
    }
  }

 private:
  static bool near_point(const DPoint& c, const DPoint& p, double radius) {
    return std::hypot(p.x - c.x, p.y - c.y) <= radius * (1 + 1e-9) + 1e-300;
  }

  bool singular(int cell, int side, long long k, bool at_b) {
    if (all_) return true;
    auto key = std::make_tuple(cell, side, k, at_b);
    auto it = cache_.find(key);
    if (it != cache_.end()) return it->second;
    CornerKey ck = at_b ? s_.corner_with_in({cell, side, k}).key : CornerKey{cell, side, k};
    bool v = s_.anchor_label(ck).has_value();
    cache_.emplace(key, v);
    return v;
  }

  void consider(const DiskNode& node, const Vec2& local, double radius,
                std::vector<SingularLift>& out) const {
    Vec2 w = local + node.offset - c_;
    if (w.is_zero()) return;
    double d = norm(w);
    if (d > radius * (1 + 1e-12)) return;
    if (!in_window(angle_of(w), node.lo, node.hi)) return;
    out.push_back({std::move(w), d});
  }

  const Surface& s_;
  Vec2 c_;
  bool all_;
  std::map<std::tuple<int, int, long long, bool>, bool> cache_;
  std::vector<long long> idx_;
};

void sort_unique(std::vector<SingularLift>& v) {
  std::sort(v.begin(), v.end(), [](const SingularLift& a, const SingularLift& b) {
    if (a.dist != b.dist) return a.dist < b.dist;
    return lex_less(a.w, b.w);
  });
  v.erase(std::unique(v.begin(), v.end(),
                      [](const SingularLift& a, const SingularLift& b) { return a.w == b.w; }),
          v.end());
}

}  // namespace

std::vector<SingularLift> singular_lifts(const Surface& s, const TraceStart& centre, double radius,
                                         DiskStats* stats_out, std::size_t node_cap) {
  LiftCollector lc(s, centre_position(s, centre));
  std::vector<SingularLift> out;
  DiskStats st = explore_disk(
      s, centre, radius, [&](const DiskNode& node, double& r) { lc.collect(node, r, out); },
      node_cap);
  if (stats_out) *stats_out = st;
  sort_unique(out);
  return out;
}

DiskEstimate immersion_radius(const Surface& s, const SurfacePoint& p, double cap,
                              std::size_t node_cap) {
  if (!(cap > 0)) throw Error(ErrorCode::kInvalidArgument, "cap must be positive");
  LiftCollector lc(s, p.position);
  TraceOptions opts;
  opts.s_limit = Rational(1);
  bool traced_all = true;
  double best = cap;
  std::vector<SingularLift> found;
  // Each verified hit shrinks the search radius.
  DiskStats st = explore_disk(
      s, TraceStart::at(p), cap,
      [&](const DiskNode& node, double& r) {
        found.clear();
        lc.collect(node, r, found);
        sort_unique(found);
        for (const SingularLift& l : found) {
          if (l.dist >= r) break;
          GeodesicPath path = trace(s, TraceStart::at(p), l.w, 0.0, opts);
          if (path.termination == Termination::kHitSingularVertex) {
            r = std::min(r, path.length());
            best = r;
          } else if (path.termination == Termination::kLocatorRangeExceeded) {
            traced_all = false;
          }
        }
      },
      node_cap);
  DiskEstimate out;
  out.value = best;
  out.confidence_radius = st.confidence_radius;
  out.complete = traced_all && (st.complete || best <= st.confidence_radius);
  return out;
}

std::optional<double> straight_distance(const Surface& s, const SurfacePoint& p,
                                        const SurfacePoint& q, double cap, std::size_t node_cap) {
  const Vec2 c = p.position;
  const SurfacePoint target = s.canonical(q);
  const SurfacePoint from = s.canonical(p);
  if (from.cell == target.cell && from.position == target.position) return 0.0;
  std::optional<EdgeRef> q_partner;
  if (q.edge) q_partner = s.partner(*q.edge);
  TraceOptions opts;
  opts.s_limit = Rational(1);
  std::optional<double> best;
  auto attempt = [&](const DiskNode& node, const Vec2& local, double& r) {
    Vec2 w = local + node.offset - c;
    if (w.is_zero()) return;
    double d = norm(w);
    if (d > r * (1 + 1e-12)) return;
    if (!in_window(angle_of(w), node.lo, node.hi)) return;
    GeodesicPath path = trace(s, TraceStart::at(p), w, 0.0, opts);
    if (path.termination != Termination::kReachedTarget) return;
    SurfacePoint e = s.canonical(path.end_point());
    if (e.cell != target.cell || !(e.position == target.position)) return;
    if (!best || d < *best) best = d;
    r = std::min(r, d);
  };
  explore_disk(
      s, TraceStart::at(p), cap,
      [&](const DiskNode& node, double& r) {
        if (node.cell == q.cell) attempt(node, q.position, r);
        if (q_partner && node.cell == q_partner->cell) {
          attempt(node, q.position + s.translation(*q.edge), r);
        }
      },
      node_cap);
  return best;
}

std::optional<double> point_distance(const Surface& s, const SurfacePoint& p, const SurfacePoint& q,
                                     double cap, std::size_t node_cap) {
  std::optional<double> best = straight_distance(s, p, q, cap, node_cap);
  if (s.anchors().size() == 1) {
    DiskEstimate rp = immersion_radius(s, p, cap, node_cap);
    DiskEstimate rq = immersion_radius(s, q, cap, node_cap);
    if (rp.value < cap && rq.value < cap) {
      double bend = rp.value + rq.value;
      if (bend <= cap && (!best || bend < *best)) best = bend;
    }
  }
  return best;
}

SaddleConnectionList corner_saddle_connections(const Surface& s, const CornerKey& corner,
                                               double max_length, std::size_t node_cap) {
  SaddleConnectionList out;
  auto start_label = s.anchor_label(corner);
  if (!start_label) return out;
  DiskStats st;
  auto lifts = singular_lifts(s, TraceStart::at(corner), max_length, &st, node_cap);
  out.complete = st.complete;
  out.confidence_radius = st.confidence_radius;
  out.nodes = st.nodes;
  std::set<std::pair<std::string, std::string>> rays;
  TraceOptions opts;
  opts.s_limit = Rational(1);
  const Corner root = s.corner(corner);
  for (const SingularLift& l : lifts) {
    if (!root.contains(l.w)) continue;
    Vec2 prim = primitive(l.w);
    auto key = std::make_pair(format_rational(prim.x), format_rational(prim.y));
    if (rays.count(key)) continue;
    GeodesicPath path = trace(s, TraceStart::at(corner), l.w, 0.0, opts);
    if (path.termination == Termination::kLocatorRangeExceeded) {
      out.complete = false;
      out.confidence_radius = std::min(out.confidence_radius, l.dist);
      continue;
    }
    if (path.termination != Termination::kHitSingularVertex) continue;
    rays.insert(key);
    SaddleConnection sc;
    sc.start_anchor = *start_label;
    sc.end_anchor = *path.end_anchor;
    sc.start_corner = corner;
    sc.end_corner = *path.end_corner;
    sc.holonomy = path.end_s() * l.w;
    sc.length2 = norm2(sc.holonomy);
    sc.length = std::sqrt(sc.length2.get_d());
    out.connections.push_back(std::move(sc));
  }
  std::sort(out.connections.begin(), out.connections.end(),
            [](const SaddleConnection& a, const SaddleConnection& b) {
              if (a.length2 != b.length2) return a.length2 < b.length2;
              int c = compare_angle(a.holonomy, b.holonomy);
              if (c != 0) return c < 0;
              return lex_less(a.holonomy, b.holonomy);
            });
  return out;
}

SaddleConnectionList saddle_connections(const Surface& s, const std::string& anchor,
                                        double max_length, std::size_t corner_limit,
                                        std::size_t node_cap) {
  std::vector<CornerKey> corners = s.finite_combinatorics() ? s.anchor(anchor).corners
                                                            : s.anchor_corners(anchor, corner_limit);
  if (corners.size() > corner_limit) corners.resize(corner_limit);
  SaddleConnectionList out;
  out.confidence_radius = max_length;
  std::size_t remaining = node_cap;
  for (std::size_t i = 0; i < corners.size(); ++i) {
    const std::size_t share = remaining / (corners.size() - i);
    if (share == 0) {
      out.complete = false;
      out.confidence_radius = 0;
      break;
    }
    SaddleConnectionList part;
    try {
      part = corner_saddle_connections(s, corners[i], max_length, share);
    } catch (const Error& e) {
      if (e.code() != ErrorCode::kLocatorRangeExceeded) throw;
      out.complete = false;
      remaining -= share;
      continue;
    }
    remaining -= std::min(remaining, part.nodes);
    out.nodes += part.nodes;
    out.complete = out.complete && part.complete;
    out.confidence_radius = std::min(out.confidence_radius, part.confidence_radius);
    for (auto& sc : part.connections) out.connections.push_back(std::move(sc));
  }
  return out;
}

bool in_basis_set(const Surface& s, const LinearApproach& a, const SurfacePoint& x, double r,
                  double t) {
  if (!(r > 0) || !(t > 0)) throw Error(ErrorCode::kInvalidArgument, "radius and time must be positive");
  GeodesicPath path = trace(s, a.start(), a.dir, t);
  if (path.termination == Termination::kLocatorRangeExceeded) {
    throw Error(ErrorCode::kLocatorRangeExceeded, path.detail);
  }
  if (path.termination == Termination::kHitSingularVertex) return false;
  auto d = point_distance(s, path.end_point(), x, r);
  return d && *d < r;
}

}  // namespace flatsing
