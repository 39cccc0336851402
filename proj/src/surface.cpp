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

#include "flatsing/surface.hpp"

#include <algorithm>
#include <cmath>
#include <cstdlib>
#include <limits>
#include <set>

namespace flatsing {

std::string to_string(const EdgeRef& e) {
  return std::to_string(e.cell) + ":" + std::to_string(e.side) + ":" + std::to_string(e.index);
}

std::string to_string(const CornerKey& k) {
  return std::to_string(k.cell) + ":" + std::to_string(k.side) + ":" +
         (k.index ? std::to_string(*k.index) : std::string("*"));
}

long long window_cap() {
  const char* env = std::getenv("FLATSING_WINDOW_CAP");
  if (env == nullptr || *env == '\0') return 1000000;
  char* end = nullptr;
  long long v = std::strtoll(env, &end, 10);
  if (end == env || v < 1) return 1000000;
  return v;
}

bool Corner::contains(const Vec2& w) const {
  if (w.is_zero()) return false;
  if (cusp) return same_ray(w, start_dir);
  if (same_ray(w, start_dir)) return out.has_value();
  if (same_ray(start_dir, end_dir)) return true;
  return compare_ccw(start_dir, w, end_dir) < 0;
}

double Corner::offset_of(const Vec2& w) const {
  return ccw_angle(start_dir, w, true).value;
}

bool Cell::bounded() const {
  if (exterior) return false;
  for (const auto& s : sides) {
    if (s->start().kind == EndKind::kInfinity || s->finish().kind == EndKind::kInfinity) {
      return false;
    }
  }
  return true;
}

bool ValidationReport::ok() const {
  return std::all_of(checks.begin(), checks.end(), [](const auto& c) { return c.passed; });
}

Surface::Surface(std::string name, std::string params_json, std::vector<Cell> cells,
                 std::vector<GluingRule> rules, std::vector<SingularityDeclaration> declarations)
    : name_(std::move(name)), params_(std::move(params_json)), cells_(std::move(cells)),
      rules_(std::move(rules)), declarations_(std::move(declarations)) {
  if (cells_.empty()) throw Error(ErrorCode::kMalformedGeometry, "surface without cells");
  prev_side_.resize(cells_.size());
  for (std::size_t c = 0; c < cells_.size(); ++c) {
    Cell& cell = cells_[c];
    const std::size_t n = cell.sides.size();
    if (n == 0) throw Error(ErrorCode::kMalformedGeometry, "cell without sides");
    if (cell.next_side.size() != n) throw Error(ErrorCode::kMalformedGeometry, "next_side size");
    cell.cusp.resize(n, false);
    cell.window_edge.resize(n, false);
    prev_side_[c].assign(n, -1);
    for (std::size_t i = 0; i < n; ++i) {
      int j = cell.next_side[i];
      if (j < -1 || j >= static_cast<int>(n)) {
        throw Error(ErrorCode::kMalformedGeometry, "next_side out of range");
      }
      if (j >= 0) {
        if (prev_side_[c][static_cast<std::size_t>(j)] != -1) {
          throw Error(ErrorCode::kMalformedGeometry, "side has two predecessors");
        }
        prev_side_[c][static_cast<std::size_t>(j)] = static_cast<int>(i);
      }
    }
  }
  for (const GluingRule& r : rules_) {
    for (auto [c, s] : {std::pair{r.cell_a, r.side_a}, std::pair{r.cell_b, r.side_b}}) {
      if (c < 0 || c >= static_cast<int>(cells_.size()) || s < 0 ||
          s >= static_cast<int>(cells_[static_cast<std::size_t>(c)].sides.size())) {
        throw Error(ErrorCode::kMalformedGeometry, "gluing refers to a missing side");
      }
    }
    if (r.cell_a == r.cell_b && r.side_a == r.side_b) {
      throw Error(ErrorCode::kMalformedGeometry, "side glued to itself");
    }
    auto a = std::pair{r.cell_a, r.side_a};
    auto b = std::pair{r.cell_b, r.side_b};
    if (pairing_.count(a) || pairing_.count(b)) {
      throw Error(ErrorCode::kMalformedGeometry, "side glued twice");
    }
    pairing_[a] = b;
    pairing_[b] = a;
  }
  identify_anchors();
}

const Cell& Surface::cell(int i) const {
  if (i < 0 || i >= static_cast<int>(cells_.size())) {
    throw Error(ErrorCode::kInvalidArgument, "no cell " + std::to_string(i));
  }
  return cells_[static_cast<std::size_t>(i)];
}

const Side& Surface::side(int c, int s) const {
  const Cell& cl = cell(c);
  if (s < 0 || s >= static_cast<int>(cl.sides.size())) {
    throw Error(ErrorCode::kInvalidArgument, "no side " + std::to_string(s));
  }
  return *cl.sides[static_cast<std::size_t>(s)];
}

bool Surface::compact() const {
  return std::all_of(cells_.begin(), cells_.end(), [](const Cell& c) { return c.bounded(); });
}

std::optional<Rational> Surface::area() const {
  if (!compact()) return std::nullopt;
  Rational total;
  for (const Cell& c : cells_) {
    Rational twice;
    for (const auto& sd : c.sides) {
      std::vector<Vec2> pts;
      SideSpec spec = sd->spec();
      if (spec.scheme == "polyline") {
        pts = spec.points;
      } else {
        pts = {sd->start().point, sd->finish().point};
      }
      for (std::size_t i = 0; i + 1 < pts.size(); ++i) twice += cross(pts[i], pts[i + 1]);
    }
    total += twice / 2;
  }
  return total;
}

bool Surface::finite_combinatorics() const {
  for (const Cell& c : cells_) {
    for (bool w : c.window_edge) {
      if (w) return false;
    }
    for (const auto& s : c.sides) {
      const std::string scheme = s->spec().transformed ? s->spec().base->scheme : s->spec().scheme;
      if (scheme != "polyline" && scheme != "ray") return false;
    }
  }
  return true;
}

Segment Surface::segment(const EdgeRef& e) const {
  const Side& s = side(e.cell, e.side);
  if (!s.valid(e.index)) {
    throw Error(ErrorCode::kLocatorRangeExceeded, "edge " + to_string(e) + " outside the window");
  }
  return s.segment(e.index);
}

EdgeRef Surface::partner(const EdgeRef& e) const {
  auto it = pairing_.find({e.cell, e.side});
  if (it == pairing_.end()) {
    if (cell(e.cell).window_edge[static_cast<std::size_t>(e.side)]) {
      throw Error(ErrorCode::kLocatorRangeExceeded, "edge " + to_string(e) + " at the window edge");
    }
    throw Error(ErrorCode::kDanglingEdge, "edge " + to_string(e) + " has no partner");
  }
  EdgeRef p{it->second.first, it->second.second, e.index};
  if (!side(p.cell, p.side).valid(p.index)) {
    throw Error(ErrorCode::kLocatorRangeExceeded, "partner of " + to_string(e) + " outside the window");
  }
  return p;
}

Vec2 Surface::translation(const EdgeRef& e) const {
  Segment s = segment(e);
  Segment t = segment(partner(e));
  if (!s.a_infinite && !t.b_infinite) return t.b - s.a;
  if (!s.b_infinite && !t.a_infinite) return t.a - s.b;
  throw Error(ErrorCode::kMalformedGeometry, "edge " + to_string(e) + " has no finite endpoint");
}

int Surface::prev_side(int c, int s) const {
  return prev_side_.at(static_cast<std::size_t>(c)).at(static_cast<std::size_t>(s));
}

Corner Surface::corner(const CornerKey& k) const {
  const Cell& cl = cell(k.cell);
  const Side& sd = side(k.cell, k.side);
  Corner c;
  c.key = k;
  std::optional<long long> prev;
  if (k.index) {
    EdgeRef out{k.cell, k.side, *k.index};
    Segment seg = segment(out);
    if (seg.a_infinite) throw Error(ErrorCode::kMalformedGeometry, "corner at infinity");
    c.out = out;
    c.vertex = seg.a;
    c.start_dir = seg.delta();
    prev = sd.prev(*k.index);
  } else {
    SideEnd st = sd.start();
    if (st.kind == EndKind::kInfinity) throw Error(ErrorCode::kMalformedGeometry, "corner at infinity");
    c.vertex = st.point;
    c.start_dir = st.tangent;
  }
  if (prev) {
    EdgeRef in{k.cell, k.side, *prev};
    c.in = in;
    c.end_dir = -segment(in).delta();
  } else {
    int q = prev_side(k.cell, k.side);
    if (q < 0) throw Error(ErrorCode::kMalformedGeometry, "corner " + to_string(k) + " without junction");
    const Side& qs = side(k.cell, q);
    SideEnd fin = qs.finish();
    if (fin.kind == EndKind::kVertex) {
      EdgeRef in{k.cell, q, qs.last()};
      c.in = in;
      c.end_dir = -segment(in).delta();
    } else {
      c.end_dir = -fin.tangent;
    }
    c.cusp = cl.cusp[static_cast<std::size_t>(q)];
  }
  c.angle = c.cusp ? Angle::from_pi(0) : ccw_angle(c.start_dir, c.end_dir);
  return c;
}

Corner Surface::corner_with_in(const EdgeRef& e) const {
  const Side& sd = side(e.cell, e.side);
  auto n = sd.next(e.index);
  if (n) return corner({e.cell, e.side, *n});
  int j = cell(e.cell).next_side[static_cast<std::size_t>(e.side)];
  if (j < 0) throw Error(ErrorCode::kMalformedGeometry, "edge " + to_string(e) + " ends at infinity");
  const Side& js = side(e.cell, j);
  if (js.start().kind == EndKind::kVertex) return corner({e.cell, j, js.first()});
  return corner({e.cell, j, std::nullopt});
}

std::optional<Corner> Surface::ccw_next(const Corner& c) const {
  if (!c.in) return std::nullopt;
  EdgeRef p = partner(*c.in);
  return corner({p.cell, p.side, p.index});
}

std::optional<Corner> Surface::cw_next(const Corner& c) const {
  if (!c.out) return std::nullopt;
  return corner_with_in(partner(*c.out));
}

std::optional<Corner> Surface::resolve_wedge(const Corner& c, const Vec2& w) const {
  Corner cur = c;
  for (int step = 0; step < 512; ++step) {
    if (cur.contains(w)) return cur;
    auto n = ccw_next(cur);
    if (!n || n->key == c.key) return std::nullopt;
    cur = *n;
  }
  return std::nullopt;
}

Corner Surface::corner_at(const BoundaryHit& h) const {
  const EdgeRef& e = h.edge;
  switch (h.hit.kind) {
    case SideHit::Kind::kVertexA:
      return corner({e.cell, e.side, h.hit.index});
    case SideHit::Kind::kVertexB:
      return corner_with_in({e.cell, e.side, h.hit.index});
    case SideHit::Kind::kAccumulationStart:
      return corner({e.cell, e.side, std::nullopt});
    case SideHit::Kind::kAccumulationFinish: {
      int j = cell(e.cell).next_side[static_cast<std::size_t>(e.side)];
      if (j < 0) throw Error(ErrorCode::kMalformedGeometry, "accumulation at infinity");
      const Side& js = side(e.cell, j);
      if (js.start().kind == EndKind::kVertex) return corner({e.cell, j, js.first()});
      return corner({e.cell, j, std::nullopt});
    }
    case SideHit::Kind::kEdge:
      break;
  }
  throw Error(ErrorCode::kInvalidArgument, "hit is not at a vertex");
}

const Anchor& Surface::anchor(const std::string& label) const {
  for (const Anchor& a : anchors_) {
    if (a.label == label) return a;
  }
  throw Error(ErrorCode::kInvalidArgument, "no anchor '" + label + "'");
}

std::optional<std::string> Surface::anchor_label(const CornerKey& k) const {
  for (const auto& d : declarations_) {
    if (d.all_vertices) return d.label;
  }
  auto it = corner_anchor_.find(k);
  if (it == corner_anchor_.end()) {
    throw Error(ErrorCode::kUnresolvedIdentification, "corner " + to_string(k) + " is not identified");
  }
  if (it->second < 0) return std::nullopt;
  return anchors_[static_cast<std::size_t>(it->second)].label;
}

std::optional<BoundaryHit> Surface::locate(int c, const Vec2& o, const Vec2& v) const {
  const Cell& cl = cell(c);
  std::optional<BoundaryHit> best;
  for (std::size_t i = 0; i < cl.sides.size(); ++i) {
    auto h = cl.sides[i]->first_hit(o, v);
    if (!h) continue;
    if (best) {
      if (h->s > best->hit.s) continue;
      if (h->s == best->hit.s && (best->hit.at_vertex() || !h->at_vertex())) continue;
    }
    best = BoundaryHit{{c, static_cast<int>(i), h->index}, *h};
  }
  return best;
}

SurfacePoint Surface::canonical(const SurfacePoint& p) const {
  if (!p.edge) return p;
  EdgeRef q = partner(*p.edge);
  if (*p.edge < q) return p;
  return {q.cell, p.position + translation(*p.edge), q};
}

SurfacePoint Surface::cross_edge(const SurfacePoint& p, const Vec2& dir) const {
  if (!p.edge) throw Error(ErrorCode::kInvalidArgument, "point is not on an edge");
  if (p.edge->cell != p.cell) throw Error(ErrorCode::kInvalidArgument, "edge not in the point's cell");
  Segment seg = segment(*p.edge);
  if (!on_segment(p.position, seg)) throw Error(ErrorCode::kInvalidArgument, "point is not on the edge");
  if (sgn(cross(seg.delta(), dir)) >= 0) {
    throw Error(ErrorCode::kInvalidArgument, "direction does not leave the cell across the edge");
  }
  EdgeRef q = partner(*p.edge);
  return {q.cell, p.position + translation(*p.edge), q};
}

std::vector<Vec2> Surface::develop(int start, const std::vector<EdgeRef>& prefix) const {
  std::vector<Vec2> offsets{Vec2(0, 0)};
  int cur = start;
  for (const EdgeRef& e : prefix) {
    if (e.cell != cur) throw Error(ErrorCode::kInvalidArgument, "prefix is not a connected chain");
    offsets.push_back(offsets.back() - translation(e));
    cur = partner(e).cell;
  }
  return offsets;
}

std::vector<CornerKey> Surface::all_corners() const {
  std::vector<CornerKey> out;
  for (std::size_t c = 0; c < cells_.size(); ++c) {
    const Cell& cl = cells_[c];
    for (std::size_t s = 0; s < cl.sides.size(); ++s) {
      const Side& sd = *cl.sides[s];
      int ci = static_cast<int>(c), si = static_cast<int>(s);
      bool has_junction = prev_side_[c][s] >= 0;
      if (sd.start().kind != EndKind::kVertex && has_junction) {
        out.push_back({ci, si, std::nullopt});
      }
      for (long long i : sd.indices()) {
        if (sd.segment(i).a_infinite) continue;
        if (i == sd.first() && sd.start().kind == EndKind::kVertex && !has_junction) continue;
        out.push_back({ci, si, i});
      }
    }
  }
  return out;
}

std::vector<CornerKey> Surface::anchor_corners(const std::string& label, std::size_t limit) const {
  std::vector<CornerKey> all = all_corners();
  auto depth = [&](const CornerKey& k) -> long long {
    if (!k.index) return -1;
    const Side& sd = side(k.cell, k.side);
    if (sd.spec().scheme == "geometric" ||
        (sd.spec().transformed && sd.spec().base && sd.spec().base->scheme == "geometric")) {
      return *k.index;
    }
    if (*k.index == sd.first()) return -1;
    return std::llabs(*k.index);
  };
  std::stable_sort(all.begin(), all.end(), [&](const CornerKey& a, const CornerKey& b) {
    long long da = depth(a), db = depth(b);
    if (da != db) return da < db;
    return a < b;
  });
  std::vector<CornerKey> out;
  for (const CornerKey& k : all) {
    std::optional<std::string> l;
    try {
      l = anchor_label(k);
    } catch (const Error& e) {
      if (e.code() != ErrorCode::kLocatorRangeExceeded) throw;
      continue;
    }
    if (!l || *l != label) continue;
    out.push_back(k);
    if (out.size() >= limit) break;
  }
  return out;
}

void Surface::identify_anchors() {
  anchors_.clear();
  corner_anchor_.clear();
  const SingularityDeclaration* all = nullptr;
  for (const auto& d : declarations_) {
    if (d.all_vertices) all = &d;
  }
  if (!finite_combinatorics()) {
    if (all == nullptr) return;  // anchor_identify reports the gap
    Anchor a;
    a.label = all->label;
    a.declared = true;
    for (std::size_t c = 0; c < cells_.size(); ++c) {
      for (std::size_t s = 0; s < cells_[c].sides.size(); ++s) {
        if (prev_side_[c][s] < 0) continue;
        const Side& sd = *cells_[c].sides[s];
        CornerKey k{static_cast<int>(c), static_cast<int>(s), std::nullopt};
        if (sd.start().kind == EndKind::kVertex) k.index = sd.first();
        a.corners.push_back(k);
      }
    }
    std::sort(a.corners.begin(), a.corners.end());
    anchors_.push_back(std::move(a));
    return;
  }
  // Finite combinatorics: partition corners into corner-walk cycles.
  std::vector<CornerKey> corners = all_corners();
  std::set<CornerKey> seen;
  std::vector<std::pair<std::vector<CornerKey>, Angle>> cycles;
  for (const CornerKey& k : corners) {
    if (seen.count(k)) continue;
    std::vector<CornerKey> cyc;
    Angle total = Angle::from_pi(0);
    Corner cur = corner(k);
    bool closed = false;
    for (std::size_t step = 0; step <= corners.size(); ++step) {
      cyc.push_back(cur.key);
      seen.insert(cur.key);
      total = total + cur.angle;
      auto n = ccw_next(cur);
      if (!n) break;
      if (n->key == k) {
        closed = true;
        break;
      }
      cur = *n;
    }
    if (!closed) {
      throw Error(ErrorCode::kUnresolvedIdentification, "corner walk from " + to_string(k) + " does not close");
    }
    std::sort(cyc.begin(), cyc.end());
    cycles.emplace_back(std::move(cyc), total);
  }
  std::sort(cycles.begin(), cycles.end(),
            [](const auto& a, const auto& b) { return a.first.front() < b.first.front(); });
  int label_index = 0;
  for (auto& [cyc, total] : cycles) {
    bool flat = total.pi_multiple ? *total.pi_multiple == 2 : std::abs(total.value - kTwoPi) < 1e-12;
    if (flat && all == nullptr) {
      for (const CornerKey& k : cyc) corner_anchor_[k] = -1;
      continue;
    }
    if (all != nullptr && !anchors_.empty()) {
      Anchor& a = anchors_.front();
      a.corners.insert(a.corners.end(), cyc.begin(), cyc.end());
      std::sort(a.corners.begin(), a.corners.end());
      a.total_angle.reset();
      for (const CornerKey& k : cyc) corner_anchor_[k] = 0;
      continue;
    }
    Anchor a;
    if (all != nullptr) {
      a.label = all->label;
      a.declared = true;
    } else {
      a.label = label_index == 0 ? "x" : "x" + std::to_string(label_index);
    }
    a.corners = cyc;
    a.total_angle = total;
    for (const CornerKey& k : cyc) corner_anchor_[k] = static_cast<int>(anchors_.size());
    anchors_.push_back(std::move(a));
    ++label_index;
  }
}

std::vector<Anchor> anchor_identify(const Surface& s) {
  if (!s.finite_combinatorics()) {
    bool declared = false;
    for (const auto& d : s.declarations()) declared = declared || d.all_vertices;
    if (!declared) {
      // Walk from a junction corner to show the walk leaves the window.
      for (std::size_t c = 0; c < s.cells().size(); ++c) {
        for (std::size_t i = 0; i < s.cells()[c].sides.size(); ++i) {
          if (s.prev_side(static_cast<int>(c), static_cast<int>(i)) < 0) continue;
          throw Error(ErrorCode::kUnresolvedIdentification,
                      "corner walks leave the index window; a singularity declaration is required");
        }
      }
    }
  }
  return s.anchors();
}

namespace {

ValidationCheck check(std::string name) { return {std::move(name), true, ""}; }

void fail(ValidationCheck& c, const std::string& detail) {
  c.passed = false;
  if (!c.detail.empty()) c.detail += "; ";
  c.detail += detail;
}

std::vector<long long> sample_indices(const Side& sd, int budget) {
  std::vector<long long> out;
  long long i = sd.first();
  for (int n = 0; n < budget; ++n) {
    out.push_back(i);
    if (i == sd.last()) break;
    std::optional<long long> nx;
    try {
      nx = sd.next(i);
    } catch (const Error&) {
      break;
    }
    if (!nx) break;
    i = *nx;
  }
  if (std::find(out.begin(), out.end(), sd.last()) == out.end()) out.push_back(sd.last());
  return out;
}

}  // namespace

ValidationReport validate_surface(const Surface& s, int sample_budget) {
  if (sample_budget < 1) throw Error(ErrorCode::kInvalidArgument, "sample_budget must be >= 1");
  ValidationReport rep;

  // Boundary walks: consecutive pieces share endpoints, bounded cells are
  // positively oriented.
  for (std::size_t c = 0; c < s.cells().size(); ++c) {
    const Cell& cl = s.cells()[c];
    for (std::size_t i = 0; i < cl.sides.size(); ++i) {
      const Side& sd = *cl.sides[i];
      SideEnd fin = sd.finish();
      int j = cl.next_side[i];
      if ((fin.kind == EndKind::kInfinity) != (j < 0)) {
        throw Error(ErrorCode::kMalformedGeometry, "cell " + std::to_string(c) + " side " +
                                                       std::to_string(i) + " has an inconsistent junction");
      }
      if (j >= 0) {
        SideEnd st = cl.sides[static_cast<std::size_t>(j)]->start();
        if (!(st.point == fin.point)) {
          throw Error(ErrorCode::kMalformedGeometry, "boundary walk of cell " + std::to_string(c) +
                                                         " is not closed at side " + std::to_string(i));
        }
      }
      auto idx = sample_indices(sd, sample_budget);
      for (std::size_t n = 0; n + 1 < idx.size(); ++n) {
        auto nx = sd.next(idx[n]);
        if (!nx || *nx != idx[n + 1]) continue;
        if (!(sd.segment(idx[n]).b == sd.segment(*nx).a)) {
          throw Error(ErrorCode::kMalformedGeometry, "side pieces do not share endpoints");
        }
      }
    }
  }
  if (auto a = s.area()) {
    if (sgn(*a) <= 0) throw Error(ErrorCode::kMalformedGeometry, "boundary walk is not positively oriented");
  }

  ValidationCheck inv = check("gluing_involution");
  ValidationCheck trans = check("translation_property");
  for (std::size_t c = 0; c < s.cells().size(); ++c) {
    const Cell& cl = s.cells()[c];
    for (std::size_t i = 0; i < cl.sides.size(); ++i) {
      if (cl.window_edge[i]) continue;
      for (long long idx : sample_indices(*cl.sides[i], sample_budget)) {
        EdgeRef e{static_cast<int>(c), static_cast<int>(i), idx};
        EdgeRef p = s.partner(e);
        if (!(s.partner(p) == e)) fail(inv, "partner is not an involution at " + to_string(e));
        Segment a = s.segment(e), b = s.segment(p);
        Vec2 da = a.delta(), db = b.delta();
        if (sgn(cross(da, db)) != 0 || sgn(dot(da, db)) >= 0) {
          throw Error(ErrorCode::kMalformedGeometry, "edges " + to_string(e) + " and " + to_string(p) +
                                                         " are not antiparallel");
        }
        if (a.finite() && b.finite() && !(norm2(da) == norm2(db))) {
          throw Error(ErrorCode::kMalformedGeometry, "edges " + to_string(e) + " and " + to_string(p) +
                                                         " have different lengths");
        }
        Vec2 t = s.translation(e);
        bool maps = true;
        if (!a.a_infinite && !b.b_infinite) maps = maps && (a.a + t == b.b);
        if (!a.b_infinite && !b.a_infinite) maps = maps && (a.b + t == b.a);
        if (!maps) throw Error(ErrorCode::kMalformedGeometry, "translation does not map " + to_string(e) + " onto its partner");
        if (!(s.translation(p) == -t)) fail(trans, "translation is not antisymmetric at " + to_string(e));
      }
    }
  }
  rep.checks.push_back(inv);
  rep.checks.push_back(trans);

  ValidationCheck vr = check("vertex_removal");
  ValidationCheck flat = check("flat_points");
  try {
    auto anchors = anchor_identify(s);
    for (const Anchor& a : anchors) {
      if (a.total_angle) {
        bool is_flat = a.total_angle->pi_multiple ? *a.total_angle->pi_multiple == 2
                                                  : std::abs(a.total_angle->value - kTwoPi) < 1e-12;
        if (is_flat) fail(flat, "anchor " + a.label + " is a flat point");
      }
      // Isolation: distance from the anchor's corners to other anchors' vertices.
      double eps = std::numeric_limits<double>::infinity();
      for (const Anchor& b : anchors) {
        if (b.label == a.label) continue;
        for (const CornerKey& ka : a.corners) {
          for (const CornerKey& kb : b.corners) {
            if (ka.cell != kb.cell) continue;
            Vec2 d = s.corner(ka).vertex - s.corner(kb).vertex;
            eps = std::min(eps, norm(d));
          }
        }
      }
      if (!(eps > 0)) fail(vr, "anchor " + a.label + " is not isolated");
      rep.isolation[a.label] = eps;
    }
    if (s.finite_combinatorics()) {
      for (const CornerKey& k : s.all_corners()) s.anchor_label(k);
    }
  } catch (const Error& e) {
    fail(vr, e.what());
  }
  rep.checks.push_back(vr);
  rep.checks.push_back(flat);
  ValidationCheck disc = check("discreteness");
  for (const auto& [label, eps] : rep.isolation) {
    if (!(eps > 0)) fail(disc, "anchor " + label + " has no isolating radius");
  }
  rep.checks.push_back(disc);
  return rep;
}

}  // namespace flatsing
