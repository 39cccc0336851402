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

#include "flatsing/singularity.hpp"

#include <algorithm>
#include <cmath>
#include <map>
#include <set>

namespace flatsing {

const char* end_status_name(EndStatus s) {
  switch (s) {
    case EndStatus::kClosed: return "Closed";
    case EndStatus::kBoundary: return "Boundary";
    case EndStatus::kBudgetCapped: return "BudgetCapped";
    case EndStatus::kWindowLimited: return "WindowLimited";
  }
  return "?";
}

const char* component_kind_name(ComponentKind k) {
  switch (k) {
    case ComponentKind::kCircle: return "Circle";
    case ComponentKind::kClosedInterval: return "ClosedInterval";
    case ComponentKind::kSingleton: return "Singleton";
    case ComponentKind::kHalfOpenSpire: return "HalfOpenSpire";
    case ComponentKind::kDoubleSpireCandidate: return "DoubleSpireCandidate";
    case ComponentKind::kIncomplete: return "Incomplete";
  }
  return "?";
}

const char* singularity_tag_name(SingularityTag t) {
  switch (t) {
    case SingularityTag::kConePoint: return "ConePoint";
    case SingularityTag::kInfiniteAngle: return "InfiniteAngle";
    case SingularityTag::kWild: return "Wild";
    case SingularityTag::kFlatViolation: return "FlatViolation";
  }
  return "?";
}

namespace {

constexpr int kMaxCertificateSteps = 40;
constexpr std::size_t kMaxWalk = 100000;

Vec2 rot90(const Vec2& v) { return {Rational(-v.y), Rational(v.x)}; }

/// Direction at the given angle past the first ray of a corner.
std::optional<Vec2> direction_in(const Corner& c, double offset) {
  if (offset == 0 && c.out) return c.start_dir;
  Vec2 v = unit_approx(angle_of(c.start_dir) + offset);
  if (c.contains(v)) return v;
  return std::nullopt;
}

Vec2 wedge_middle(const Corner& c) {
  if (c.cusp) return c.start_dir;
  if (c.angle.pi_multiple) {
    const Rational& m = *c.angle.pi_multiple;
    if (m == 2) return -c.start_dir;
    if (m == 1) return rot90(c.start_dir);
    if (m == Rational(1, 2)) return c.start_dir + rot90(c.start_dir);
  }
  if (auto v = direction_in(c, c.angle.value / 2)) return *v;
  throw Error(ErrorCode::kMalformedGeometry, "cannot sample wedge " + to_string(c.key));
}

std::string obstruction_name(const Vec2& b) {
  if (sgn(b.y) == 0) return "horizontal";
  if (sgn(b.x) == 0) return "vertical";
  Rational slope = b.y / b.x;
  return "slope " + format_rational(slope);
}

/// r(gamma(t)) / t along a ray leaving a corner; zero when the ray meets a
/// singular point first.
/// A guess bounds the search radius; a result at the guess is redone at t.
double ratio_at(const Surface& s, const CornerKey& k, const Vec2& v, double t, double guess = 1.0) {
  GeodesicPath p = trace(s, TraceStart::at(k), v, t);
  if (p.termination == Termination::kHitSingularVertex) return 0.0;
  if (p.termination == Termination::kLocatorRangeExceeded) {
    throw Error(ErrorCode::kLocatorRangeExceeded, p.detail);
  }
  double cap = std::min(t, guess * t);
  DiskEstimate r = immersion_radius(s, p.end_point(), cap);
  if (cap < t && r.value >= cap * (1 - 1e-12)) r = immersion_radius(s, p.end_point(), t);
  return r.value / t;
}

/// Shrinking edges along the side that accumulates at a boundary wedge.
std::vector<double> boundary_edges(const Surface& s, const Corner& c, bool ccw_side) {
  std::vector<double> out;
  int side = c.key.side;
  if (ccw_side) {
    side = s.prev_side(c.key.cell, c.key.side);
    if (side < 0) return out;
  }
  const Side& sd = s.side(c.key.cell, side);
  const bool acc_start = sd.start().kind == EndKind::kAccumulation;
  const bool acc_finish = sd.finish().kind == EndKind::kAccumulation;
  if (acc_start == acc_finish) return out;
  const SideEnd far = acc_start ? sd.finish() : sd.start();
  auto toward = [&](long long i) { return acc_start ? sd.prev(i) : sd.next(i); };
  auto away = [&](long long i) { return acc_start ? sd.next(i) : sd.prev(i); };
  try {
    std::optional<long long> i;
    if (far.kind == EndKind::kVertex) {
      i = acc_start ? sd.last() : sd.first();
    } else {
      // Unbounded far end: the innermost instantiated edges, outermost first.
      i = acc_start ? sd.first() : sd.last();
      for (int n = 0; n < 11; ++n) {
        auto j = away(*i);
        if (!j) break;
        i = j;
      }
    }
    for (int n = 0; n < 12 && i; ++n) {
      Segment seg = sd.segment(*i);
      if (!seg.finite()) break;
      if (!s.anchor_label({c.key.cell, side, *i})) break;
      out.push_back(norm(seg.delta()));
      i = toward(*i);
    }
  } catch (const Error& e) {
    if (e.code() != ErrorCode::kLocatorRangeExceeded) throw;
  }
  return out;
}

BoundaryCertificate certify(const Surface& s, const Corner& c, bool ccw_side, double t0,
                            double floor) {
  BoundaryCertificate cert;
  cert.direction = ccw_side ? c.end_dir : c.start_dir;
  cert.obstruction = obstruction_name(cert.direction);
  cert.connection_lengths = boundary_edges(s, c, ccw_side);
  const Vec2& b = cert.direction;
  double guess = 1.0;
  try {
    if (c.cusp) {
      // Only the boundary ray itself lies in a cusp wedge.
      for (int j = 2; j < kMaxCertificateSteps; ++j) {
        double t = t0 * std::ldexp(1.0, -j);
        double r = ratio_at(s, c.key, b, t, guess);
        guess = 4 * r;
        cert.samples.push_back({t, r, 0.0});
        if (r < floor) {
          cert.reached_floor = true;
          break;
        }
      }
      return cert;
    }
    Vec2 inward = ccw_side ? -rot90(b) : rot90(b);
    for (int j = 1; j < kMaxCertificateSteps; ++j) {
      Rational d(1);
      d /= rational_pow(Rational(2), j);
      Vec2 v = b + d * inward;
      if (!c.contains(v)) continue;
      double r = ratio_at(s, c.key, v, t0, guess);
      guess = 4 * r;
      cert.samples.push_back({t0, r, std::atan(d.get_d())});
      if (r < floor) {
        cert.reached_floor = true;
        break;
      }
    }
  } catch (const Error& e) {
    if (e.code() != ErrorCode::kLocatorRangeExceeded) throw;
  }
  return cert;
}

Angle capped(double budget) { return Angle::approx(budget); }

/// Walks wedges from the seed corner in one rotational sense.
SweepSide walk(const Surface& s, const Corner& seed, Angle extent, bool ccw, double budget) {
  SweepSide side;
  Corner cur = seed;
  for (std::size_t step = 0;; ++step) {
    if (extent.value >= budget) {
      side.status = EndStatus::kBudgetCapped;
      side.extent = capped(budget);
      return side;
    }
    if (step >= kMaxWalk) {
      side.status = EndStatus::kWindowLimited;
      side.extent = extent;
      side.detail = "walk step cap";
      return side;
    }
    std::optional<Corner> n;
    try {
      n = ccw ? s.ccw_next(cur) : s.cw_next(cur);
    } catch (const Error& e) {
      if (e.code() != ErrorCode::kLocatorRangeExceeded) throw;
      side.status = EndStatus::kWindowLimited;
      side.extent = extent;
      side.detail = e.what();
      return side;
    }
    if (!n) {
      side.status = EndStatus::kBoundary;
      side.extent = extent;
      return side;
    }
    if (n->key == seed.key) {
      side.status = EndStatus::kClosed;
      side.extent = extent;
      return side;
    }
    side.corners.push_back(n->key);
    extent = extent + n->angle;
    cur = *n;
  }
}

Corner last_corner(const Surface& s, const Corner& seed, const SweepSide& side) {
  if (side.corners.empty()) return seed;
  return s.corner(side.corners.back());
}

}  // namespace

CornerKey chain_id(const Surface& s, const CornerKey& corner, std::size_t max_steps) {
  CornerKey best = corner;
  for (bool ccw : {true, false}) {
    Corner cur = s.corner(corner);
    for (std::size_t i = 0; i < max_steps; ++i) {
      std::optional<Corner> n;
      try {
        n = ccw ? s.ccw_next(cur) : s.cw_next(cur);
      } catch (const Error& e) {
        if (e.code() != ErrorCode::kLocatorRangeExceeded) throw;
        break;
      }
      if (!n || n->key == corner) break;
      best = std::min(best, n->key);
      cur = *n;
    }
  }
  return best;
}

RotationalComponent sweep(const Surface& s, const LinearApproach& seed, const SweepOptions& opts) {
  if (!seed.corner) throw Error(ErrorCode::kInvalidArgument, "sweep needs an approach at a vertex");
  if (!(opts.angle_budget > 0) || !(opts.radius_floor > 0)) {
    throw Error(ErrorCode::kInvalidArgument, "budgets must be positive");
  }
  RotationalComponent out;
  out.seed = seed;
  out.t0 = angle_of(seed.dir);
  const Corner c0 = s.corner(*seed.corner);
  out.seed_offset = ccw_angle(c0.start_dir, seed.dir, true);
  if (c0.cusp) out.seed_offset = Angle::from_pi(0);
  Angle rest = c0.cusp ? Angle::from_pi(0) : c0.angle - out.seed_offset;
  out.ccw = walk(s, c0, rest, true, opts.angle_budget);
  if (out.ccw.status == EndStatus::kClosed) {
    Angle total = out.ccw.extent + out.seed_offset;
    out.cw.status = EndStatus::kClosed;
    out.cw.extent = out.seed_offset;
    out.kind = ComponentKind::kCircle;
    out.length = total;
  } else {
    out.cw = walk(s, c0, out.seed_offset, false, opts.angle_budget);
    EndStatus a = out.ccw.status, b = out.cw.status;
    out.length = out.ccw.extent + out.cw.extent;
    if (a == EndStatus::kWindowLimited || b == EndStatus::kWindowLimited) {
      out.kind = ComponentKind::kIncomplete;
    } else if (a == EndStatus::kBoundary && b == EndStatus::kBoundary) {
      out.kind = out.length.value == 0 ? ComponentKind::kSingleton : ComponentKind::kClosedInterval;
    } else if (a == EndStatus::kBudgetCapped && b == EndStatus::kBudgetCapped) {
      out.kind = ComponentKind::kDoubleSpireCandidate;
    } else {
      out.kind = ComponentKind::kHalfOpenSpire;
    }
  }

  const double t0 = std::min(seed.delta, 0.25);
  if (opts.certificates) {
    if (out.ccw.status == EndStatus::kBoundary) {
      out.ccw.certificate = certify(s, last_corner(s, c0, out.ccw), true, t0, opts.radius_floor);
    }
    if (out.cw.status == EndStatus::kBoundary) {
      out.cw.certificate = certify(s, last_corner(s, c0, out.cw), false, t0, opts.radius_floor);
    }
  }

  // Radius profile at the seed and at the middle of the next wedges.
  std::vector<std::pair<double, CornerKey>> probes{{out.t0, c0.key}};
  double theta = out.t0 + rest.value;
  for (const CornerKey& k : out.ccw.corners) {
    if (static_cast<int>(probes.size()) >= opts.rho_samples) break;
    Corner c = s.corner(k);
    probes.push_back({theta + c.angle.value / 2, k});
    theta += c.angle.value;
  }
  for (const auto& [th, k] : probes) {
    Corner c = s.corner(k);
    Vec2 v = k == c0.key ? seed.dir : wedge_middle(c);
    try {
      out.rho.push_back({th, ratio_at(s, k, v, t0)});
    } catch (const Error& e) {
      if (e.code() != ErrorCode::kLocatorRangeExceeded) throw;
    }
  }
  out.chain_id = chain_id(s, c0.key);
  return out;
}

BoundaryTest boundary_test(const Surface& s, const LinearApproach& a, const std::vector<double>& m_schedule,
                           const std::vector<double>& t_schedule) {
  if (m_schedule.empty() || t_schedule.empty()) {
    throw Error(ErrorCode::kInvalidArgument, "schedules must be nonempty");
  }
  BoundaryTest out;
  out.min_ratio = std::numeric_limits<double>::infinity();
  for (double t : t_schedule) {
    GeodesicPath p = trace(s, a.start(), a.dir, t);
    double r = 0;
    if (p.termination == Termination::kLocatorRangeExceeded) {
      throw Error(ErrorCode::kLocatorRangeExceeded, p.detail);
    }
    if (p.termination != Termination::kHitSingularVertex) {
      r = immersion_radius(s, p.end_point(), t).value / t;
    }
    out.samples.push_back({t, r, 0.0});
    out.min_ratio = std::min(out.min_ratio, r);
  }
  out.boundary = true;
  for (double m : m_schedule) {
    const RatioSample* hit = nullptr;
    for (const RatioSample& smp : out.samples) {
      if (smp.ratio < m) {
        hit = &smp;
        break;
      }
    }
    if (!hit) {
      out.boundary = false;
      continue;
    }
    out.witnesses.push_back({m, hit->t, hit->ratio});
  }
  return out;
}

ComponentChart::ComponentChart(const Surface& s, const RotationalComponent& c, double t0)
    : s_(&s), c_(c), t0_(t0) {
  double k = std::round((t0 - c.t0) / kTwoPi);
  if (std::abs(t0 - c.t0 - k * kTwoPi) > 1e-9) {
    throw Error(ErrorCode::kInvalidArgument, "chart base must lie over the seed direction");
  }
}

bool ComponentChart::contains(double theta) const {
  if (c_.kind == ComponentKind::kCircle) return true;
  double d = theta - t0_;
  return d >= -c_.cw.extent.value - 1e-12 && d <= c_.ccw.extent.value + 1e-12;
}

LinearApproach ComponentChart::operator()(double theta) const {
  const Surface& s = *s_;
  const Corner c0 = s.corner(*c_.seed.corner);
  double d = theta - t0_;
  if (d == 0) return c_.seed;
  if (c_.kind == ComponentKind::kCircle) {
    double total = c_.length.value;
    d = std::fmod(d + c_.cw.extent.value, total);
    if (d < 0) d += total;
    d -= c_.cw.extent.value;
  }
  if (!contains(t0_ + d)) throw Error(ErrorCode::kOutsideSweep, "angle outside the swept interval");
  const double delta = c_.seed.delta;
  auto at = [&](const Corner& c, double offset) {
    auto v = direction_in(c, offset);
    if (!v) throw Error(ErrorCode::kOutsideSweep, "angle on a wedge boundary");
    return approach_at(s, c.key, *v, delta);
  };
  double off = c_.seed_offset.value;
  if (d >= 0) {
    double rest = c0.angle.value - off;
    if (d < rest) return at(c0, off + d);
    d -= rest;
    for (const CornerKey& k : c_.ccw.corners) {
      Corner c = s.corner(k);
      if (d < c.angle.value) return at(c, d);
      d -= c.angle.value;
    }
  } else {
    if (off + d >= 0) return at(c0, off + d);
    d += off;
    for (const CornerKey& k : c_.cw.corners) {
      Corner c = s.corner(k);
      if (c.angle.value + d >= 0) return at(c, c.angle.value + d);
      d += c.angle.value;
    }
  }
  throw Error(ErrorCode::kOutsideSweep, "angle beyond the unrolled wedges");
}

ComponentChart component_chart(const Surface& s, const RotationalComponent& c, double t0) {
  return ComponentChart(s, c, t0);
}

LinearApproach default_seed(const Surface& s, const std::string& anchor, double delta) {
  const Anchor& a = s.anchor(anchor);
  if (a.corners.empty()) throw Error(ErrorCode::kInvalidArgument, "anchor without corners");
  // The middle corner keeps truncated sheet chains away from their window.
  Corner c = s.corner(a.corners[a.corners.size() / 2]);
  return approach_at(s, c.key, wedge_middle(c), delta);
}

namespace {

std::vector<ComponentSummary> components_from(const Surface& s, const std::string& anchor,
                                              const std::vector<SaddleConnection>& scs,
                                              std::size_t corner_limit) {
  std::vector<CornerKey> corners = s.anchor(anchor).corners;
  if (corners.size() > corner_limit) corners.resize(corner_limit);
  for (const auto& sc : scs) corners.push_back(sc.start_corner);
  std::set<CornerKey> seen;
  std::map<CornerKey, ComponentSummary> chains;
  for (const CornerKey& k : corners) {
    if (!seen.insert(k).second) continue;
    CornerKey id = chain_id(s, k);
    if (chains.count(id)) continue;
    Corner c = s.corner(k);
    chains.emplace(id, ComponentSummary{id, approach_at(s, k, wedge_middle(c), 0.25)});
  }
  std::vector<ComponentSummary> out;
  for (auto& [id, summary] : chains) out.push_back(std::move(summary));
  return out;
}

}  // namespace

std::vector<ComponentSummary> seed_components(const Surface& s, const std::string& anchor, double eps,
                                              std::size_t corner_limit, std::size_t node_cap) {
  std::vector<SaddleConnection> scs;
  if (eps > 0) scs = saddle_connections(s, anchor, eps, corner_limit, node_cap).connections;
  return components_from(s, anchor, scs, corner_limit);
}

SingularityClass classify(const Surface& s, const std::string& anchor, double eps,
                          const ClassifyOptions& opts) {
  if (!(eps > 0)) throw Error(ErrorCode::kInvalidArgument, "epsilon must be positive");
  SingularityClass out;
  SaddleConnectionList scs = saddle_connections(s, anchor, eps, opts.corner_limit, opts.node_cap);
  for (const auto& sc : scs.connections) out.connection_lengths.push_back(sc.length);

  out.sweep = sweep(s, default_seed(s, anchor, std::min(eps, 0.25)), opts.sweep);
  std::vector<ComponentSummary> comps = components_from(s, anchor, scs.connections, opts.corner_limit);
  out.components = comps.size();
  // Boundary edges met by the component sweeps are connections as well.
  for (const ComponentSummary& c : comps) {
    RotationalComponent rc = sweep(s, c.seed, opts.sweep);
    for (const SweepSide* sd : {&rc.ccw, &rc.cw}) {
      if (!sd->certificate) continue;
      for (double l : sd->certificate->connection_lengths) {
        if (l <= eps) out.connection_lengths.push_back(l);
      }
    }
  }
  std::sort(out.connection_lengths.begin(), out.connection_lengths.end());
  out.connection_lengths.erase(
      std::unique(out.connection_lengths.begin(), out.connection_lengths.end(),
                  [](double a, double b) { return std::abs(a - b) <= 1e-12 * std::max(a, b); }),
      out.connection_lengths.end());

  if (out.sweep.kind == ComponentKind::kCircle) {
    out.total_angle = out.sweep.length;
    bool flat = out.sweep.length.pi_multiple ? *out.sweep.length.pi_multiple == 2
                                             : std::abs(out.sweep.length.value - kTwoPi) < 1e-9;
    if (flat) {
      out.tag = SingularityTag::kFlatViolation;
      out.evidence = "corner cycle closes at 2pi";
      return out;
    }
    if (!out.connection_lengths.empty()) {
      throw Error(ErrorCode::kIsolationViolated,
                  "connections of length " + format_double(out.connection_lengths.front()) +
                      " lie within epsilon of a cone point");
    }
    out.tag = SingularityTag::kConePoint;
    out.evidence = "corner cycle closes; no connection within epsilon";
    return out;
  }
  const auto& lens = out.connection_lengths;
  bool shrinking = lens.size() >= 3 && lens.front() < eps / 8;
  if (shrinking || out.components > 1) {
    out.tag = SingularityTag::kWild;
    if (shrinking) {
      out.evidence = std::to_string(lens.size()) + " connection lengths down to " +
                     format_double(lens.front());
    }
    if (out.components > 1) {
      if (!out.evidence.empty()) out.evidence += "; ";
      out.evidence += std::to_string(out.components) + " rotational components";
    }
    return out;
  }
  if (lens.empty() && out.sweep.ccw.status == EndStatus::kBudgetCapped &&
      out.sweep.cw.status == EndStatus::kBudgetCapped && out.components == 1) {
    out.tag = SingularityTag::kInfiniteAngle;
    out.evidence = "single component capped both ways; no connection within epsilon";
    return out;
  }
  throw Error(ErrorCode::kInconclusive, std::string("sweep ended as ") +
                                            component_kind_name(out.sweep.kind) +
                                            " without distinguishing evidence");
}

bool finite_affine_type(const Surface& s, double eps) {
  if (!s.compact() || !s.finite_combinatorics()) return false;
  for (const Anchor& a : s.anchors()) {
    if (classify(s, a.label, eps).tag != SingularityTag::kConePoint) return false;
  }
  return true;
}

}  // namespace flatsing
