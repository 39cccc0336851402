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

#include "flatsing/measures.hpp"

#include <algorithm>
#include <cmath>
#include <tuple>

namespace flatsing {

TransversalSegment make_transversal(const Surface& s, int cell, const Vec2& a, const Vec2& b,
                                    const Direction& theta) {
  if (a == b) throw Error(ErrorCode::kInvalidArgument, "degenerate transversal");
  if (sgn(cross(b - a, theta.vec())) == 0) {
    throw Error(ErrorCode::kParallelSegment, "transversal is parallel to the direction");
  }
  TraceOptions opts;
  opts.s_limit = Rational(1);
  GeodesicPath p = trace(s, TraceStart::at(SurfacePoint{cell, a, std::nullopt}), b - a, 0.0, opts);
  if (p.termination != Termination::kReachedTarget || !p.crossings.empty()) {
    throw Error(ErrorCode::kInvalidArgument, "transversal leaves its cell");
  }
  return {cell, a, b, theta};
}

double nu_measure(const TransversalSegment& sigma) {
  const Vec2& u = sigma.theta.vec();
  Rational c = cross(u, sigma.b - sigma.a);
  if (sgn(c) == 0) throw Error(ErrorCode::kParallelSegment, "segment is parallel to the direction");
  Rational w2 = c * c / norm2(u);
  return std::sqrt(w2.get_d());
}

namespace {

/// Interval swept by a segment on the axis normal to theta.
std::pair<double, double> normal_span(const TransversalSegment& t, double angle) {
  const double nx = -std::sin(angle), ny = std::cos(angle);
  double pa = t.a.dx() * nx + t.a.dy() * ny;
  double pb = t.b.dx() * nx + t.b.dy() * ny;
  return {std::min(pa, pb), std::max(pa, pb)};
}

void check_family(const std::vector<TransversalSegment>& ts, const Direction& theta) {
  if (ts.empty()) throw Error(ErrorCode::kNotFull, "no transversals supplied");
  for (const TransversalSegment& t : ts) {
    if (!(t.theta == theta)) throw Error(ErrorCode::kInvalidArgument, "transversals disagree on the direction");
    if (sgn(cross(t.b - t.a, theta.vec())) == 0) {
      throw Error(ErrorCode::kParallelSegment, "transversal is parallel to the direction");
    }
  }
}

}  // namespace

double mu_theta(const StripFamily& b, const std::vector<TransversalSegment>& transversals) {
  const Direction& theta = b.sigma.theta;
  check_family(transversals, theta);
  if (sgn(cross(b.sigma.b - b.sigma.a, theta.vec())) == 0) {
    throw Error(ErrorCode::kParallelSegment, "strip base is parallel to the direction");
  }
  const double angle = theta.angle();
  auto [lo, hi] = normal_span(b.sigma, angle);
  std::vector<std::pair<double, double>> parts;
  for (const TransversalSegment& t : transversals) {
    if (t.cell != b.sigma.cell) continue;
    auto [a, c] = normal_span(t, angle);
    a = std::max(a, lo);
    c = std::min(c, hi);
    if (c > a) parts.push_back({a, c});
  }
  std::sort(parts.begin(), parts.end());
  double covered = 0, reach = lo;
  for (auto [a, c] : parts) {
    if (c <= reach) continue;
    covered += c - std::max(a, reach);
    reach = c;
  }
  const double width = hi - lo;
  if (width - covered > 1e-12 * (1 + width)) throw Error(ErrorCode::kNotFull, "some germs miss every transversal");
  return covered;
}

double mu_theta(const Surface& s, const GermFamily& b, const std::vector<TransversalSegment>& transversals) {
  if (b.germs.empty()) return 0.0;
  const Direction theta(b.germs.front().dir);
  check_family(transversals, theta);
  for (std::size_t i = 0; i < b.germs.size(); ++i) {
    const LinearApproach& g = b.germs[i];
    if (!same_ray(g.dir, theta.vec())) throw Error(ErrorCode::kInvalidArgument, "germs disagree on the direction");
    if (g.germ.segments.empty()) throw Error(ErrorCode::kInvalidArgument, "germ without a representative");
    for (std::size_t j = 0; j < i; ++j) {
      if (g.same_germ(b.germs[j])) throw Error(ErrorCode::kInvalidArgument, "repeated germ");
    }
    // The leaf of the germ in the cell of its first piece.
    const PathSegment& p = g.germ.segments.front();
    bool crosses = false;
    for (const TransversalSegment& t : transversals) {
      if (t.cell != p.cell) continue;
      int sa = sgn(cross(g.dir, t.a - p.a));
      int sb = sgn(cross(g.dir, t.b - p.a));
      if (sa * sb <= 0) {
        crosses = true;
        break;
      }
    }
    if (!crosses) throw Error(ErrorCode::kNotFull, "germ " + std::to_string(i) + " misses every transversal");
  }
  (void)s;
  // Finitely many leaves meet each transversal in a null set.
  return 0.0;
}

Compatibility check_compatibility(const TransversalSegment& sigma, double tolerance) {
  Compatibility c;
  c.nu = nu_measure(sigma);
  c.mu = mu_theta(StripFamily{sigma}, {sigma});
  c.equal = std::abs(c.nu - c.mu) <= tolerance;
  return c;
}

namespace {

std::optional<SurfacePoint> point_at(const Surface& s, const LinearApproach& a, double t) {
  GeodesicPath p = trace_to_length(s, a, t);
  if (p.termination == Termination::kHitSingularVertex) return std::nullopt;
  if (p.termination == Termination::kLocatorRangeExceeded) {
    throw Error(ErrorCode::kLocatorRangeExceeded, p.detail);
  }
  return p.end_point();
}

/// Distance between points on two approaches of one anchor; nullopt when
/// the points are not comparable.
std::optional<double> approach_distance(const Surface& s, const LinearApproach& a1, double l1,
                                        const LinearApproach& a2, double l2) {
  if (l1 == 0 && l2 == 0) return 0.0;
  if (l1 == 0) return l2;
  if (l2 == 0) return l1;
  if (a1.same_germ(a2) && l1 == l2) return 0.0;
  try {
    auto p = point_at(s, a1, l1);
    auto q = point_at(s, a2, l2);
    if (!p || !q) return std::nullopt;
    // Through the common anchor is always available.
    const double via = l1 + l2;
    auto d = point_distance(s, *p, *q, via);
    return d ? std::min(*d, via) : via;
  } catch (const Error& e) {
    if (e.code() != ErrorCode::kLocatorRangeExceeded) throw;
    return std::nullopt;
  }
}

void check_pair(const LinearApproach& a1, const LinearApproach& a2, const std::vector<double>& ts) {
  if (!a1.anchor || !a2.anchor || *a1.anchor != *a2.anchor) {
    throw Error(ErrorCode::kInvalidArgument, "approaches must share an anchor");
  }
  if (ts.empty()) throw Error(ErrorCode::kInvalidArgument, "empty schedule");
  for (std::size_t i = 0; i < ts.size(); ++i) {
    if (!(ts[i] > 0) || (i > 0 && !(ts[i] < ts[i - 1]))) {
      throw Error(ErrorCode::kInvalidArgument, "schedule must decrease to zero");
    }
  }
}

void summarize(LimsupEstimate& out, std::size_t tail_from) {
  std::vector<double> tail;
  for (std::size_t i = 0; i < out.samples.size(); ++i) {
    if (!out.samples[i].value) {
      ++out.skipped;
      continue;
    }
    if (i >= tail_from) tail.push_back(*out.samples[i].value);
  }
  if (tail.empty()) throw Error(ErrorCode::kNoComparableSamples, "no comparable samples in the tail");
  out.estimate = *std::max_element(tail.begin(), tail.end());
  double d = tail.back() - tail.front();
  out.trend = std::abs(d) <= 1e-9 ? "stable" : (d > 0 ? "increasing" : "decreasing");
}

}  // namespace

LimsupEstimate alexandrov_distance(const Surface& s, const LinearApproach& a1, double s1, const LinearApproach& a2,
                                   double s2, const std::vector<double>& t_schedule) {
  check_pair(a1, a2, t_schedule);
  if (!(s1 >= 0) || !(s2 >= 0)) throw Error(ErrorCode::kInvalidArgument, "scales must be nonnegative");
  LimsupEstimate out;
  for (double t : t_schedule) {
    DistanceSample smp{t, t, std::nullopt};
    if (auto d = approach_distance(s, a1, t * s1, a2, t * s2)) smp.value = *d / t;
    out.samples.push_back(smp);
  }
  summarize(out, out.samples.size() / 2);
  return out;
}

LimsupEstimate upper_angle(const Surface& s, const LinearApproach& a1, const LinearApproach& a2,
                           const std::vector<double>& t_schedule) {
  check_pair(a1, a2, t_schedule);
  const std::size_t from = t_schedule.size() / 2;
  LimsupEstimate out;
  for (std::size_t i = from; i < t_schedule.size(); ++i) {
    for (std::size_t j = from; j < t_schedule.size(); ++j) {
      const double t = t_schedule[i], u = t_schedule[j];
      DistanceSample smp{t, u, std::nullopt};
      if (auto d = approach_distance(s, a1, t, a2, u)) {
        double c = (t * t + u * u - *d * *d) / (2 * t * u);
        smp.value = std::acos(std::clamp(c, -1.0, 1.0));
      }
      out.samples.push_back(smp);
    }
  }
  summarize(out, 0);
  return out;
}

const char* verdict_name(Verdict v) {
  switch (v) {
    case Verdict::kEquivalent: return "Equivalent-at-eps";
    case Verdict::kInequivalent: return "Inequivalent";
    case Verdict::kInconclusive: return "Inconclusive";
  }
  return "?";
}

namespace {

struct Spectrum {
  std::vector<SpectrumEntry> entries;
  std::vector<Rational> length2;
  bool complete = true;
  double confidence = 0;
};

Spectrum spectrum(const Surface& s, const std::string& anchor, double eps, const EquivalenceOptions& opts) {
  SaddleConnectionList l = saddle_connections(s, anchor, eps, opts.corner_limit, opts.node_cap);
  Spectrum out;
  out.complete = l.complete;
  out.confidence = l.confidence_radius;
  std::vector<std::tuple<Rational, Vec2>> keys;
  for (const SaddleConnection& c : l.connections) {
    if (c.end_anchor != anchor) {
      throw Error(ErrorCode::kIsolationViolated,
                  "connection from " + anchor + " reaches " + c.end_anchor + " within epsilon");
    }
    keys.emplace_back(c.length2, primitive(c.holonomy));
  }
  std::sort(keys.begin(), keys.end(), [](const auto& p, const auto& q) {
    if (std::get<0>(p) != std::get<0>(q)) return std::get<0>(p) < std::get<0>(q);
    return compare_angle(std::get<1>(p), std::get<1>(q)) < 0;
  });
  for (std::size_t i = 0; i < keys.size(); ++i) {
    if (i > 0 && std::get<0>(keys[i]) == std::get<0>(keys[i - 1]) && std::get<1>(keys[i]) == std::get<1>(keys[i - 1])) {
      continue;
    }
    out.length2.push_back(std::get<0>(keys[i]));
    out.entries.push_back({std::get<1>(keys[i]), std::sqrt(std::get<0>(keys[i]).get_d()), std::nullopt});
  }
  for (std::size_t i = 0; i < out.entries.size(); ++i) {
    for (std::size_t j = 0; j < out.entries.size(); ++j) {
      if (out.length2[i] == out.length2[j] && out.entries[j].direction == -out.entries[i].direction) {
        out.entries[i].partner = j;
      }
    }
  }
  return out;
}

std::string describe(const SpectrumEntry& e) {
  return "connection in direction (" + format_rational(e.direction.x) + ", " + format_rational(e.direction.y) +
         ") of length " + format_double(e.length);
}

/// Longest entry of a without a partner in b, among lengths up to limit.
std::optional<std::size_t> unmatched(const Spectrum& a, const Spectrum& b, double tol, double limit) {
  for (std::size_t i = a.entries.size(); i-- > 0;) {
    const SpectrumEntry& e = a.entries[i];
    if (e.length > limit) continue;
    bool found = false;
    for (const SpectrumEntry& f : b.entries) {
      if (f.direction == e.direction && std::abs(f.length - e.length) <= tol) {
        found = true;
        break;
      }
    }
    if (!found) return i;
  }
  return std::nullopt;
}

std::vector<ComponentSketch> sketches(const Surface& s, const std::string& anchor, double eps,
                                      const EquivalenceOptions& opts) {
  SweepOptions so = opts.sweep;
  so.certificates = false;
  std::vector<ComponentSketch> out;
  for (const ComponentSummary& c : seed_components(s, anchor, eps, opts.corner_limit, opts.node_cap)) {
    RotationalComponent rc = sweep(s, c.seed, so);
    out.push_back({c.seed.dir, rc.kind, rc.length.value, rc.ccw.status, rc.cw.status});
  }
  std::sort(out.begin(), out.end(), [](const ComponentSketch& a, const ComponentSketch& b) {
    auto ka = std::make_tuple(static_cast<int>(a.kind), static_cast<int>(a.ccw), static_cast<int>(a.cw));
    auto kb = std::make_tuple(static_cast<int>(b.kind), static_cast<int>(b.ccw), static_cast<int>(b.cw));
    if (ka != kb) return ka < kb;
    return a.length < b.length;
  });
  return out;
}

std::string describe(const ComponentSketch& c) {
  return std::string(component_kind_name(c.kind)) + " of length " + format_double(c.length / kPi) + "pi";
}

}  // namespace

EquivalenceCertificate neighborhood_equivalence(const Surface& x, const std::string& anchor_x, const Surface& y,
                                                const std::string& anchor_y, double eps, double tolerance,
                                                const EquivalenceOptions& opts) {
  if (!(eps > 0) || !(tolerance >= 0)) throw Error(ErrorCode::kInvalidArgument, "bad epsilon or tolerance");
  EquivalenceCertificate cert;
  cert.eps = eps;
  cert.tolerance = tolerance;
  Spectrum sx = spectrum(x, anchor_x, eps, opts);
  Spectrum sy = spectrum(y, anchor_y, eps, opts);
  cert.spectrum_x = sx.entries;
  cert.spectrum_y = sy.entries;

  const bool complete = sx.complete && sy.complete;
  const double limit = complete ? eps : std::min(sx.confidence, sy.confidence);
  if (auto i = unmatched(sx, sy, tolerance, limit)) {
    cert.verdict = Verdict::kInequivalent;
    cert.witness_kind = "spectrum";
    cert.witness = describe(sx.entries[*i]) + " at " + anchor_x + " has no partner at " + anchor_y;
    return cert;
  }
  if (auto i = unmatched(sy, sx, tolerance, limit)) {
    cert.verdict = Verdict::kInequivalent;
    cert.witness_kind = "spectrum";
    cert.witness = describe(sy.entries[*i]) + " at " + anchor_y + " has no partner at " + anchor_x;
    return cert;
  }

  cert.components_x = sketches(x, anchor_x, eps, opts);
  cert.components_y = sketches(y, anchor_y, eps, opts);
  bool incomplete = false;
  for (const auto* list : {&cert.components_x, &cert.components_y}) {
    for (const ComponentSketch& c : *list) incomplete = incomplete || c.kind == ComponentKind::kIncomplete;
  }
  if (!incomplete) {
    const auto& cx = cert.components_x;
    const auto& cy = cert.components_y;
    for (std::size_t i = 0; i < std::max(cx.size(), cy.size()); ++i) {
      if (i >= cx.size() || i >= cy.size()) {
        cert.verdict = Verdict::kInequivalent;
        cert.witness_kind = "component";
        cert.witness = std::to_string(cx.size()) + " components at " + anchor_x + " against " +
                       std::to_string(cy.size()) + " at " + anchor_y;
        return cert;
      }
      const ComponentSketch &a = cx[i], &b = cy[i];
      if (a.kind != b.kind || a.ccw != b.ccw || a.cw != b.cw || std::abs(a.length - b.length) > tolerance) {
        cert.verdict = Verdict::kInequivalent;
        cert.witness_kind = "component";
        cert.witness = describe(a) + " at " + anchor_x + " against " + describe(b) + " at " + anchor_y;
        return cert;
      }
    }
  }

  // Each matched direction carries a finite critical set, of measure zero
  // on both sides.
  for (const SpectrumEntry& e : sx.entries) {
    bool seen = false;
    for (const MeasureCheck& m : cert.measures) seen = seen || m.direction == e.direction;
    if (!seen) cert.measures.push_back({e.direction, 0.0, 0.0, true});
  }

  if (!complete || incomplete) {
    cert.verdict = Verdict::kInconclusive;
    cert.witness_kind = "budget";
    cert.witness = !complete ? "connection search limited to radius " + format_double(limit)
                             : "a component sweep reached the window";
    return cert;
  }
  cert.verdict = Verdict::kEquivalent;
  return cert;
}

}  // namespace flatsing
