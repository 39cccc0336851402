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

#include "flatsing/affine.hpp"

#include <algorithm>
#include <cmath>
#include <set>

namespace flatsing {

namespace {

Vec2 affine(const Matrix2& m, const Vec2& x, const Vec2& off) { return m.apply(x) + off; }

std::string matrix_text(const Matrix2& m) {
  return "[[" + format_rational(m.a) + "," + format_rational(m.b) + "],[" + format_rational(m.c) + "," +
         format_rational(m.d) + "]]";
}

/// Exact square root of a nonnegative rational, when it exists.
std::optional<Rational> rational_sqrt(const Rational& r) {
  if (sgn(r) < 0) return std::nullopt;
  mpz_class n = r.get_num(), d = r.get_den();
  if (!mpz_perfect_square_p(n.get_mpz_t()) || !mpz_perfect_square_p(d.get_mpz_t())) return std::nullopt;
  mpz_class sn, sd;
  mpz_sqrt(sn.get_mpz_t(), n.get_mpz_t());
  mpz_sqrt(sd.get_mpz_t(), d.get_mpz_t());
  return Rational(sn, sd);
}

double mod_pi(double t) {
  double r = std::fmod(t, kPi);
  if (r < 0) r += kPi;
  if (r >= kPi) r -= kPi;
  return r;
}

}  // namespace

AffineMap::AffineMap(SurfacePtr source, SurfacePtr target, Matrix2 matrix, std::map<int, int> correspondence,
                     std::map<int, Vec2> offsets)
    : source_(std::move(source)),
      target_(std::move(target)),
      matrix_(std::move(matrix)),
      corr_(std::move(correspondence)),
      offsets_(std::move(offsets)) {
  if (!source_ || !target_) throw Error(ErrorCode::kInvalidArgument, "affine map needs both surfaces");
  if (sgn(matrix_.det()) == 0) throw Error(ErrorCode::kInvalidArgument, "singular matrix");
  const int ns = static_cast<int>(source_->cells().size());
  const int nt = static_cast<int>(target_->cells().size());
  std::set<int> used;
  for (const auto& [c, d] : corr_) {
    if (c < 0 || c >= ns || d < 0 || d >= nt) {
      throw Error(ErrorCode::kInvalidArgument, "correspondence refers to a missing cell");
    }
    if (!used.insert(d).second) throw Error(ErrorCode::kInvalidArgument, "correspondence is not injective");
  }
  for (const auto& [c, off] : offsets_) {
    if (!corr_.count(c)) throw Error(ErrorCode::kInvalidArgument, "offset for an unmapped cell");
  }
  // Sampled well-definedness on the instantiated edges.
  for (const auto& [c, d] : corr_) {
    const Cell& sc = source_->cell(c);
    const Cell& tc = target_->cell(d);
    if (sc.sides.size() != tc.sides.size()) {
      throw Error(ErrorCode::kCorrespondenceGap, "cells " + std::to_string(c) + " and " + std::to_string(d) +
                                                     " have different side counts");
    }
    const Vec2 off = offset(c);
    for (std::size_t i = 0; i < sc.sides.size(); ++i) {
      const Side& ss = *sc.sides[i];
      const Side& ts = *tc.sides[i];
      for (long long k : ss.indices()) {
        EdgeRef e{c, static_cast<int>(i), k};
        if (!ts.valid(k)) throw Error(ErrorCode::kCorrespondenceGap, "no image for edge " + to_string(e));
        Segment a = ss.segment(k), b = ts.segment(k);
        bool ok = a.a_infinite == b.a_infinite && a.b_infinite == b.b_infinite;
        if (ok && !a.a_infinite) ok = affine(matrix_, a.a, off) == b.a;
        if (ok && !a.b_infinite) ok = affine(matrix_, a.b, off) == b.b;
        if (ok && !a.finite()) ok = same_ray(matrix_.apply(a.delta()), b.delta());
        if (!ok) throw Error(ErrorCode::kInvalidArgument, "edge " + to_string(e) + " does not map onto its image");
        if (sc.window_edge[i]) continue;
        EdgeRef p;
        try {
          p = source_->partner(e);
        } catch (const Error& err) {
          if (err.code() != ErrorCode::kLocatorRangeExceeded) throw;
          continue;
        }
        auto pd = corr_.find(p.cell);
        if (pd == corr_.end()) continue;
        EdgeRef te{d, static_cast<int>(i), k};
        EdgeRef tp;
        try {
          tp = target_->partner(te);
        } catch (const Error& err) {
          if (err.code() != ErrorCode::kLocatorRangeExceeded) throw;
          continue;
        }
        if (tp != EdgeRef{pd->second, p.side, p.index}) {
          throw Error(ErrorCode::kInvalidArgument, "gluing of " + to_string(e) + " is not respected");
        }
        Vec2 want = matrix_.apply(source_->translation(e)) + offset(p.cell) - off;
        if (!(target_->translation(te) == want)) {
          throw Error(ErrorCode::kInvalidArgument, "translation across " + to_string(e) + " is not respected");
        }
      }
    }
  }
}

int AffineMap::target_cell(int cell) const {
  auto it = corr_.find(cell);
  if (it == corr_.end()) {
    throw Error(ErrorCode::kCorrespondenceGap, "cell " + std::to_string(cell) + " is outside the correspondence");
  }
  return it->second;
}

Vec2 AffineMap::offset(int cell) const {
  auto it = offsets_.find(cell);
  return it == offsets_.end() ? Vec2(0, 0) : it->second;
}

SurfacePoint AffineMap::apply(const SurfacePoint& p) const {
  SurfacePoint q{target_cell(p.cell), affine(matrix_, p.position, offset(p.cell)), std::nullopt};
  if (p.edge) q.edge = EdgeRef{target_cell(p.edge->cell), p.edge->side, p.edge->index};
  return q;
}

CornerKey AffineMap::apply(const CornerKey& k) const { return {target_cell(k.cell), k.side, k.index}; }

std::string AffineMap::apply_anchor(const std::string& label) const {
  const Anchor& a = source_->anchor(label);
  for (const CornerKey& k : a.corners) {
    if (!corr_.count(k.cell)) continue;
    if (auto l = target_->anchor_label(apply(k))) return *l;
    throw Error(ErrorCode::kCorrespondenceGap, "image of " + to_string(k) + " is not singular");
  }
  throw Error(ErrorCode::kCorrespondenceGap, "anchor " + label + " has no corner in the correspondence");
}

AffineMap affine_image(SurfacePtr source, const Matrix2& matrix, std::map<int, int> correspondence,
                       std::map<int, Vec2> offsets) {
  if (!source) throw Error(ErrorCode::kInvalidArgument, "missing source surface");
  if (sgn(matrix.det()) == 0) throw Error(ErrorCode::kInvalidArgument, "singular matrix");
  const int n = static_cast<int>(source->cells().size());
  if (correspondence.empty()) {
    for (int c = 0; c < n; ++c) correspondence[c] = c;
  }
  if (static_cast<int>(correspondence.size()) != n) {
    throw Error(ErrorCode::kCorrespondenceGap, "image surfaces need every cell in the correspondence");
  }
  std::vector<Cell> cells(static_cast<std::size_t>(n));
  std::vector<bool> filled(static_cast<std::size_t>(n), false);
  for (const auto& [c, d] : correspondence) {
    if (c < 0 || c >= n || d < 0 || d >= n || filled[static_cast<std::size_t>(d)]) {
      throw Error(ErrorCode::kInvalidArgument, "correspondence is not a permutation of the cells");
    }
    filled[static_cast<std::size_t>(d)] = true;
    const Cell& src = source->cell(c);
    Cell& dst = cells[static_cast<std::size_t>(d)];
    Vec2 off = offsets.count(c) ? offsets[c] : Vec2(0, 0);
    for (const auto& side : src.sides) dst.sides.push_back(transformed_side(*side, matrix, off));
    dst.next_side = src.next_side;
    dst.cusp = src.cusp;
    dst.window_edge = src.window_edge;
    dst.exterior = src.exterior;
  }
  std::vector<GluingRule> rules;
  for (const GluingRule& r : source->rules()) {
    rules.push_back({correspondence[r.cell_a], r.side_a, correspondence[r.cell_b], r.side_b});
  }
  std::string params = "{\"source\":\"" + source->name() + "\",\"matrix\":\"" + matrix_text(matrix) + "\"}";
  auto target = std::make_shared<Surface>(source->name() + "_image", params, std::move(cells), std::move(rules),
                                          source->declarations());
  return AffineMap(std::move(source), std::move(target), matrix, std::move(correspondence), std::move(offsets));
}

AffineMap compose(const AffineMap& g, const AffineMap& f) {
  if (f.target() != g.source()) throw Error(ErrorCode::kInvalidArgument, "maps do not compose");
  std::map<int, int> corr;
  std::map<int, Vec2> offsets;
  for (const auto& [c, d] : f.correspondence()) {
    auto it = g.correspondence().find(d);
    if (it == g.correspondence().end()) continue;
    corr[c] = it->second;
    offsets[c] = g.matrix().apply(f.offset(c)) + g.offset(d);
  }
  return AffineMap(f.source(), g.target(), g.matrix() * f.matrix(), std::move(corr), std::move(offsets));
}

Direction normalized_action(const Matrix2& a, const Direction& theta) {
  if (sgn(a.det()) == 0) throw Error(ErrorCode::kInvalidArgument, "singular matrix");
  return Direction(a.apply(theta.vec()));
}

LinearApproach pushforward(const AffineMap& f, const LinearApproach& a) {
  if (sgn(f.matrix().det()) < 0) {
    throw Error(ErrorCode::kOrientationReversed, "orientation-reversing maps do not act on oriented approaches");
  }
  const Surface& t = *f.target();
  for (const PathSegment& seg : a.germ.segments) f.target_cell(seg.cell);
  const Vec2 w = f.matrix().apply(a.dir);
  TraceOptions opts;
  opts.s_limit = a.germ.end_s();

  LinearApproach out;
  out.dir = w;
  out.delta = a.delta * norm(w) / norm(a.dir);
  if (a.corner) {
    std::optional<Corner> c = t.resolve_wedge(t.corner(f.apply(*a.corner)), w);
    if (!c) throw Error(ErrorCode::kCorrespondenceGap, "image direction is not realized at the image vertex");
    out.corner = c->key;
    out.anchor = t.anchor_label(c->key);
    if (!out.anchor) out.base = SurfacePoint{c->key.cell, c->vertex, std::nullopt};
    out.germ = trace(t, TraceStart::at(c->key), w, 0.0, opts);
  } else {
    if (!a.base) throw Error(ErrorCode::kInvalidArgument, "approach without a base");
    out.base = f.apply(*a.base);
    out.germ = trace(t, TraceStart::at(*out.base), w, 0.0, opts);
  }

  // The re-traced germ must be the image of the source germ.
  const GeodesicPath& g = a.germ;
  bool ok = out.germ.segments.size() == g.segments.size() &&
            (out.germ.termination == Termination::kHitSingularVertex) ==
                (g.termination == Termination::kHitSingularVertex);
  for (std::size_t i = 0; ok && i < g.segments.size(); ++i) {
    const PathSegment& s = g.segments[i];
    const PathSegment& r = out.germ.segments[i];
    ok = r.cell == f.target_cell(s.cell) && r.b == affine(f.matrix(), s.b, f.offset(s.cell));
  }
  if (!ok) throw Error(ErrorCode::kCorrespondenceGap, "re-traced germ leaves the image of the source germ");
  return out;
}

CircleLift::CircleLift(Matrix2 a, double t0, double s0) : a_(std::move(a)), t0_(t0), s0_(s0) {
  if (sgn(a_.det()) <= 0) {
    throw Error(ErrorCode::kOrientationReversed, "circle lifts need a positive determinant");
  }
  m_[0] = a_.a.get_d();
  m_[1] = a_.b.get_d();
  m_[2] = a_.c.get_d();
  m_[3] = a_.d.get_d();
  double x = m_[0] * std::cos(t0) + m_[1] * std::sin(t0);
  double y = m_[2] * std::cos(t0) + m_[3] * std::sin(t0);
  double d = std::remainder(std::atan2(y, x) - s0, kTwoPi);
  if (std::abs(d) > 1e-9) throw Error(ErrorCode::kInvalidArgument, "s0 is not the image of t0");
}

double CircleLift::operator()(double t) const {
  const double k = std::floor((t - t0_) / kPi);
  const double base = t0_ + k * kPi;
  const double cb = std::cos(base), sb = std::sin(base), ct = std::cos(t), st = std::sin(t);
  const double ux = m_[0] * cb + m_[1] * sb, uy = m_[2] * cb + m_[3] * sb;
  const double vx = m_[0] * ct + m_[1] * st, vy = m_[2] * ct + m_[3] * st;
  double delta = std::atan2(ux * vy - uy * vx, ux * vx + uy * vy);
  if (delta < 0) delta = t == base ? 0.0 : delta + kTwoPi;
  if (delta > kPi) delta = kPi;
  return s0_ + k * kPi + delta;
}

CircleLift lift_map(const Matrix2& a, double t0, double s0) { return CircleLift(a, t0, s0); }

ComponentAction::ComponentAction(const AffineMap& f, const RotationalComponent& source,
                                 const RotationalComponent& target)
    : lift_(f.matrix(), source.t0, target.t0),
      src_(*f.source(), source, source.t0),
      tgt_(*f.target(), target, target.t0) {}

double ComponentAction::operator()(double theta) const {
  if (!src_.contains(theta)) throw Error(ErrorCode::kOutsideSweep, "angle outside the source component");
  double phi = lift_(theta);
  if (!tgt_.contains(phi)) throw Error(ErrorCode::kOutsideSweep, "image angle outside the target component");
  return phi;
}

LinearApproach ComponentAction::image(double theta) const { return tgt_((*this)(theta)); }

ComponentAction component_action(const AffineMap& f, const RotationalComponent& source,
                                 const RotationalComponent& target) {
  return ComponentAction(f, source, target);
}

const char* element_type_name(ElementType t) {
  switch (t) {
    case ElementType::kParabolic: return "Parabolic";
    case ElementType::kElliptic: return "Elliptic";
    case ElementType::kHyperbolic: return "Hyperbolic";
  }
  return "?";
}

namespace {

void require_unimodular(const Matrix2& a) {
  Rational d = a.det();
  if (d == -1) throw Error(ErrorCode::kOrientationReversed, "determinant -1");
  if (d != 1) throw Error(ErrorCode::kNotAreaPreserving, "determinant " + format_rational(d));
}

}  // namespace

ElementClass classify_element(const Matrix2& a) {
  require_unimodular(a);
  ElementClass out;
  out.trace = a.trace();
  const Rational at = abs(out.trace);
  if (at > 2) {
    out.type = ElementType::kHyperbolic;
    return out;
  }
  if (at == 2 && !a.is_identity() && !(a == Matrix2{-1, 0, 0, -1})) {
    out.type = ElementType::kParabolic;
    return out;
  }
  out.type = ElementType::kElliptic;
  // A rational trace 2 cos(theta) comes from a rational multiple of pi
  // only for traces 0, +-1 and +-2.
  const Rational& tr = out.trace;
  if (tr == 2) {
    out.rotation = Angle::from_pi(0);
  } else if (tr == -2) {
    out.rotation = Angle::from_pi(1);
  } else if (tr == 0) {
    out.rotation = Angle::from_pi(Rational(1, 2));
  } else if (tr == 1) {
    out.rotation = Angle::from_pi(Rational(1, 3));
  } else if (tr == -1) {
    out.rotation = Angle::from_pi(Rational(2, 3));
  } else {
    out.rotation = Angle::approx(std::acos(tr.get_d() / 2));
  }
  out.torsion = out.rotation->pi_multiple.has_value();
  return out;
}

std::vector<DirectionLattice> fixed_direction_lattice(const Matrix2& a) {
  require_unimodular(a);
  if (a.is_identity() || a == Matrix2{-1, 0, 0, -1}) {
    throw Error(ErrorCode::kInvalidArgument, "every direction is fixed by +-identity");
  }
  ElementClass k = classify_element(a);
  std::vector<DirectionLattice> out;
  if (k.type == ElementType::kElliptic) return out;
  auto eigen = [&](const Rational& lambda) -> Vec2 {
    Rational p = a.a - lambda, q = a.b;
    if (sgn(p) == 0 && sgn(q) == 0) {
      p = a.c;
      q = a.d - lambda;
    }
    return {q, Rational(-p)};
  };
  auto push = [&](const Vec2& v) {
    out.push_back({mod_pi(angle_of(v)), primitive(sgn(v.y) < 0 || (sgn(v.y) == 0 && sgn(v.x) < 0) ? -v : v)});
  };
  const Rational& tr = k.trace;
  if (k.type == ElementType::kParabolic) {
    push(eigen(tr / 2));
    return out;
  }
  Rational disc = tr * tr - 4;
  if (auto r = rational_sqrt(disc)) {
    push(eigen((tr - *r) / 2));
    push(eigen((tr + *r) / 2));
  } else {
    const double sq = std::sqrt(disc.get_d());
    for (double lambda : {(tr.get_d() - sq) / 2, (tr.get_d() + sq) / 2}) {
      double p = a.a.get_d() - lambda, q = a.b.get_d();
      if (std::abs(p) + std::abs(q) < 1e-300) {
        p = a.c.get_d();
        q = a.d.get_d() - lambda;
      }
      out.push_back({mod_pi(std::atan2(-p, q)), std::nullopt});
    }
  }
  std::sort(out.begin(), out.end(), [](const DirectionLattice& x, const DirectionLattice& y) {
    return x.offset < y.offset;
  });
  return out;
}

}  // namespace flatsing
