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

#include "flatsing/side.hpp"

#include <algorithm>
#include <cmath>
#include <limits>

#include "flatsing/error.hpp"

namespace flatsing {

namespace {

[[noreturn]] void out_of_window(const std::string& what) {
  throw Error(ErrorCode::kLocatorRangeExceeded, what);
}

SideHit vertex_hit(long long index, bool at_a, const Rational& s, const Vec2& p) {
  return {index, s, p, at_a ? SideHit::Kind::kVertexA : SideHit::Kind::kVertexB};
}

// ---------------------------------------------------------------------------

class PolylineSide final : public Side {
 public:
  explicit PolylineSide(std::vector<Vec2> pts) : pts_(std::move(pts)) {
    if (pts_.size() < 2) throw Error(ErrorCode::kMalformedGeometry, "polyline needs two points");
    for (std::size_t i = 0; i + 1 < pts_.size(); ++i) {
      if (pts_[i] == pts_[i + 1]) throw Error(ErrorCode::kMalformedGeometry, "degenerate segment");
    }
  }

  SideSpec spec() const override {
    SideSpec s;
    s.scheme = "polyline";
    s.points = pts_;
    return s;
  }
  long long first() const override { return 0; }
  long long last() const override { return static_cast<long long>(pts_.size()) - 2; }
  std::optional<long long> next(long long i) const override {
    if (i + 1 <= last()) return i + 1;
    return std::nullopt;
  }
  std::optional<long long> prev(long long i) const override {
    if (i > 0) return i - 1;
    return std::nullopt;
  }
  bool valid(long long i) const override { return i >= 0 && i <= last(); }
  Segment segment(long long i) const override {
    return {pts_[static_cast<std::size_t>(i)], pts_[static_cast<std::size_t>(i) + 1]};
  }
  SideEnd start() const override { return {EndKind::kVertex, pts_.front(), pts_[1] - pts_[0]}; }
  SideEnd finish() const override {
    auto n = pts_.size();
    return {EndKind::kVertex, pts_[n - 1], pts_[n - 1] - pts_[n - 2]};
  }

  std::optional<SideHit> first_hit(const Vec2& o, const Vec2& v) const override {
    std::optional<SideHit> best;
    for (long long i = 0; i <= last(); ++i) {
      auto h = intersect_ray_segment(o, v, segment(i));
      if (!h) continue;
      if (best && h->s >= best->s) continue;
      SideHit sh{i, h->s, o + h->s * v, SideHit::Kind::kEdge};
      if (h->where == RayHit::Where::kAtA) sh.kind = SideHit::Kind::kVertexA;
      if (h->where == RayHit::Where::kAtB) sh.kind = SideHit::Kind::kVertexB;
      best = sh;
    }
    return best;
  }

 private:
  std::vector<Vec2> pts_;
};

// ---------------------------------------------------------------------------

class GeometricSide final : public Side {
 public:
  GeometricSide(Vec2 from, Vec2 to, Rational ratio, bool big_at_start, long long window)
      : p_(std::move(from)), q_(std::move(to)), ratio_(std::move(ratio)),
        big_at_start_(big_at_start), window_(window) {
    if (p_ == q_) throw Error(ErrorCode::kMalformedGeometry, "degenerate geometric side");
    if (sgn(ratio_) <= 0 || ratio_ >= 1) {
      throw Error(ErrorCode::kInvalidArgument, "geometric ratio must lie in (0, 1)");
    }
    if (window_ < 1) throw Error(ErrorCode::kInvalidArgument, "window must be positive");
    powers_.reserve(static_cast<std::size_t>(window_) + 2);
    Rational p(1);
    for (long long k = 0; k <= window_ + 1; ++k) {
      powers_.push_back(p);
      p *= ratio_;
    }
    log_ratio_ = std::log(ratio_.get_d());
    for (const Rational& p : powers_) dpowers_.push_back(p.get_d());
    dp_ = to_dpoint(p_);
    dq_ = to_dpoint(q_);
    positions_.reserve(powers_.size());
    for (const Rational& p : powers_) positions_.push_back(position(1 - p));
  }

  SideSpec spec() const override {
    SideSpec s;
    s.scheme = "geometric";
    s.points = {p_, q_};
    s.ratio = ratio_;
    s.flag = big_at_start_;
    s.window = window_;
    return s;
  }

  long long first() const override { return big_at_start_ ? 0 : window_ - 1; }
  long long last() const override { return big_at_start_ ? window_ - 1 : 0; }
  std::optional<long long> next(long long i) const override {
    return big_at_start_ ? deeper(i) : shallower(i);
  }
  std::optional<long long> prev(long long i) const override {
    return big_at_start_ ? shallower(i) : deeper(i);
  }
  bool valid(long long i) const override { return i >= 0 && i < window_; }

  Segment segment(long long k) const override {
    Vec2 near_big = boundary_position(k);
    Vec2 far_big = boundary_position(k + 1);
    if (big_at_start_) return {near_big, far_big};
    return {far_big, near_big};
  }

  SideEnd start() const override {
    return {big_at_start_ ? EndKind::kVertex : EndKind::kAccumulation, p_, q_ - p_};
  }
  SideEnd finish() const override {
    return {big_at_start_ ? EndKind::kAccumulation : EndKind::kVertex, q_, q_ - p_};
  }

  std::optional<SideHit> first_hit(const Vec2& o, const Vec2& v) const override {
    const Vec2 w = q_ - p_;
    if (sgn(cross(v, w)) == 0) return collinear_hit(o, v);
    auto h = intersect_ray_segment(o, v, Segment{p_, q_});
    if (!h) return std::nullopt;
    Rational d = big_at_start_ ? h->lambda : Rational(1 - h->lambda);
    Vec2 point = o + h->s * v;
    if (d == 1) {
      return SideHit{0, h->s, point,
                     big_at_start_ ? SideHit::Kind::kAccumulationFinish
                                   : SideHit::Kind::kAccumulationStart};
    }
    Rational rest = 1 - d;
    long long k = level(rest);
    if (rest == powers_[static_cast<std::size_t>(k)]) return boundary_hit(k, h->s, point);
    if (k >= window_) out_of_window("geometric side hit beyond index window");
    return SideHit{k, h->s, point, SideHit::Kind::kEdge};
  }

  DSegment dsegment(long long k) const override {
    const double d0 = 1 - dpowers_[static_cast<std::size_t>(k)];
    const double d1 = 1 - dpowers_[static_cast<std::size_t>(k) + 1];
    DPoint near_big = dposition(d0), far_big = dposition(d1);
    if (big_at_start_) return {near_big, far_big};
    return {far_big, near_big};
  }

  void near(const DPoint& c, double radius, std::vector<long long>& out) const override {
    for (long long k = 0; k < window_; ++k) {
      if (distance_to_segment(c, dsegment(k)) <= radius) out.push_back(k);
    }
  }

 private:
  std::optional<long long> deeper(long long i) const {
    if (i + 1 < window_) return i + 1;
    out_of_window("geometric side walk beyond index window");
  }
  std::optional<long long> shallower(long long i) const {
    if (i > 0) return i - 1;
    return std::nullopt;
  }

  // Relative distance of boundary k from the big end.
  Rational boundary(long long k) const {
    if (k <= window_ + 1) return 1 - powers_[static_cast<std::size_t>(k)];
    return 1 - rational_pow(ratio_, k);
  }
  Vec2 boundary_position(long long k) const {
    if (k >= 0 && k < static_cast<long long>(positions_.size())) {
      return positions_[static_cast<std::size_t>(k)];
    }
    return position(boundary(k));
  }
  DPoint dposition(double d) const {
    if (big_at_start_) return {dp_.x + d * (dq_.x - dp_.x), dp_.y + d * (dq_.y - dp_.y)};
    return {dq_.x + d * (dp_.x - dq_.x), dq_.y + d * (dp_.y - dq_.y)};
  }
  Vec2 position(const Rational& d) const {
    if (big_at_start_) return p_ + d * (q_ - p_);
    return q_ + d * (p_ - q_);
  }

  // Largest k with rest <= ratio^k, for rest in (0, 1]. Capped at window + 1.
  long long level(const Rational& rest) const {
    double lg = std::log2(rest.get_num().get_d()) - std::log2(rest.get_den().get_d());
    if (!std::isfinite(lg)) {
      lg = static_cast<double>(mpz_sizeinbase(rest.get_num_mpz_t(), 2)) -
           static_cast<double>(mpz_sizeinbase(rest.get_den_mpz_t(), 2));
    }
    double est = lg * std::log(2.0) / log_ratio_;
    long long k = static_cast<long long>(std::floor(est));
    k = std::clamp<long long>(k, 0, window_ + 1);
    while (k > 0 && powers_[static_cast<std::size_t>(k)] < rest) --k;
    while (k < window_ + 1 && powers_[static_cast<std::size_t>(k + 1)] >= rest) ++k;
    return k;
  }

  SideHit boundary_hit(long long k, const Rational& s, const Vec2& point) const {
    if (k > window_) out_of_window("geometric side vertex beyond index window");
    // Boundary k starts piece k and ends piece k - 1.
    long long idx = k < window_ ? k : window_ - 1;
    bool at_big_side_of_piece = k < window_;
    bool at_a = big_at_start_ ? at_big_side_of_piece : !at_big_side_of_piece;
    return vertex_hit(idx, at_a, s, point);
  }

  std::optional<SideHit> collinear_hit(const Vec2& o, const Vec2& v) const {
    const Vec2 w = q_ - p_;
    if (sgn(cross(p_ - o, v)) != 0) return std::nullopt;
    // Rays only run forward along a boundary.
    if (sgn(dot(v, w)) < 0) return std::nullopt;
    const Rational ww = norm2(w);
    Rational lam0 = dot(o - p_, w) / ww;
    int sigma = sgn(dot(v, w));
    Rational target;
    if (sgn(lam0) < 0 || lam0 > 1) {
      if (sgn(lam0) < 0 && sigma > 0) target = 0;
      else if (lam0 > 1 && sigma < 0) target = 1;
      else return std::nullopt;
    } else {
      Rational d0 = big_at_start_ ? lam0 : Rational(1 - lam0);
      int tau = big_at_start_ ? sigma : -sigma;
      Rational dk;
      if (tau > 0) {
        if (d0 == 1) return std::nullopt;
        Rational rest = 1 - d0;
        long long k = level(rest);
        // Next boundary strictly beyond d0.
        long long kn = k + 1;
        if (kn > window_) out_of_window("collinear walk beyond index window");
        dk = boundary(kn);
      } else {
        if (sgn(d0) == 0) return std::nullopt;
        Rational rest = 1 - d0;
        long long k = level(rest);
        if (rest == powers_[static_cast<std::size_t>(k)]) --k;
        if (k < 0) return std::nullopt;
        dk = boundary(k);
      }
      target = big_at_start_ ? dk : Rational(1 - dk);
    }
    Vec2 point = p_ + target * w;
    Rational s = dot(point - o, v) / norm2(v);
    if (sgn(s) <= 0) return std::nullopt;
    Rational d = big_at_start_ ? target : Rational(1 - target);
    if (d == 1) {
      return SideHit{0, s, point,
                     big_at_start_ ? SideHit::Kind::kAccumulationFinish
                                   : SideHit::Kind::kAccumulationStart};
    }
    long long k = level(1 - d);
    return boundary_hit(k, s, point);
  }

  Vec2 p_, q_;
  Rational ratio_;
  bool big_at_start_;
  long long window_;
  std::vector<Rational> powers_;
  std::vector<double> dpowers_;
  std::vector<Vec2> positions_;
  DPoint dp_, dq_;
  double log_ratio_;
};

// ---------------------------------------------------------------------------

class RaySide final : public Side {
 public:
  RaySide(Vec2 apex, Vec2 dir, bool outward)
      : apex_(std::move(apex)), dir_(std::move(dir)), outward_(outward) {
    if (dir_.is_zero()) throw Error(ErrorCode::kMalformedGeometry, "ray side with zero direction");
  }

  SideSpec spec() const override {
    SideSpec s;
    s.scheme = "ray";
    s.points = {apex_, dir_};
    s.flag = outward_;
    return s;
  }
  long long first() const override { return 0; }
  long long last() const override { return 0; }
  std::optional<long long> next(long long) const override { return std::nullopt; }
  std::optional<long long> prev(long long) const override { return std::nullopt; }
  bool valid(long long i) const override { return i == 0; }
  Segment segment(long long) const override {
    if (outward_) return {apex_, apex_ + dir_, false, true};
    return {apex_ + dir_, apex_, true, false};
  }
  SideEnd start() const override {
    if (outward_) return {EndKind::kVertex, apex_, dir_};
    return {EndKind::kInfinity, apex_, -dir_};
  }
  SideEnd finish() const override {
    if (outward_) return {EndKind::kInfinity, apex_, dir_};
    return {EndKind::kVertex, apex_, -dir_};
  }
  std::optional<SideHit> first_hit(const Vec2& o, const Vec2& v) const override {
    auto h = intersect_ray_segment(o, v, segment(0));
    if (!h) return std::nullopt;
    SideHit sh{0, h->s, o + h->s * v, SideHit::Kind::kEdge};
    if (h->where == RayHit::Where::kAtA) sh.kind = SideHit::Kind::kVertexA;
    if (h->where == RayHit::Where::kAtB) sh.kind = SideHit::Kind::kVertexB;
    return sh;
  }

 private:
  Vec2 apex_, dir_;
  bool outward_;
};

// ---------------------------------------------------------------------------

class ChordChainSide final : public Side {
 public:
  ChordChainSide(int sx, int sy, bool outward, long long window)
      : sx_(sx), sy_(sy), outward_(outward), window_(window) {
    if ((sx != 1 && sx != -1) || (sy != 1 && sy != -1)) {
      throw Error(ErrorCode::kInvalidArgument, "chord chain signs must be +-1");
    }
    if (window_ < 1) throw Error(ErrorCode::kInvalidArgument, "window must be positive");
    for (long long n = -window_; n <= window_ + 1; ++n) {
      Rational two = rational_pow(Rational(2), n);
      Vec2 v(Rational(sx_ * two), Rational(sy_ * two * two));
      dvert_.push_back(to_dpoint(v));
      vert_.push_back(std::move(v));
    }
  }

  SideSpec spec() const override {
    SideSpec s;
    s.scheme = "chord_chain";
    s.sx = sx_;
    s.sy = sy_;
    s.flag = outward_;
    s.window = window_;
    return s;
  }
  long long first() const override { return outward_ ? -window_ : window_; }
  long long last() const override { return outward_ ? window_ : -window_; }
  std::optional<long long> next(long long n) const override {
    return outward_ ? up(n) : down(n);
  }
  std::optional<long long> prev(long long n) const override {
    return outward_ ? down(n) : up(n);
  }
  bool valid(long long n) const override { return n >= -window_ && n <= window_; }
  Segment segment(long long n) const override {
    const Vec2& lo = vertex(n);
    const Vec2& hi = vertex(n + 1);
    if (outward_) return {lo, hi};
    return {hi, lo};
  }
  SideEnd start() const override {
    if (outward_) return {EndKind::kAccumulation, Vec2(0, 0), Vec2(sx_, 0)};
    return {EndKind::kInfinity, Vec2(0, 0), Vec2(0, -sy_)};
  }
  SideEnd finish() const override {
    if (outward_) return {EndKind::kInfinity, Vec2(0, 0), Vec2(0, sy_)};
    return {EndKind::kAccumulation, Vec2(0, 0), Vec2(-sx_, 0)};
  }

  std::optional<SideHit> first_hit(const Vec2& o, const Vec2& v) const override {
    const double ox = o.dx(), oy = o.dy(), vx = v.dx(), vy = v.dy();
    std::optional<SideHit> best;
    for (long long n = -window_; n <= window_; ++n) {
      const DPoint& a = dvert(n);
      const DPoint& b = dvert(n + 1);
      if (!maybe_hits(ox, oy, vx, vy, a, b)) continue;
      Segment seg = segment(n);
      auto h = intersect_ray_segment(o, v, seg);
      if (!h) continue;
      if (best && h->s >= best->s) continue;
      SideHit sh{n, h->s, o + h->s * v, SideHit::Kind::kEdge};
      if (h->where == RayHit::Where::kAtA) sh.kind = SideHit::Kind::kVertexA;
      if (h->where == RayHit::Where::kAtB) sh.kind = SideHit::Kind::kVertexB;
      best = sh;
    }
    check_inner(o, v, best);
    check_outer(ox, oy, vx, vy, best);
    if (!best && sgn(cross(o, v)) == 0 && sgn(v.y) == 0 && sgn(dot(o, v)) < 0) {
      return origin_hit(o, v);
    }
    return best;
  }

  DSegment dsegment(long long n) const override {
    if (outward_) return {dvert(n), dvert(n + 1)};
    return {dvert(n + 1), dvert(n)};
  }

  void near(const DPoint& c, double radius, std::vector<long long>& out) const override {
    for (long long n = -window_; n <= window_; ++n) {
      if (distance_to_segment(c, DSegment{dvert(n), dvert(n + 1)}) <= radius) out.push_back(n);
    }
  }

 private:
  std::optional<long long> up(long long n) const {
    if (n + 1 <= window_) return n + 1;
    out_of_window("chord chain beyond outer window");
  }
  std::optional<long long> down(long long n) const {
    if (n - 1 >= -window_) return n - 1;
    out_of_window("chord chain beyond inner window");
  }
  const Vec2& vertex(long long n) const { return vert_[static_cast<std::size_t>(n + window_)]; }
  const DPoint& dvert(long long n) const { return dvert_[static_cast<std::size_t>(n + window_)]; }

  static bool maybe_hits(double ox, double oy, double vx, double vy, const DPoint& a,
                         const DPoint& b) {
    const double wx = b.x - a.x, wy = b.y - a.y;
    const double den = vx * wy - vy * wx;
    const double scale = (std::abs(vx) + std::abs(vy)) * (std::abs(wx) + std::abs(wy));
    if (std::abs(den) <= 1e-9 * scale) return true;
    const double aox = a.x - ox, aoy = a.y - oy;
    const double s = (aox * wy - aoy * wx) / den;
    const double lam = (aox * vy - aoy * vx) / den;
    const double tol = 1e-9;
    return lam >= -tol && lam <= 1 + tol && s >= -tol * (1 + std::abs(s));
  }

  SideHit origin_hit(const Vec2& o, const Vec2& v) const {
    Rational s = -dot(o, v) / norm2(v);
    return SideHit{0, s, Vec2(0, 0),
                   outward_ ? SideHit::Kind::kAccumulationStart
                            : SideHit::Kind::kAccumulationFinish};
  }

  // The chain below the window lies in the box between the origin and the
  // innermost instantiated vertex.
  void check_inner(const Vec2& o, const Vec2& v, std::optional<SideHit>& best) const {
    const DPoint& corner = dvert(-window_);
    const double x0 = std::min(0.0, corner.x), x1 = std::max(0.0, corner.x);
    const double y0 = std::min(0.0, corner.y), y1 = std::max(0.0, corner.y);
    double t_enter = 0;
    if (!ray_box(o.dx(), o.dy(), v.dx(), v.dy(), x0, x1, y0, y1, t_enter)) return;
    if (best && best->s.get_d() < t_enter * (1 - 1e-12)) return;
    // Exactly horizontal rays through the origin reach it between the chains.
    if (sgn(v.y) == 0 && sgn(o.y) == 0 && sgn(dot(o, v)) < 0) {
      SideHit h = origin_hit(o, v);
      if (!best || h.s < best->s) best = h;
      return;
    }
    // The chain lies in the open half plane sy * y > 0.
    if (sy_ * sgn(o.y) <= 0 && sy_ * sgn(v.y) <= 0) return;
    out_of_window("ray enters the chord chain below the inner window");
  }

  // Beyond the window the chain stays on the far side of the parabola.
  void check_outer(double ox, double oy, double vx, double vy,
                   const std::optional<SideHit>& best) const {
    const double big_x = std::abs(dvert(window_ + 1).x);
    const double u0 = sx_ * ox, du = sx_ * vx;
    const double w0 = sy_ * oy, dw = sy_ * vy;
    if (du <= 0 && u0 < big_x) return;
    double s_start = du > 0 ? std::max(0.0, (big_x - u0) / du) : 0.0;
    // g(s) = w(s) - u(s)^2 is concave; check its maximum on [s_start, inf).
    auto g = [&](double s) {
      double u = u0 + s * du;
      return (w0 + s * dw) - u * u;
    };
    double s_peak = du != 0 ? (dw - 2 * u0 * du) / (2 * du * du) : s_start;
    double s_eval = std::max(s_start, s_peak);
    if (g(s_eval) < 0 && g(s_start) < 0) return;
    if (best && best->s.get_d() < s_start) return;
    out_of_window("ray may reach the chord chain beyond the outer window");
  }

  static bool ray_box(double ox, double oy, double vx, double vy, double x0, double x1, double y0,
                      double y1, double& t_enter) {
    const double pad = 1e-12 * (1 + std::max(std::abs(x1 - x0), std::abs(y1 - y0)));
    x0 -= pad;
    x1 += pad;
    y0 -= pad;
    y1 += pad;
    double tmin = 0, tmax = std::numeric_limits<double>::infinity();
    auto slab = [&](double o, double d, double lo, double hi) {
      if (d == 0) return o >= lo && o <= hi;
      double t1 = (lo - o) / d, t2 = (hi - o) / d;
      if (t1 > t2) std::swap(t1, t2);
      tmin = std::max(tmin, t1);
      tmax = std::min(tmax, t2);
      return tmin <= tmax;
    };
    if (!slab(ox, vx, x0, x1)) return false;
    if (!slab(oy, vy, y0, y1)) return false;
    t_enter = tmin;
    return true;
  }

  int sx_, sy_;
  bool outward_;
  long long window_;
  std::vector<Vec2> vert_;
  std::vector<DPoint> dvert_;
};

// ---------------------------------------------------------------------------

class TransformedSide final : public Side {
 public:
  TransformedSide(std::unique_ptr<Side> base, Matrix2 m, Vec2 offset)
      : base_(std::move(base)), m_(std::move(m)), inv_(m_.inverse()), offset_(std::move(offset)) {
    inv_norm_ = inv_.norm_bound();
  }

  SideSpec spec() const override {
    SideSpec s;
    s.scheme = "transformed";
    s.transformed = true;
    s.matrix = m_;
    s.offset = offset_;
    s.base = std::make_shared<SideSpec>(base_->spec());
    return s;
  }
  long long first() const override { return base_->first(); }
  long long last() const override { return base_->last(); }
  std::optional<long long> next(long long i) const override { return base_->next(i); }
  std::optional<long long> prev(long long i) const override { return base_->prev(i); }
  bool valid(long long i) const override { return base_->valid(i); }
  Segment segment(long long i) const override {
    Segment s = base_->segment(i);
    return {map(s.a), map(s.b), s.a_infinite, s.b_infinite};
  }
  DSegment dsegment(long long i) const override {
    DSegment s = base_->dsegment(i);
    return {dmap(s.a), dmap(s.b), s.a_infinite, s.b_infinite};
  }
  SideEnd start() const override { return map_end(base_->start()); }
  SideEnd finish() const override { return map_end(base_->finish()); }
  std::optional<SideHit> first_hit(const Vec2& o, const Vec2& v) const override {
    auto h = base_->first_hit(inv_.apply(o - offset_), inv_.apply(v));
    if (h) h->point = map(h->point);
    return h;
  }
  void near(const DPoint& c, double radius, std::vector<long long>& out) const override {
    const double x = c.x - offset_.dx(), y = c.y - offset_.dy();
    DPoint pre{inv_.a.get_d() * x + inv_.b.get_d() * y, inv_.c.get_d() * x + inv_.d.get_d() * y};
    base_->near(pre, radius * inv_norm_ * 1.000001, out);
  }

 private:
  Vec2 map(const Vec2& p) const { return m_.apply(p) + offset_; }
  DPoint dmap(const DPoint& p) const {
    return {m_.a.get_d() * p.x + m_.b.get_d() * p.y + offset_.dx(),
            m_.c.get_d() * p.x + m_.d.get_d() * p.y + offset_.dy()};
  }
  SideEnd map_end(SideEnd e) const {
    if (e.kind != EndKind::kInfinity) e.point = map(e.point);
    e.tangent = m_.apply(e.tangent);
    return e;
  }

  std::unique_ptr<Side> base_;
  Matrix2 m_;
  Matrix2 inv_;
  Vec2 offset_;
  double inv_norm_;
};

}  // namespace

void Side::near(const DPoint& c, double radius, std::vector<long long>& out) const {
  for (long long i : indices()) {
    if (distance_to_segment(c, dsegment(i)) <= radius) out.push_back(i);
  }
}

std::vector<Vec2> Side::accumulation_near(const DPoint& c, double radius) const {
  std::vector<Vec2> out;
  for (const SideEnd& e : {start(), finish()}) {
    if (e.kind != EndKind::kAccumulation) continue;
    DPoint p = to_dpoint(e.point);
    if (std::hypot(p.x - c.x, p.y - c.y) <= radius) out.push_back(e.point);
  }
  return out;
}

std::vector<long long> Side::indices() const {
  std::vector<long long> out;
  long long i = first();
  out.push_back(i);
  while (i != last()) {
    auto n = next(i);
    if (!n) break;
    i = *n;
    out.push_back(i);
  }
  return out;
}

std::unique_ptr<Side> polyline_side(std::vector<Vec2> points) {
  return std::make_unique<PolylineSide>(std::move(points));
}

std::unique_ptr<Side> geometric_side(Vec2 from, Vec2 to, Rational ratio, bool big_at_start,
                                     long long window) {
  return std::make_unique<GeometricSide>(std::move(from), std::move(to), std::move(ratio),
                                         big_at_start, window);
}

std::unique_ptr<Side> ray_side(Vec2 apex, Vec2 dir, bool outward) {
  return std::make_unique<RaySide>(std::move(apex), std::move(dir), outward);
}

std::unique_ptr<Side> chord_chain_side(int sx, int sy, bool outward, long long window) {
  return std::make_unique<ChordChainSide>(sx, sy, outward, window);
}

std::unique_ptr<Side> transformed_side(const Side& base, const Matrix2& m, const Vec2& offset) {
  if (sgn(m.det()) == 0) throw Error(ErrorCode::kInvalidArgument, "singular transform");
  return std::make_unique<TransformedSide>(make_side(base.spec()), m, offset);
}

std::unique_ptr<Side> make_side(const SideSpec& spec) {
  if (spec.transformed) {
    if (!spec.base) throw Error(ErrorCode::kMalformedGeometry, "transformed side without base");
    auto base = make_side(*spec.base);
    return std::make_unique<TransformedSide>(std::move(base), spec.matrix, spec.offset);
  }
  if (spec.scheme == "polyline") return polyline_side(spec.points);
  if (spec.scheme == "geometric") {
    if (spec.points.size() != 2) throw Error(ErrorCode::kMalformedGeometry, "geometric side needs two points");
    return geometric_side(spec.points[0], spec.points[1], spec.ratio, spec.flag, spec.window);
  }
  if (spec.scheme == "ray") {
    if (spec.points.size() != 2) throw Error(ErrorCode::kMalformedGeometry, "ray side needs apex and direction");
    return ray_side(spec.points[0], spec.points[1], spec.flag);
  }
  if (spec.scheme == "chord_chain") return chord_chain_side(spec.sx, spec.sy, spec.flag, spec.window);
  throw Error(ErrorCode::kMalformedGeometry, "unknown side scheme '" + spec.scheme + "'");
}

}  // namespace flatsing
