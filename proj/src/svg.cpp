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

#include "flatsing/svg.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <set>
#include <tuple>

namespace flatsing {

namespace {

constexpr std::size_t kMaxSegmentsPerSide = 4096;

class Canvas {
 public:
  Canvas(const Viewport& v, int width) : v_(v) {
    scale_ = width / (v.xmax - v.xmin);
    width_ = width;
    height_ = static_cast<int>(std::ceil((v.ymax - v.ymin) * scale_));
  }

  double x(double wx) const { return (wx - v_.xmin) * scale_; }
  double y(double wy) const { return (v_.ymax - wy) * scale_; }
  const Viewport& viewport() const { return v_; }

  void line(DPoint a, DPoint b, const char* style) {
    if (!clip(a, b)) return;
    emit("<line x1=\"%.3f\" y1=\"%.3f\" x2=\"%.3f\" y2=\"%.3f\" %s/>\n", x(a.x), y(a.y), x(b.x), y(b.y), style);
  }
  void dot(DPoint p, double r, const char* style) {
    if (p.x < v_.xmin || p.x > v_.xmax || p.y < v_.ymin || p.y > v_.ymax) return;
    emit("<circle cx=\"%.3f\" cy=\"%.3f\" r=\"%.1f\" %s/>\n", x(p.x), y(p.y), r, style);
  }
  void text(double px, double py, const std::string& s) {
    emit("<text x=\"%.1f\" y=\"%.1f\" font-family=\"monospace\" font-size=\"12\">", px, py);
    body_ += s;
    body_ += "</text>\n";
  }
  void raw(const std::string& s) { body_ += s; }

  std::string finish() const {
    char head[256];
    std::snprintf(head, sizeof head,
                  "<svg xmlns=\"http://www.w3.org/2000/svg\" width=\"%d\" height=\"%d\" viewBox=\"0 0 %d %d\">\n",
                  width_, height_, width_, height_);
    return std::string(head) + "<rect width=\"100%\" height=\"100%\" fill=\"white\"/>\n" + body_ + "</svg>\n";
  }

  template <typename... A>
  void emit(const char* fmt, A... args) {
    char buf[512];
    std::snprintf(buf, sizeof buf, fmt, args...);
    body_ += buf;
  }

 private:
  // Liang-Barsky against the viewport.
  bool clip(DPoint& a, DPoint& b) const {
    double t0 = 0, t1 = 1;
    const double dx = b.x - a.x, dy = b.y - a.y;
    auto edge = [&](double p, double q) {
      if (p == 0) return q >= 0;
      double r = q / p;
      if (p < 0) {
        if (r > t1) return false;
        t0 = std::max(t0, r);
      } else {
        if (r < t0) return false;
        t1 = std::min(t1, r);
      }
      return true;
    };
    if (!edge(-dx, a.x - v_.xmin) || !edge(dx, v_.xmax - a.x) || !edge(-dy, a.y - v_.ymin) ||
        !edge(dy, v_.ymax - a.y)) {
      return false;
    }
    DPoint na{a.x + t0 * dx, a.y + t0 * dy}, nb{a.x + t1 * dx, a.y + t1 * dy};
    a = na;
    b = nb;
    return true;
  }

  Viewport v_;
  double scale_ = 1;
  int width_ = 640;
  int height_ = 640;
  std::string body_;
};

Viewport fit(const std::vector<DPoint>& pts) {
  Viewport v{0, 0, 0, 0};
  if (pts.empty()) return {-1, -1, 1, 1};
  v = {pts[0].x, pts[0].y, pts[0].x, pts[0].y};
  for (const DPoint& p : pts) {
    v.xmin = std::min(v.xmin, p.x);
    v.xmax = std::max(v.xmax, p.x);
    v.ymin = std::min(v.ymin, p.y);
    v.ymax = std::max(v.ymax, p.y);
  }
  double span = std::max({v.xmax - v.xmin, v.ymax - v.ymin, 1.0});
  double pad = 0.25 * span;
  double cx = 0.5 * (v.xmin + v.xmax), cy = 0.5 * (v.ymin + v.ymax);
  double h = 0.5 * span + pad;
  return {cx - h, cy - h, cx + h, cy + h};
}

void outline(Canvas& cv, const Surface& s, int cell, DPoint off) {
  const Viewport& v = cv.viewport();
  const double far = 4 * std::max(v.xmax - v.xmin, v.ymax - v.ymin) +
                     std::max({std::abs(v.xmin), std::abs(v.xmax), std::abs(v.ymin), std::abs(v.ymax)});
  for (const auto& side : s.cell(cell).sides) {
    std::vector<long long> idx = side->indices();
    if (idx.size() > kMaxSegmentsPerSide) idx.resize(kMaxSegmentsPerSide);
    for (long long k : idx) {
      DSegment d = side->dsegment(k);
      DPoint a = d.a, b = d.b;
      auto extend = [&](const DPoint& dir) {
        double n = std::hypot(dir.x, dir.y);
        return DPoint{far * dir.x / n, far * dir.y / n};
      };
      if (d.a_infinite) {
        DPoint e = extend({d.a.x - d.b.x, d.a.y - d.b.y});
        a = {d.b.x + e.x, d.b.y + e.y};
      }
      if (d.b_infinite) {
        DPoint e = extend({d.b.x - d.a.x, d.b.y - d.a.y});
        b = {d.a.x + e.x, d.a.y + e.y};
      }
      cv.line({a.x + off.x, a.y + off.y}, {b.x + off.x, b.y + off.y}, "stroke=\"#888\" stroke-width=\"1\"");
    }
  }
}

}  // namespace

std::string render_path_svg(const Surface& s, const GeodesicPath& p, const SvgOptions& opts) {
  std::vector<DPoint> pts;
  for (const PathSegment& seg : p.segments) {
    DPoint o = to_dpoint(seg.offset);
    DPoint a = to_dpoint(seg.a), b = to_dpoint(seg.b);
    pts.push_back({a.x + o.x, a.y + o.y});
    pts.push_back({b.x + o.x, b.y + o.y});
  }
  Canvas cv(opts.viewport ? *opts.viewport : fit(pts), opts.width);
  std::set<std::tuple<int, double, double>> drawn;
  for (const PathSegment& seg : p.segments) {
    DPoint o = to_dpoint(seg.offset);
    if (drawn.insert({seg.cell, o.x, o.y}).second) outline(cv, s, seg.cell, o);
  }
  for (std::size_t i = 0; i + 1 < pts.size(); i += 2) {
    cv.line(pts[i], pts[i + 1], "stroke=\"#c00\" stroke-width=\"2\"");
  }
  if (!pts.empty()) {
    cv.dot(pts.front(), 4, "fill=\"#c00\"");
    if (p.end_anchor) cv.dot(pts.back(), 5, "fill=\"black\"");
  }
  cv.text(8, 16, std::string("termination: ") + termination_name(p.termination));
  return cv.finish();
}

std::string render_sweep_svg(const RotationalComponent& c, const SvgOptions& opts) {
  const double lo = c.theta_minus(), hi = c.theta_plus();
  const double turns = std::max(1.0, std::ceil((hi - lo) / kTwoPi));
  auto radius = [&](double th) { return 1 + 0.5 * (th - lo) / kTwoPi; };
  const double rmax = radius(hi) + 0.5;
  Viewport v = opts.viewport ? *opts.viewport : Viewport{-rmax, -rmax, rmax, rmax};
  Canvas cv(v, opts.width);
  if (hi > lo) {
    const int steps = static_cast<int>(std::min(4000.0, 90 * turns));
    std::string poly = "<polygon fill=\"#9cf\" fill-opacity=\"0.5\" stroke=\"#369\" points=\"";
    char buf[64];
    std::snprintf(buf, sizeof buf, "%.3f,%.3f ", cv.x(0), cv.y(0));
    poly += buf;
    for (int i = 0; i <= steps; ++i) {
      double th = lo + (hi - lo) * i / steps;
      double r = radius(th);
      std::snprintf(buf, sizeof buf, "%.3f,%.3f ", cv.x(r * std::cos(th)), cv.y(r * std::sin(th)));
      poly += buf;
    }
    poly += "\"/>\n";
    cv.raw(poly);
  }
  const double rs = radius(c.t0);
  cv.line({0, 0}, {rs * std::cos(c.t0), rs * std::sin(c.t0)}, "stroke=\"#c00\" stroke-width=\"2\"");
  cv.dot({0, 0}, 5, "fill=\"black\"");
  cv.text(8, 16, std::string(component_kind_name(c.kind)) + " length " + format_double(c.length.value));
  cv.text(8, 32, std::string("ccw ") + end_status_name(c.ccw.status) + ", cw " + end_status_name(c.cw.status));
  return cv.finish();
}

}  // namespace flatsing
