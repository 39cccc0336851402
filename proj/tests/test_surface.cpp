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


#include <doctest.h>

#include <cstdlib>
#include <random>

#include "flatsing/fixtures.hpp"
#include "flatsing/serialize.hpp"

using namespace flatsing;

namespace {

Rational q(long num, long den) {
  Rational r(num, den);
  r.canonicalize();
  return r;
}

// Exact first hit of the ray o + s v (s > 0) over an explicit segment list.
std::optional<std::pair<Rational, Vec2>> scan_hit(const Vec2& o, const Vec2& v, const std::vector<Segment>& segs) {
  std::optional<std::pair<Rational, Vec2>> best;
  for (const Segment& sg : segs) {
    if (!sg.finite()) continue;
    const Vec2 d = sg.b - sg.a;
    const Rational den = cross(v, d);
    if (sgn(den) == 0) continue;
    const Vec2 w = sg.a - o;
    const Rational s = cross(w, d) / den;
    const Rational lam = cross(w, v) / den;
    if (sgn(s) <= 0 || sgn(lam) < 0 || lam > 1) continue;
    if (!best || s < best->first) best = {{s, o + s * v}};
  }
  return best;
}

std::vector<Segment> all_segments(const Surface& s, int cell) {
  std::vector<Segment> out;
  const Cell& c = s.cell(cell);
  for (const auto& side : c.sides) {
    for (long long i : side->indices()) out.push_back(side->segment(i));
  }
  return out;
}

}  // namespace

TEST_CASE("geometric side pieces follow the ratio") {
  auto g = geometric_side(Vec2(0, 0), Vec2(1, 0), q(1, 3), false, 30);
  // Walk order ends at the big piece; pieces accumulate at the start.
  Rational right = 1;
  std::vector<long long> idx = g->indices();
  REQUIRE(idx.size() == 30);
  for (auto it = idx.rbegin(); it != idx.rend(); ++it) {
    Segment sg = g->segment(*it);
    Rational len = q(2, 3) * rational_pow(q(1, 3), *it);
    CHECK(sg.b.x == right);
    CHECK(sg.b.x - sg.a.x == len);
    right -= len;
  }
  CHECK(g->start().kind == EndKind::kAccumulation);
  CHECK(g->finish().kind == EndKind::kVertex);
}

TEST_CASE("chord chain vertices lie on the parabola") {
  auto c = chord_chain_side(1, 1, false, 30);
  for (long long i : c->indices()) {
    Segment sg = c->segment(i);
    CHECK(sg.a.y == sg.a.x * sg.a.x);
    // Chord from (2^n, 4^n) to (2^(n+1), 4^(n+1)) has holonomy (2^n, 3 4^n).
    const Vec2 lo = sg.a.x < sg.b.x ? sg.a : sg.b;
    const Vec2 hi = sg.a.x < sg.b.x ? sg.b : sg.a;
    CHECK(hi - lo == Vec2(lo.x, Rational(3 * lo.y)));
  }
}

TEST_CASE("side specs round-trip") {
  for (const auto& name : fixture_names()) {
    auto s = build_fixture(name, "");
    for (const Cell& c : s->cells()) {
      for (const auto& side : c.sides) {
        auto again = make_side(side->spec());
        REQUIRE(again->indices() == side->indices());
        for (long long i : side->indices()) {
          CHECK(again->segment(i).a == side->segment(i).a);
          CHECK(again->segment(i).b == side->segment(i).b);
        }
      }
    }
  }
}

TEST_CASE("fixtures validate") {
  for (const auto& name : fixture_names()) {
    CAPTURE(name);
    auto s = build_fixture(name, "");
    ValidationReport r = validate_surface(*s, 50);
    for (const auto& c : r.checks) {
      CAPTURE(c.name);
      CAPTURE(c.detail);
      CHECK(c.passed);
    }
  }
}

TEST_CASE("fixture parameters are checked") {
  CHECK_THROWS_AS(chamanara(Rational(2)), Error);
  CHECK_THROWS_AS(chamanara(q(2, 5)), Error);
  CHECK_THROWS_AS(geometric_series(Rational(0)), Error);
  CHECK_THROWS_AS(cone(0), Error);
  CHECK_THROWS_AS(build_fixture("nope", ""), Error);
  CHECK_THROWS_AS(build_fixture("cone", "[1]"), Error);
  CHECK(build_fixture("cone", R"({"k": 3})")->anchors().front().total_angle->pi_multiple == Rational(6));
}

TEST_CASE("window cap applies to infinite fixtures") {
  setenv("FLATSING_WINDOW_CAP", "8", 1);
  CHECK(window_cap() == 8);
  CHECK_THROWS_AS(chamanara(q(1, 2)), Error);
  CHECK_NOTHROW(chamanara(q(1, 2), 8));
  CHECK_NOTHROW(square_torus());
  unsetenv("FLATSING_WINDOW_CAP");
  CHECK(window_cap() == 1000000);
}

TEST_CASE("locate agrees with a linear scan") {
  std::mt19937 rng(5);
  struct Probe {
    SurfacePtr s;
    int cell;
    double x0, x1, y0, y1;
  };
  std::vector<Probe> probes = {
      {chamanara(q(1, 2), 30), 0, -0.5, 0.5, -0.5, 0.5},
      {square_torus(), 0, 0, 1, 0, 1},
      {two_square_genus2(), 0, 0, 1, 0, 1},
      {double_parabola(30), 0, 0.01, 8, -0.004, 0.004},
  };
  for (const Probe& p : probes) {
    std::vector<Segment> segs = all_segments(*p.s, p.cell);
    int checked = 0;
    while (checked < 200) {
      auto pick = [&](double lo, double hi) {
        return q(static_cast<long>(std::floor((lo + (hi - lo) * (rng() % 10000) / 10000.0) * 65536)), 65536);
      };
      Vec2 o(pick(p.x0, p.x1), pick(p.y0, p.y1));
      Vec2 v(static_cast<long>(rng() % 21) - 10, static_cast<long>(rng() % 21) - 10);
      if (v.is_zero()) continue;
      auto want = scan_hit(o, v, segs);
      std::optional<BoundaryHit> got;
      try {
        got = p.s->locate(p.cell, o, v);
      } catch (const Error& e) {
        if (e.code() == ErrorCode::kLocatorRangeExceeded) continue;
        throw;
      }
      if (!want) continue;  // the origin was outside the cell or beyond the window
      REQUIRE(got);
      CHECK(got->hit.s == want->first);
      CHECK(got->hit.point == want->second);
      ++checked;
    }
  }
}

TEST_CASE("cross_edge moves to the partner and back") {
  auto t = square_torus();
  SurfacePoint p{0, Vec2(q(1, 3), Rational(0)), EdgeRef{0, 0, 0}};
  SurfacePoint across = t->cross_edge(p, Vec2(0, -1));
  CHECK(across.position == Vec2(q(1, 3), Rational(1)));
  REQUIRE(across.edge);
  SurfacePoint back = t->cross_edge(across, Vec2(0, 1));
  CHECK(back.position == p.position);
  CHECK(back.edge == p.edge);
  CHECK_THROWS_AS(t->cross_edge(p, Vec2(0, 1)), Error);
}

TEST_CASE("develop accumulates translations") {
  auto t = square_torus();
  // Out through the right side, then through the top.
  std::vector<Vec2> off = t->develop(0, {EdgeRef{0, 1, 0}, EdgeRef{0, 2, 0}});
  REQUIRE(off.size() == 3);
  CHECK(off[1] == Vec2(1, 0));
  CHECK(off[2] == Vec2(1, 1));
}

TEST_CASE("anchor identification") {
  CHECK(square_torus()->anchors().empty());
  auto g2 = two_square_genus2()->anchors();
  REQUIRE(g2.size() == 1);
  CHECK(*g2.front().total_angle->pi_multiple == Rational(6));
  CHECK(*cone(5)->anchors().front().total_angle->pi_multiple == Rational(10));
  CHECK(*finite_cyclic_cover(4)->anchors().front().total_angle->pi_multiple == Rational(8));
  CHECK_FALSE(chamanara(q(1, 2))->anchors().front().total_angle);
}

TEST_CASE("areas") {
  CHECK(*chamanara(q(1, 3))->area() == Rational(1));
  CHECK(*two_square_genus2()->area() == Rational(2));
  CHECK_FALSE(cone(2)->area());
}

TEST_CASE("surface documents round-trip with a stable digest") {
  for (const auto& name : fixture_names()) {
    CAPTURE(name);
    auto s = build_fixture(name, "");
    const std::string text = surface_to_string(*s);
    auto back = surface_from_string(text);
    CHECK(surface_to_string(*back) == text);
    CHECK(surface_digest(*back) == surface_digest(*s));
    CHECK(surface_digest(*s).size() == 16);
  }
  CHECK(surface_digest(*chamanara(q(1, 2))) != surface_digest(*chamanara(q(1, 3))));
}

TEST_CASE("malformed surface documents are rejected") {
  CHECK_THROWS(surface_from_string("{}"));
  CHECK_THROWS(surface_from_string("not json"));
  Json j = surface_json(*square_torus());
  j["gluings"] = Json::array();
  CHECK_THROWS(surface_from_json(j));
}

TEST_CASE("stable dump sorts keys and prints doubles compactly") {
  Json j = {{"b", 0.1}, {"a", {1, 2}}, {"c", std::numeric_limits<double>::infinity()}};
  CHECK(dump_stable(j, -1) == R"({"a":[1,2],"b":0.1,"c":"inf"})");
}
