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

#include <cmath>
#include <random>

#include "flatsing/fixtures.hpp"
#include "flatsing/tracer.hpp"
#include "flatsing/disk.hpp"
#include "oracles.hpp"

using namespace flatsing;

namespace {

Rational q(long num, long den) {
  Rational r(num, den);
  r.canonicalize();
  return r;
}

}  // namespace

TEST_CASE("torus trace wraps and keeps its length") {
  auto t = square_torus();
  GeodesicPath p = trace(*t, TraceStart::at(SurfacePoint{0, Vec2(q(1, 2), q(1, 2)), std::nullopt}), Vec2(1, 0), 3);
  CHECK(p.termination == Termination::kBudgetExhausted);
  CHECK(p.length2() == Rational(9));
  CHECK(p.crossings.size() == 3);
  CHECK(p.end_point().position == Vec2(q(1, 2), q(1, 2)));
  CHECK(p.end_offset() == Vec2(3, 0));
}

TEST_CASE("trace from a flat point on the torus matches the planar oracle") {
  auto t = square_torus();
  std::mt19937 rng(9);
  for (int i = 0; i < 50; ++i) {
    Vec2 o(q(static_cast<long>(rng() % 999) + 1, 1000), q(static_cast<long>(rng() % 999) + 1, 1000));
    Vec2 v(static_cast<long>(rng() % 11) - 5, static_cast<long>(rng() % 11) - 5);
    if (v.is_zero()) continue;
    TraceOptions opts;
    opts.s_limit = Rational(2);
    GeodesicPath p = trace(*t, TraceStart::at(SurfacePoint{0, o, std::nullopt}), v, 0, opts);
    REQUIRE(p.termination == Termination::kReachedTarget);
    const double ex = o.dx() + 2 * v.dx(), ey = o.dy() + 2 * v.dy();
    const Vec2 e = p.end_point().position;
    CHECK(e.dx() == doctest::Approx(ex - std::floor(ex)).epsilon(1e-12));
    CHECK(e.dy() == doctest::Approx(ey - std::floor(ey)).epsilon(1e-12));
  }
}

TEST_CASE("cone rays from the apex escape") {
  auto c = cone(2);
  LinearApproach a = approach_at(*c, CornerKey{0, 1, 0}, Vec2(0, 1), 0.25);
  GeodesicPath p = trace_to_length(*c, a, 5);
  CHECK(p.termination == Termination::kEscaped);
}

TEST_CASE("chamanara diagonal hits the singularity") {
  auto s = chamanara(q(1, 2));
  NamedSeed eta = fixture_seed(*s, "eta1");
  LinearApproach a = approach_at(*s, eta.corner, eta.dir, 0.25);
  MaximalLength m = maximal_length(*s, a, 10);
  REQUIRE(m.hit_length2);
  CHECK(m.value == doctest::Approx(std::sqrt(m.hit_length2->get_d())));
  CHECK(m.path.termination == Termination::kHitSingularVertex);
  CHECK(*m.path.end_anchor == "x");
}

TEST_CASE("geometric series saddle connections are the slit pieces") {
  auto y = geometric_series(q(1, 2));
  SaddleConnectionList l = saddle_connections(*y, "x", 0.25);
  CHECK(l.complete);
  std::vector<double> got;
  for (const SaddleConnection& c : l.connections) {
    CHECK(sgn(c.holonomy.y) == 0);
    got.push_back(c.length);
  }
  std::sort(got.begin(), got.end());
  got.erase(std::unique(got.begin(), got.end()), got.end());
  std::vector<double> want = oracles::geometric_series_lengths(q(1, 2), 0.25, got.front() * (1 - 1e-9));
  CHECK(got == want);
}

TEST_CASE("sigma pair reverses a short connection") {
  auto s = chamanara(q(1, 2));
  NamedSeed eta = fixture_seed(*s, "eta1");
  LinearApproach a = approach_at(*s, eta.corner, eta.dir, 0.1);
  MaximalLength m = maximal_length(*s, a, 10);
  LinearApproach b = sigma_pair(*s, a, 10);
  CHECK(same_ray(b.dir, -eta.dir));
  MaximalLength back = maximal_length(*s, b, 10);
  REQUIRE(back.hit_length2);
  CHECK(*back.hit_length2 == *m.hit_length2);
  CHECK_THROWS_AS(maximal_length(*s, a, 0), Error);
  CHECK_THROWS_AS(sigma_pair(*s, a, m.value / 2), Error);
}

TEST_CASE("sigma pair requires a short connection") {
  auto c = cone(2);
  LinearApproach a = approach_at(*c, CornerKey{0, 1, 0}, Vec2(1, 1), 0.25);
  CHECK_THROWS_AS(sigma_pair(*c, a, 1), Error);
}

TEST_CASE("linear approach reports wedge problems") {
  auto c = cone(2);
  CHECK_THROWS_AS(linear_approach(*c, "x", Vec2(1, 1), 0.1), Error);  // realized on both upper sheets
  auto g2 = two_square_genus2();
  CHECK_THROWS_AS(approach_at(*g2, CornerKey{0, 0, 0}, Vec2(0, -1), 0.1), Error);
}

TEST_CASE("uniform distance within a chart") {
  auto c = cone(2);
  LinearApproach a = approach_at(*c, CornerKey{0, 1, 0}, Vec2(1, 0), 0.25);
  LinearApproach b = approach_at(*c, CornerKey{0, 1, 0}, Vec2(0, 1), 0.25);
  CHECK(uniform_distance(*c, a, b, 2) == doctest::Approx(2 * std::sqrt(2.0)));
  LinearApproach other = approach_at(*c, CornerKey{2, 1, 0}, Vec2(0, 1), 0.25);
  CHECK_THROWS_AS(uniform_distance(*c, a, other, 1), Error);
}

TEST_CASE("bp_dir names the base") {
  auto c = cone(2);
  BaseDir bd = bp_dir(approach_at(*c, CornerKey{0, 1, 0}, Vec2(2, 2), 0.25));
  CHECK(bd.base == "x");
  CHECK(bd.dir == Direction(Vec2(1, 1)));
}

TEST_CASE("immersion radius on the double parabola matches the vertex oracle") {
  auto s = double_parabola();
  for (int m = 2; m <= 12; ++m) {
    const double t = std::ldexp(1.0, -m);
    SurfacePoint p{0, Vec2(from_double(t), Rational(0)), std::nullopt};
    DiskEstimate r = immersion_radius(*s, p, 1);
    CHECK(r.complete);
    CHECK(r.value == doctest::Approx(oracles::parabola_vertex_distance(t)).epsilon(1e-12));
  }
}

TEST_CASE("point distance on the torus") {
  auto t = square_torus();
  std::mt19937 rng(4);
  for (int i = 0; i < 30; ++i) {
    const long a = rng() % 99 + 1, b = rng() % 99 + 1, c = rng() % 99 + 1, d = rng() % 99 + 1;
    SurfacePoint p{0, Vec2(q(a, 100), q(b, 100)), std::nullopt};
    SurfacePoint r{0, Vec2(q(c, 100), q(d, 100)), std::nullopt};
    auto got = point_distance(*t, p, r, 2);
    REQUIRE(got);
    CHECK(*got == doctest::Approx(oracles::torus_distance(a / 100.0, b / 100.0, c / 100.0, d / 100.0)));
  }
}

TEST_CASE("basis sets") {
  auto c = cone(2);
  LinearApproach a = approach_at(*c, CornerKey{0, 1, 0}, Vec2(0, 1), 0.25);
  SurfacePoint x{0, Vec2(Rational(0), q(1, 2)), std::nullopt};
  CHECK(in_basis_set(*c, a, x, q(1, 100).get_d(), 0.5));
  CHECK_FALSE(in_basis_set(*c, a, x, 0.01, 0.7));
}
