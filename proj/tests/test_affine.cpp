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

#include "flatsing/affine.hpp"
#include "flatsing/fixtures.hpp"
#include "flatsing/serialize.hpp"

using namespace flatsing;

namespace {

Rational q(long num, long den) {
  Rational r(num, den);
  r.canonicalize();
  return r;
}

Matrix2 m(const Rational& a, const Rational& b, const Rational& c, const Rational& d) { return {a, b, c, d}; }

// Angle of A (cos t, sin t), unwrapped near the reference.
double image_angle(const Matrix2& a, double t, double near) {
  const double x = a.a.get_d() * std::cos(t) + a.b.get_d() * std::sin(t);
  const double y = a.c.get_d() * std::cos(t) + a.d.get_d() * std::sin(t);
  double s = std::atan2(y, x);
  return s + kTwoPi * std::round((near - s) / kTwoPi);
}

}  // namespace

TEST_CASE("normalized action of a shear") {
  const Matrix2 shear = m(1, 1, 0, 1);
  CHECK(normalized_action(shear, Direction(Vec2(0, 1))) == Direction(Vec2(1, 1)));
  CHECK(normalized_action(shear, Direction(Vec2(1, 0))) == Direction(Vec2(1, 0)));
  CHECK(normalized_action(m(0, -1, 1, 0), Direction(Vec2(1, 0))) == Direction(Vec2(0, 1)));
}

TEST_CASE("circle lift of a diagonal map") {
  CircleLift l = lift_map(m(2, 0, 0, q(1, 2)), 0, 0);
  CHECK(l(kPi / 4) == doctest::Approx(std::atan(0.25)).epsilon(1e-14));
  CHECK(l(kPi) == doctest::Approx(kPi).epsilon(1e-14));
  CHECK(l(kPi / 4 + kTwoPi) == doctest::Approx(std::atan(0.25) + kTwoPi).epsilon(1e-14));
}

TEST_CASE("circle lift is continuous and commutes with the circle action") {
  std::mt19937 rng(2);
  for (int i = 0; i < 20; ++i) {
    Matrix2 a = m(static_cast<long>(rng() % 7) - 3, static_cast<long>(rng() % 7) - 3, static_cast<long>(rng() % 7) - 3,
                  static_cast<long>(rng() % 7) - 3);
    if (sgn(a.det()) <= 0) continue;
    const double s0 = image_angle(a, 0, 0);
    CircleLift l = lift_map(a, 0, s0);
    double prev = l(-6 * kPi);
    for (int k = 1; k <= 600; ++k) {
      const double t = -6 * kPi + 12 * kPi * k / 600.0;
      const double v = l(t);
      CHECK(v > prev);
      CHECK(v == doctest::Approx(image_angle(a, t, v)).epsilon(1e-12));
      prev = v;
    }
  }
}

TEST_CASE("element classification") {
  CHECK(classify_element(m(1, 1, 0, 1)).type == ElementType::kParabolic);
  CHECK(classify_element(m(2, 1, 1, 1)).type == ElementType::kHyperbolic);
  ElementClass r = classify_element(m(0, -1, 1, 0));
  CHECK(r.type == ElementType::kElliptic);
  CHECK(*r.torsion);
  CHECK(*r.rotation->pi_multiple == q(1, 2));
  ElementClass six = classify_element(m(1, -1, 1, 0));
  CHECK(*six.rotation->pi_multiple == q(1, 3));
  ElementClass irr = classify_element(m(q(1, 4), -1, q(15, 16), q(1, 4)));
  CHECK(irr.type == ElementType::kElliptic);
  CHECK_FALSE(*irr.torsion);
  CHECK(irr.rotation->value == doctest::Approx(std::acos(0.25)));
  CHECK_THROWS_AS(classify_element(m(2, 0, 0, 1)), Error);
}

TEST_CASE("fixed direction lattices") {
  auto p = fixed_direction_lattice(m(1, 2, 0, 1));
  REQUIRE(p.size() == 1);
  CHECK(p[0].offset == doctest::Approx(0));
  CHECK(*p[0].direction == Vec2(1, 0));
  auto h = fixed_direction_lattice(m(2, 1, 1, 1));
  REQUIRE(h.size() == 2);
  CHECK_FALSE(h[0].direction);
  const double golden = (1 + std::sqrt(5.0)) / 2;
  CHECK(h[0].offset == doctest::Approx(std::atan(1 / golden)));
  CHECK(h[1].offset == doctest::Approx(kPi - std::atan(golden)));
  auto rat = fixed_direction_lattice(m(5, 4, 1, 1));  // eigenvalues 3 +- 2 sqrt 2: irrational
  CHECK(rat.size() == 2);
  auto d = fixed_direction_lattice(m(2, 0, 0, q(1, 2)));
  REQUIRE(d.size() == 2);
  CHECK(*d[0].direction == Vec2(1, 0));
  CHECK(*d[1].direction == Vec2(0, 1));
  CHECK(fixed_direction_lattice(m(0, -1, 1, 0)).empty());
  CHECK_THROWS_AS(fixed_direction_lattice(Matrix2::identity()), Error);
}

TEST_CASE("affine image maps corners and anchors") {
  auto ch = chamanara(q(1, 2));
  AffineMap f = affine_image(ch, m(1, 2, 0, 1));
  CHECK(f.apply_anchor("x") == "x");
  SurfacePoint p = f.apply(SurfacePoint{0, Vec2(q(1, 4), q(1, 4)), std::nullopt});
  CHECK(p.position == Vec2(q(3, 4), q(1, 4)));
  CHECK_THROWS_AS(affine_image(ch, m(1, 1, 1, 1)), Error);
}

TEST_CASE("pushforward equivariance on the torus") {
  auto t = square_torus();
  const Matrix2 a = m(2, 1, 1, 1);
  AffineMap f = affine_image(t, a);
  LinearApproach ap = approach_from_point(*t, SurfacePoint{0, Vec2(q(1, 3), q(1, 5)), std::nullopt}, Vec2(1, 3), 0.5);
  LinearApproach b = pushforward(f, ap);
  CHECK(b.dir == Vec2(5, 4));
  CHECK(b.germ.length() == doctest::Approx(ap.germ.length() * std::sqrt(41.0) / std::sqrt(10.0)));
}

TEST_CASE("orientation reversing maps are refused") {
  auto t = square_torus();
  AffineMap f = affine_image(t, m(1, 0, 0, -1));
  LinearApproach ap = approach_from_point(*t, SurfacePoint{0, Vec2(q(1, 2), q(1, 2)), std::nullopt}, Vec2(1, 1), 0.1);
  CHECK_THROWS_AS(pushforward(f, ap), Error);
}

TEST_CASE("composition multiplies matrices") {
  auto t = square_torus();
  AffineMap f = affine_image(t, m(1, 1, 0, 1));
  AffineMap g = affine_image(f.target(), m(1, 0, 1, 1));
  AffineMap h = compose(g, f);
  CHECK(h.matrix() == m(1, 1, 1, 2));
}

TEST_CASE("affine maps serialize") {
  auto t = square_torus();
  AffineMap f = affine_image(t, m(1, 1, 0, 1));
  AffineMap back = affine_map_from_json(affine_map_json(f), f.source(), f.target());
  CHECK(back.matrix() == f.matrix());
  CHECK(back.correspondence() == f.correspondence());
}

TEST_CASE("component action follows the lift on chamanara") {
  auto ch = chamanara(q(1, 2));
  const Matrix2 a = m(1, 2, 0, 1);
  AffineMap f = affine_image(ch, a);
  NamedSeed eta = fixture_seed(*ch, "eta1");
  RotationalComponent src = sweep(*ch, approach_at(*ch, eta.corner, eta.dir, 0.25));
  LinearApproach img = pushforward(f, src.seed);
  RotationalComponent tgt = sweep(*f.target(), img);
  ComponentAction act = component_action(f, src, tgt);
  for (int k = -5; k <= 5; ++k) {
    const double th = src.t0 + k * 0.1 * std::min(src.cw.extent.value, src.ccw.extent.value);
    if (!act.in_source(th)) continue;
    const double got = act(th);
    CHECK(got == doctest::Approx(act.lift()(th)).epsilon(1e-12));
  }
}
