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

#include "flatsing/error.hpp"
#include "flatsing/rational.hpp"

using namespace flatsing;

TEST_CASE("parse_rational accepts fractions, integers and decimals") {
  CHECK(parse_rational("1/2") == Rational(1, 2));
  CHECK(parse_rational(" 6 ") == Rational(6));
  CHECK(parse_rational("-0.25") == Rational(-1, 4));
  CHECK(parse_rational(".5") == Rational(1, 2));
  CHECK(parse_rational("4/8") == Rational(1, 2));
}

TEST_CASE("parse_rational rejects garbage") {
  CHECK_THROWS_AS(parse_rational(""), Error);
  CHECK_THROWS_AS(parse_rational("1/0"), Error);
  CHECK_THROWS_AS(parse_rational("x"), Error);
  CHECK_THROWS_AS(parse_rational("1.2.3"), Error);
}

TEST_CASE("format_rational always prints p/q") {
  CHECK(format_rational(Rational(6)) == "6/1");
  CHECK(format_rational(parse_rational("-3/9")) == "-1/3");
}

TEST_CASE("format_double uses 15 significant digits") {
  CHECK(format_double(kPi) == "3.14159265358979");
  CHECK(format_double(0.0) == "0");
  CHECK(format_double(INFINITY) == "inf");
}

TEST_CASE("rational_pow handles negative exponents") {
  CHECK(rational_pow(Rational(1, 2), 10) == Rational(1, 1024));
  CHECK(rational_pow(Rational(2, 3), -2) == Rational(9, 4));
  CHECK(rational_pow(Rational(5), 0) == Rational(1));
  CHECK_THROWS_AS(rational_pow(Rational(0), -1), Error);
}

TEST_CASE("primitive reduces to coprime integers") {
  CHECK(primitive(Vec2(4, -6)) == Vec2(2, -3));
  CHECK(primitive(Vec2(parse_rational("1/2"), parse_rational("1/3"))) == Vec2(3, 2));
  CHECK(primitive(Vec2(0, 5)) == Vec2(0, 1));
}

TEST_CASE("same_ray distinguishes opposite rays") {
  CHECK(same_ray(Vec2(1, 2), Vec2(3, 6)));
  CHECK_FALSE(same_ray(Vec2(1, 2), Vec2(-1, -2)));
  CHECK_FALSE(same_ray(Vec2(1, 2), Vec2(2, 1)));
}

TEST_CASE("compare_angle orders by angle in [0, 2pi)") {
  std::mt19937 rng(3);
  for (int i = 0; i < 500; ++i) {
    Vec2 a(static_cast<long>(rng() % 21) - 10, static_cast<long>(rng() % 21) - 10);
    Vec2 b(static_cast<long>(rng() % 21) - 10, static_cast<long>(rng() % 21) - 10);
    if (a.is_zero() || b.is_zero()) continue;
    const double ta = angle_of(a), tb = angle_of(b);
    const int want = same_ray(a, b) ? 0 : (ta < tb ? -1 : 1);
    CHECK(compare_angle(a, b) == want);
  }
}

TEST_CASE("ccw_angle is exact at multiples of pi/4") {
  CHECK(*ccw_angle(Vec2(1, 0), Vec2(0, 1)).pi_multiple == Rational(1, 2));
  CHECK(*ccw_angle(Vec2(1, 0), Vec2(-1, -1)).pi_multiple == Rational(5, 4));
  CHECK(*ccw_angle(Vec2(1, 0), Vec2(2, 0)).pi_multiple == Rational(2));
  CHECK(*ccw_angle(Vec2(1, 0), Vec2(2, 0), true).pi_multiple == Rational(0));
  Angle a = ccw_angle(Vec2(1, 0), Vec2(2, 1));
  CHECK_FALSE(a.pi_multiple);
  CHECK(a.value == doctest::Approx(std::atan(0.5)).epsilon(1e-15));
}

TEST_CASE("angle arithmetic keeps exact multiples") {
  Angle s = Angle::from_pi(Rational(1, 3)) + Angle::from_pi(Rational(2, 3));
  REQUIRE(s.pi_multiple);
  CHECK(*s.pi_multiple == 1);
  CHECK_FALSE((s + Angle::approx(0.1)).pi_multiple);
}

TEST_CASE("direction rejects zero") {
  CHECK_THROWS_AS(Direction(Vec2(0, 0)), Error);
  CHECK(Direction(Vec2(0, -3)).angle() == doctest::Approx(1.5 * kPi));
}

TEST_CASE("errors carry their code name") {
  Error e(ErrorCode::kNotFull, "gap");
  CHECK(std::string(e.what()) == "NotFull: gap");
  CHECK(e.code() == ErrorCode::kNotFull);
}
