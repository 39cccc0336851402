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
#include <functional>

#include "flatsing/fixtures.hpp"
#include "flatsing/measures.hpp"
#include "oracles.hpp"

using namespace flatsing;

namespace {

Rational q(long num, long den) {
  Rational r(num, den);
  r.canonicalize();
  return r;
}

std::vector<double> halving(int from, int to) {
  std::vector<double> ts;
  for (int m = from; m <= to; ++m) ts.push_back(std::ldexp(1.0, -m));
  return ts;
}

ErrorCode code_of(const std::function<void()>& f) {
  try {
    f();
  } catch (const Error& e) {
    return e.code();
  }
  FAIL("no error thrown");
  return ErrorCode::kInvalidArgument;
}

}  // namespace

TEST_CASE("nu of a transversal") {
  auto t = square_torus();
  auto h = make_transversal(*t, 0, Vec2(q(1, 10), q(1, 2)), Vec2(q(9, 10), q(1, 2)), Direction(Vec2(0, 1)));
  CHECK(nu_measure(h) == doctest::Approx(0.8).epsilon(1e-15));
  auto d = make_transversal(*t, 0, Vec2(q(1, 2), q(1, 5)), Vec2(q(1, 2), q(4, 5)), Direction(Vec2(1, 1)));
  CHECK(nu_measure(d) == doctest::Approx(0.6 / std::sqrt(2.0)).epsilon(1e-15));
  auto u = make_transversal(*t, 0, Vec2(q(1, 4), q(1, 4)), Vec2(q(3, 4), q(1, 4)), Direction(Vec2(1, 1)));
  CHECK(nu_measure(u) == doctest::Approx(std::sqrt(2.0) / 4).epsilon(1e-15));
}

TEST_CASE("transversal checks") {
  auto t = square_torus();
  const Vec2 a(q(1, 4), q(1, 4)), b(q(3, 4), q(3, 4));
  CHECK(code_of([&] { make_transversal(*t, 0, a, b, Direction(Vec2(2, 2))); }) == ErrorCode::kParallelSegment);
  CHECK(code_of([&] { make_transversal(*t, 0, a, a, Direction(Vec2(1, 0))); }) == ErrorCode::kInvalidArgument);
  CHECK(code_of([&] { make_transversal(*t, 0, a, Vec2(3, 0), Direction(Vec2(0, 1))); }) == ErrorCode::kInvalidArgument);
}

TEST_CASE("strip measure equals nu on several fixtures") {
  struct Case {
    SurfacePtr s;
    int cell;
    Vec2 a, b, dir;
  };
  std::vector<Case> cases = {
      {square_torus(), 0, Vec2(q(1, 10), q(1, 10)), Vec2(q(7, 10), q(3, 10)), Vec2(1, 5)},
      {chamanara(q(1, 2)), 0, Vec2(q(-1, 4), Rational(0)), Vec2(q(1, 4), q(1, 8)), Vec2(-2, 7)},
      {cone(3), 0, Vec2(-1, 1), Vec2(2, 3), Vec2(1, 0)},
  };
  for (const Case& c : cases) {
    auto sigma = make_transversal(*c.s, c.cell, c.a, c.b, Direction(c.dir));
    Compatibility k = check_compatibility(sigma);
    CHECK(k.equal);
    CHECK(k.nu == doctest::Approx(k.mu).epsilon(1e-12));
  }
}

TEST_CASE("strip measure requires coverage") {
  auto t = square_torus();
  const Direction up(Vec2(0, 1));
  auto base = make_transversal(*t, 0, Vec2(q(1, 10), q(1, 2)), Vec2(q(9, 10), q(1, 2)), up);
  auto half = make_transversal(*t, 0, Vec2(q(1, 10), q(1, 4)), Vec2(q(1, 2), q(1, 4)), up);
  auto rest = make_transversal(*t, 0, Vec2(q(2, 5), q(3, 4)), Vec2(q(9, 10), q(3, 4)), up);
  CHECK(code_of([&] { mu_theta(StripFamily{base}, {half}); }) == ErrorCode::kNotFull);
  CHECK(mu_theta(StripFamily{base}, {half, rest}) == doctest::Approx(0.8).epsilon(1e-15));
  CHECK(code_of([&] { mu_theta(StripFamily{base}, {}); }) == ErrorCode::kNotFull);
}

TEST_CASE("finite germ families have measure zero") {
  auto t = square_torus();
  const Vec2 up(0, 1);
  auto sigma = make_transversal(*t, 0, Vec2(q(1, 10), q(1, 2)), Vec2(q(9, 10), q(1, 2)), Direction(up));
  GermFamily fam;
  fam.germs.push_back(approach_from_point(*t, SurfacePoint{0, Vec2(q(1, 3), q(1, 5)), std::nullopt}, up, 0.1));
  fam.germs.push_back(approach_from_point(*t, SurfacePoint{0, Vec2(q(2, 3), q(1, 5)), std::nullopt}, up, 0.1));
  CHECK(mu_theta(*t, fam, {sigma}) == 0);
  fam.germs.push_back(fam.germs.front());
  CHECK(code_of([&] { mu_theta(*t, fam, {sigma}); }) == ErrorCode::kInvalidArgument);
}

TEST_CASE("alexandrov distance between rays of one wedge") {
  auto c = cone(2);
  LinearApproach a = approach_at(*c, CornerKey{0, 1, 0}, Vec2(1, 1), 0.5);
  LinearApproach b = approach_at(*c, CornerKey{0, 1, 0}, Vec2(1, 3), 0.5);
  LimsupEstimate d = alexandrov_distance(*c, a, 1, b, 1, halving(2, 12));
  const double phi = std::atan(3.0) - kPi / 4;
  CHECK(d.estimate == doctest::Approx(oracles::unit_chord(phi)).epsilon(1e-12));
  CHECK(d.trend == "stable");
}

TEST_CASE("upper angle on a cone is capped at pi") {
  auto c = cone(2);
  LinearApproach a = approach_at(*c, CornerKey{0, 1, 0}, Vec2(1, 1), 0.5);
  LinearApproach b = approach_at(*c, CornerKey{2, 1, 0}, Vec2(-1, 1), 0.5);
  LimsupEstimate u = upper_angle(*c, a, b, halving(2, 12));
  CHECK(u.estimate == doctest::Approx(kPi).epsilon(1e-6));
}

TEST_CASE("distance schedules are validated") {
  auto c = cone(2);
  LinearApproach a = approach_at(*c, CornerKey{0, 1, 0}, Vec2(1, 1), 0.5);
  LinearApproach b = approach_at(*c, CornerKey{0, 1, 0}, Vec2(1, 3), 0.5);
  CHECK_THROWS_AS(upper_angle(*c, a, b, {}), Error);
  CHECK_THROWS_AS(upper_angle(*c, a, b, {0.1, 0.2}), Error);
  CHECK_THROWS_AS(alexandrov_distance(*c, a, -1, b, 1, {0.1}), Error);
  auto t = square_torus();
  LinearApproach p = approach_from_point(*t, SurfacePoint{0, Vec2(q(1, 2), q(1, 2)), std::nullopt}, Vec2(1, 0), 0.1);
  CHECK_THROWS_AS(upper_angle(*c, a, p, {0.1}), Error);
}

TEST_CASE("equivalence verdicts") {
  auto c2 = cone(2);
  EquivalenceCertificate same = neighborhood_equivalence(*c2, "x", *cone(2), "x", 0.25);
  CHECK(same.verdict == Verdict::kEquivalent);
  EquivalenceCertificate g = neighborhood_equivalence(*c2, "x", *two_square_genus2(), "x", 0.25);
  CHECK(g.verdict == Verdict::kInequivalent);
  EquivalenceCertificate ch = neighborhood_equivalence(*chamanara(q(1, 2)), "x", *geometric_series(q(1, 2)), "x", 0.25);
  CHECK(ch.verdict != Verdict::kEquivalent);
  CHECK(std::string(verdict_name(Verdict::kInconclusive)) == "Inconclusive");
  CHECK_THROWS_AS(neighborhood_equivalence(*c2, "x", *c2, "x", 0), Error);
}
