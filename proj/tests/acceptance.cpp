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

// Acceptance gate: one line per criterion, nonzero exit when any fails.

#include <chrono>
#include <cmath>
#include <cstdio>
#include <functional>
#include <random>
#include <set>
#include <string>
#include <vector>

#include "flatsing/affine.hpp"
#include "flatsing/fixtures.hpp"
#include "flatsing/measures.hpp"
#include "oracles.hpp"

using namespace flatsing;

namespace {

struct Outcome {
  bool pass = false;
  std::string detail;
};

struct Criterion {
  int id;
  const char* name;
  double seconds;
  std::function<Outcome()> run;
};

Rational q(long num, long den) {
  Rational r(num, den);
  r.canonicalize();
  return r;
}

Outcome fail(std::string d) { return {false, std::move(d)}; }
Outcome pass(std::string d) { return {true, std::move(d)}; }

std::string fmt(const char* f, double v) {
  char buf[64];
  std::snprintf(buf, sizeof buf, f, v);
  return buf;
}

Outcome cone_angles() {
  for (int k : {2, 3, 5}) {
    auto s = cone(k);
    SingularityClass c = classify(*s, "x", 0.25);
    if (c.tag != SingularityTag::kConePoint) return fail("cone(" + std::to_string(k) + ") tagged " + singularity_tag_name(c.tag));
    if (!c.total_angle || !c.total_angle->pi_multiple || *c.total_angle->pi_multiple != 2 * k) {
      return fail("cone(" + std::to_string(k) + ") total angle not exactly " + std::to_string(2 * k) + "pi");
    }
    if (!c.sweep.length.pi_multiple || *c.sweep.length.pi_multiple != 2 * k) {
      return fail("cone(" + std::to_string(k) + ") sweep length not exact");
    }
  }
  return pass("ConePoint with total angles 4pi, 6pi, 10pi exactly");
}

RotationalComponent sweep_seed(const Surface& s, const std::string& name) {
  NamedSeed seed = fixture_seed(s, name);
  return sweep(s, approach_at(s, seed.corner, seed.dir, 0.25));
}

Outcome chamanara_interval() {
  auto s = chamanara(Rational(1, 2));
  RotationalComponent c = sweep_seed(*s, "eta1");
  std::set<std::string> obstructions;
  for (const SweepSide* sd : {&c.ccw, &c.cw}) {
    if (sd->certificate && sd->certificate->reached_floor) obstructions.insert(sd->certificate->obstruction);
  }
  const bool certs = obstructions == std::set<std::string>{"horizontal", "vertical"};
  const double err = std::abs(c.length.value - kPi / 4);
  std::string d = std::string(component_kind_name(c.kind)) + " of length " + format_double(c.length.value) +
                  " (target pi/4 = " + format_double(kPi / 4) + ", deviation " + fmt("%.3g", err) + ")" +
                  (certs ? ", horizontal and vertical certificates" : ", certificates incomplete");
  if (c.kind != ComponentKind::kClosedInterval || err > 1e-6 || !certs) return fail(d);
  return pass(d);
}

Outcome chamanara_spires() {
  auto s = chamanara(Rational(1, 2));
  std::string d;
  for (const char* name : {"gamma1", "gamma2"}) {
    RotationalComponent c = sweep_seed(*s, name);
    bool capped = c.ccw.status == EndStatus::kBudgetCapped && c.cw.status == EndStatus::kBudgetCapped &&
                  std::abs(c.ccw.extent.value - 20 * kPi) < 1e-9 && std::abs(c.cw.extent.value - 20 * kPi) < 1e-9;
    if (!capped || c.kind != ComponentKind::kDoubleSpireCandidate) {
      return fail(std::string(name) + ": " + component_kind_name(c.kind) + " ccw " + end_status_name(c.ccw.status) +
                  " cw " + end_status_name(c.cw.status));
    }
  }
  return pass("gamma1 and gamma2 BudgetCapped at 20pi on both sides, DoubleSpireCandidate");
}

Outcome geometric_series_seeds() {
  auto s = geometric_series(Rational(1, 2));
  std::vector<ComponentSummary> comps = seed_components(*s, "x", 0.25);
  std::set<CornerKey> found, expected;
  for (const ComponentSummary& c : comps) found.insert(c.chain);
  for (const char* name : {"gamma1", "gamma2"}) {
    RotationalComponent c = sweep_seed(*s, name);
    expected.insert(c.chain_id);
    std::multiset<EndStatus> ends{c.ccw.status, c.cw.status};
    if (ends != std::multiset<EndStatus>{EndStatus::kBudgetCapped, EndStatus::kBoundary}) {
      return fail(std::string(name) + " ends " + end_status_name(c.ccw.status) + "/" + end_status_name(c.cw.status));
    }
  }
  if (found != expected || comps.size() != 2) {
    return fail(std::to_string(comps.size()) + " seeded components, expected the two of gamma1 and gamma2");
  }
  return pass("exactly two components (gamma1, gamma2), each BudgetCapped on one side and Boundary on the other");
}

Outcome double_parabola_singleton() {
  auto s = double_parabola();
  NamedSeed seed = fixture_seed(*s, "gamma");
  LinearApproach g = approach_at(*s, seed.corner, seed.dir, 1.0);
  RotationalComponent c = sweep(*s, g);
  if (c.kind != ComponentKind::kSingleton || c.ccw.status != EndStatus::kBoundary ||
      c.cw.status != EndStatus::kBoundary) {
    return fail(std::string("sweep of gamma gives ") + component_kind_name(c.kind));
  }
  std::vector<double> ts, ms;
  for (int m = 2; m <= 12; ++m) ts.push_back(std::ldexp(1.0, -m));
  for (int m = 2; m <= 12; ++m) ms.push_back(std::ldexp(1.0, -m + 2));
  BoundaryTest bt = boundary_test(*s, g, ms, ts);
  if (!bt.boundary) return fail("boundary_test false");
  double worst = 0;
  for (std::size_t i = 0; i < bt.samples.size(); ++i) {
    const int m = static_cast<int>(i) + 2;
    const double t = bt.samples[i].t;
    const double bound = std::ldexp(1.0, -m + 2);
    if (!(bt.samples[i].ratio <= bound)) return fail("ratio above 2^(-m+2) at m = " + std::to_string(m));
    const double oracle = oracles::parabola_vertex_distance(t) / t;
    worst = std::max(worst, std::abs(oracle - bt.samples[i].ratio));
  }
  if (worst > 1e-12) return fail("ratios disagree with the vertex oracle by " + fmt("%.3g", worst));
  return pass("Singleton; r(gamma(2^-m))/2^-m <= 2^(-m+2) for m = 2..12, matches the vertex oracle");
}

Outcome classification() {
  const double eps = 0.25;
  auto ch = chamanara(Rational(1, 2));
  auto y = geometric_series(Rational(1, 2));
  auto hel = infinite_helicoid();
  for (auto [s, label] : {std::pair{ch, "chamanara"}, std::pair{y, "Y_1/2"}}) {
    SingularityClass c = classify(*s, "x", eps);
    const auto& l = c.connection_lengths;
    if (c.tag != SingularityTag::kWild) return fail(std::string(label) + " tagged " + singularity_tag_name(c.tag));
    if (l.size() < 3 || !(l.front() < eps / 8)) return fail(std::string(label) + " lacks shrinking connections");
  }
  SingularityClass h = classify(*hel, "x", eps);
  if (h.tag != SingularityTag::kInfiniteAngle) return fail(std::string("helicoid tagged ") + singularity_tag_name(h.tag));
  SingularityClass dp = classify(*double_parabola(), "x", eps);
  if (dp.tag == SingularityTag::kConePoint) return fail("double parabola tagged ConePoint");
  for (auto& [s, want] : std::vector<std::pair<SurfacePtr, bool>>{
           {cone(2), true}, {two_square_genus2(), true}, {finite_cyclic_cover(3), true}}) {
    SingularityClass c = classify(*s, s->anchors().front().label, 0.25);
    if ((c.tag == SingularityTag::kConePoint) != want) return fail(s->name() + " misclassified");
  }
  return pass("Wild for chamanara and Y_1/2 with shrinking connections, InfiniteAngle for the helicoid, no false ConePoint");
}

Outcome semicontinuity() {
  auto s = chamanara(Rational(1, 2));
  // Shallow corners only.
  std::vector<CornerKey> corners = s->anchor_corners("x", 24);
  std::mt19937 rng(20261015);
  const double eps = 0.5;
  int families = 0;
  double worst = -1;
  int strict = 0;
  while (families < 100) {
    const Corner c = s->corner(corners[rng() % corners.size()]);
    // Limit directions: a saddle-connection direction half the time.
    Vec2 limit;
    if (families % 2 == 0) {
      std::vector<Vec2> axes = {Vec2(1, 0), Vec2(0, 1), Vec2(-1, 0), Vec2(0, -1), Vec2(1, 1), Vec2(-1, -1)};
      limit = axes[rng() % axes.size()];
    } else {
      limit = Vec2(static_cast<long>(rng() % 41) - 20, static_cast<long>(rng() % 41) - 20);
    }
    if (limit.is_zero() || !c.contains(limit)) continue;
    const Vec2 perp(-limit.y, limit.x);
    const Vec2 side = (rng() % 2) ? perp : Rational(-1) * perp;
    double lim_len = maximal_length(*s, approach_at(*s, c.key, limit, 0.1), eps).value;
    double liminf = std::numeric_limits<double>::infinity();
    bool ok = true;
    for (int n = 6; n <= 22; n += 2) {
      Vec2 v = limit + rational_pow(Rational(1, 2), n) * side;
      if (!c.contains(v)) {
        ok = false;
        break;
      }
      double l = maximal_length(*s, approach_at(*s, c.key, v, 0.1), eps).value;
      if (n >= 14) liminf = std::min(liminf, l);
    }
    if (!ok) continue;
    ++families;
    worst = std::max(worst, lim_len - liminf);
    if (lim_len < liminf - 1e-9) ++strict;
    if (lim_len > liminf + 1e-9) {
      return fail("family " + std::to_string(families) + ": l(limit) = " + format_double(lim_len) +
                  " exceeds liminf " + format_double(liminf));
    }
  }
  return pass("100 families (" + std::to_string(strict) + " with a strict jump); max l(limit) - liminf = " +
              fmt("%.3g", worst));
}

double angle_gap(double a, double b) {
  double d = std::remainder(a - b, kTwoPi);
  return std::abs(d);
}

Outcome equivariance() {
  std::mt19937 rng(7);
  auto rnd = [&](int lo, int hi) { return static_cast<long>(lo + static_cast<int>(rng() % (hi - lo + 1))); };
  double worst = 0;
  // Torus shear on approaches from flat points.
  auto torus = square_torus();
  const Matrix2 shear{Rational(1), Rational(1), Rational(0), Rational(1)};
  AffineMap ft = affine_image(torus, shear);
  for (int i = 0; i < 100; ++i) {
    Vec2 p(q(rnd(1, 999), 1000), q(rnd(1, 999), 1000));
    Vec2 v(rnd(-9, 9), rnd(-9, 9));
    if (v.is_zero()) v = Vec2(1, 2);
    LinearApproach a = approach_from_point(*torus, SurfacePoint{0, p, std::nullopt}, v, 0.05);
    LinearApproach b = pushforward(ft, a);
    worst = std::max(worst, angle_gap(Direction(b.dir).angle(), normalized_action(shear, Direction(a.dir)).angle()));
  }
  // Chamanara element on approaches at the anchor.
  auto ch = chamanara(Rational(1, 2));
  const Matrix2 el{Rational(1), Rational(2), Rational(0), Rational(1)};
  AffineMap fc = affine_image(ch, el);
  std::vector<CornerKey> corners = ch->anchor_corners("x", 64);
  int done = 0;
  while (done < 100) {
    const Corner c = ch->corner(corners[rng() % corners.size()]);
    Vec2 v(rnd(-12, 12), rnd(-12, 12));
    if (v.is_zero() || !c.contains(v)) continue;
    LinearApproach a = approach_at(*ch, c.key, v, 0.05);
    LinearApproach b = pushforward(fc, a);
    worst = std::max(worst, angle_gap(Direction(b.dir).angle(), normalized_action(el, Direction(a.dir)).angle()));
    ++done;
  }
  // Lift identity exp(lift(t)) = A exp(it) / |A exp(it)|.
  double lift_worst = 0;
  for (const Matrix2& m : {shear, el}) {
    const double t0 = 0.3;
    const double s0 = std::atan2(m.c.get_d() * std::cos(t0) + m.d.get_d() * std::sin(t0),
                                 m.a.get_d() * std::cos(t0) + m.b.get_d() * std::sin(t0));
    CircleLift lift = lift_map(m, t0, s0);
    for (int i = 0; i < 1000; ++i) {
      const double t = -10 * kPi + 20 * kPi * i / 999.0;
      const double x = m.a.get_d() * std::cos(t) + m.b.get_d() * std::sin(t);
      const double y = m.c.get_d() * std::cos(t) + m.d.get_d() * std::sin(t);
      const double n = std::hypot(x, y);
      const double l = lift(t);
      lift_worst = std::max(lift_worst, std::hypot(std::cos(l) - x / n, std::sin(l) - y / n));
    }
  }
  std::string d = "dir deviation " + fmt("%.3g", worst) + " over 200 approaches, lift deviation " +
                  fmt("%.3g", lift_worst) + " over 2000 angles";
  if (worst >= 1e-9 || lift_worst >= 1e-9) return fail(d);
  return pass(d);
}

struct Box {
  int cell;
  double x0, x1, y0, y1;
};

Outcome compatibility() {
  std::mt19937 rng(11);
  std::vector<std::pair<SurfacePtr, std::vector<Box>>> fixtures = {
      {square_torus(), {{0, 0, 1, 0, 1}}},
      {two_square_genus2(), {{0, 0, 1, 0, 1}, {1, 0, 1, 0, 1}}},
      {chamanara(Rational(1, 2)), {{0, -0.5, 0.5, -0.5, 0.5}}},
      {geometric_series(Rational(1, 2)), {{0, -2, 3, -2, 2}}},
      {double_parabola(), {{0, 1, 4, -1, 1}, {1, -4, -1, -1, 1}}},
      {cone(2), {{0, -2, 2, 0, 2}, {1, -2, 2, -2, 0}}},
  };
  auto uniform = [&](double lo, double hi) {
    return q(static_cast<long>(std::floor((lo + (hi - lo) * (rng() % 100000) / 100000.0) * 4096)), 4096);
  };
  double worst = 0;
  for (auto& [s, boxes] : fixtures) {
    int done = 0, tries = 0;
    while (done < 100) {
      if (++tries > 100000) return fail(s->name() + ": could not sample transversals");
      const Box& b = boxes[rng() % boxes.size()];
      Vec2 a(uniform(b.x0, b.x1), uniform(b.y0, b.y1));
      Vec2 e(uniform(-0.3, 0.3), uniform(-0.3, 0.3));
      Vec2 th(static_cast<long>(rng() % 41) - 20, static_cast<long>(rng() % 41) - 20);
      if (e.is_zero() || th.is_zero() || sgn(cross(e, th)) == 0) continue;
      TransversalSegment sigma;
      try {
        sigma = make_transversal(*s, b.cell, a, a + e, Direction(th));
      } catch (const Error&) {
        continue;
      }
      Compatibility c = check_compatibility(sigma);
      worst = std::max(worst, std::abs(c.nu - c.mu));
      if (!c.equal) return fail(s->name() + ": nu " + format_double(c.nu) + " vs mu " + format_double(c.mu));
      ++done;
    }
  }
  return pass("600 samples over 6 fixtures, max |nu - mu| = " + fmt("%.3g", worst));
}

Outcome equivalence() {
  auto y2 = geometric_series(Rational(1, 2));
  auto y3 = geometric_series(Rational(1, 3));
  EquivalenceCertificate same = neighborhood_equivalence(*y2, "x", *y2, "x", 0.25);
  if (same.verdict != Verdict::kEquivalent) return fail(std::string("Y_1/2 vs itself: ") + verdict_name(same.verdict));
  EquivalenceCertificate diff = neighborhood_equivalence(*y2, "x", *y3, "x", 0.25);
  if (diff.verdict != Verdict::kInequivalent || diff.witness_kind != "spectrum") {
    return fail(std::string("Y_1/2 vs Y_1/3: ") + verdict_name(diff.verdict));
  }
  // Spectra against the enumeration oracle, down to the deepest length found.
  for (auto [spec, alpha] : {std::pair{&diff.spectrum_x, Rational(1, 2)}, std::pair{&diff.spectrum_y, Rational(1, 3)}}) {
    std::vector<double> got;
    for (const SpectrumEntry& e : *spec) {
      if (!(e.direction == Vec2(1, 0) || e.direction == Vec2(-1, 0)) || !e.partner) {
        return fail("spectrum entry off the slit direction or unpaired");
      }
      got.push_back(e.length);
    }
    std::sort(got.begin(), got.end());
    got.erase(std::unique(got.begin(), got.end(), [](double p, double q) { return std::abs(p - q) < 1e-15; }), got.end());
    if (got.size() < 10) return fail("spectrum shallower than 10 lengths");
    std::vector<double> want = oracles::geometric_series_lengths(alpha, 0.25, got.front() * (1 - 1e-9));
    if (got.size() != want.size()) return fail("spectrum size differs from the enumeration oracle");
    for (std::size_t i = 0; i < got.size(); ++i) {
      if (std::abs(got[i] - want[i]) > 1e-12 * want[i]) return fail("spectrum length differs from the enumeration oracle");
    }
  }
  EquivalenceCertificate cones = neighborhood_equivalence(*cone(2), "x", *cone(3), "x", 0.25);
  if (cones.verdict != Verdict::kInequivalent) return fail(std::string("cone 4pi vs 6pi: ") + verdict_name(cones.verdict));
  return pass("Y_1/2 ~ Y_1/2; Y_1/2 vs Y_1/3 witness: " + diff.witness + "; cones: " + cones.witness);
}

Outcome upper_angles() {
  auto s = finite_cyclic_cover(3);
  std::vector<double> ts;
  for (int m = 2; m <= 14; ++m) ts.push_back(std::ldexp(1.0, -m));
  LinearApproach a = approach_at(*s, {0, 1, 0}, Vec2(1, 1), 0.5);
  LinearApproach b = approach_at(*s, {4, 1, 0}, Vec2(1, 1), 0.5);
  double sheets = upper_angle(*s, a, b, ts).estimate;
  if (std::abs(sheets - kPi) > 1e-3) return fail("two sheets apart: " + format_double(sheets));
  double worst = 0;
  for (Vec2 w : {Vec2(1, 3), Vec2(-1, 2), Vec2(-5, 1), Vec2(2, 1)}) {
    LinearApproach c = approach_at(*s, {0, 1, 0}, w, 0.5);
    double phi = std::abs(std::atan2(w.dy(), w.dx()) - kPi / 4);
    worst = std::max(worst, std::abs(upper_angle(*s, a, c, ts).estimate - phi));
  }
  std::string d = "two sheets apart " + format_double(sheets) + ", same-wedge deviation " + fmt("%.3g", worst);
  if (worst > 1e-6) return fail(d);
  return pass(d);
}

Outcome finite_type() {
  bool g = finite_affine_type(*two_square_genus2(), 0.25);
  bool c = finite_affine_type(*chamanara(Rational(1, 2)), 0.25);
  if (!g || c) return fail(std::string("genus 2 ") + (g ? "finite" : "not finite") + ", chamanara " + (c ? "finite" : "not finite"));
  return pass("genus 2 finite type; chamanara not finite type");
}

}  // namespace

int main() {
  const std::vector<Criterion> criteria = {
      {1, "cone angles", 1, cone_angles},
      {2, "chamanara pi/4 component", 5, chamanara_interval},
      {3, "chamanara double-spire seeds", 10, chamanara_spires},
      {4, "geometric series Y_1/2", 5, geometric_series_seeds},
      {5, "double parabola singleton", 2, double_parabola_singleton},
      {6, "wild classification", 10, classification},
      {7, "l semicontinuity", 5, semicontinuity},
      {8, "affine equivariance", 2, equivariance},
      {9, "measure compatibility", 2, compatibility},
      {10, "equivalence decision", 5, equivalence},
      {11, "upper angle", 2, upper_angles},
      {12, "finite affine type", 2, finite_type},
  };
  int failures = 0;
  for (const Criterion& c : criteria) {
    auto start = std::chrono::steady_clock::now();
    Outcome o;
    try {
      o = c.run();
    } catch (const std::exception& e) {
      o = fail(std::string("threw ") + e.what());
    }
    double secs = std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
    if (o.pass && secs > c.seconds) o = fail(o.detail + "; over the time limit");
    if (!o.pass) ++failures;
    std::printf("criterion %2d %s: %s (%.2fs of %.0fs) %s\n", c.id, o.pass ? "PASS" : "FAIL", c.name, secs, c.seconds,
                o.detail.c_str());
  }
  std::printf("%d of %zu criteria pass\n", static_cast<int>(criteria.size()) - failures, criteria.size());
  return failures == 0 ? 0 : 1;
}
