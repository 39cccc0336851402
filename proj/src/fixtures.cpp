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

#include "flatsing/fixtures.hpp"

#include <json.hpp>

namespace flatsing {

namespace {

using json = nlohmann::json;

void check_window(long long window) {
  if (window < 2) throw Error(ErrorCode::kInvalidArgument, "window must be at least 2");
  if (window > window_cap()) {
    throw Error(ErrorCode::kInvalidArgument,
                "window " + std::to_string(window) + " exceeds the cap " + std::to_string(window_cap()));
  }
}

void check_ratio(const Rational& alpha) {
  if (sgn(alpha) <= 0 || alpha >= 1) {
    throw Error(ErrorCode::kInvalidArgument, "alpha must lie in (0, 1), got " + format_rational(alpha));
  }
}

Rational half() { return Rational(1, 2); }

std::shared_ptr<const Side> share(std::unique_ptr<Side> s) { return std::shared_ptr<const Side>(std::move(s)); }

Cell half_plane(bool upper) {
  Cell c;
  if (upper) {
    c.sides = {share(ray_side(Vec2(0, 0), Vec2(-1, 0), false)), share(ray_side(Vec2(0, 0), Vec2(1, 0), true))};
  } else {
    c.sides = {share(ray_side(Vec2(0, 0), Vec2(1, 0), false)), share(ray_side(Vec2(0, 0), Vec2(-1, 0), true))};
  }
  c.next_side = {1, -1};
  return c;
}

// Upper half-plane cells glue their negative ray to the next cell's negative
// ray; lower ones glue their positive ray to the next upper cell.
std::vector<GluingRule> half_plane_chain(int cells, bool cyclic) {
  std::vector<GluingRule> rules;
  for (int j = 0; j < cells; ++j) {
    int nx = j + 1;
    if (nx == cells) {
      if (!cyclic) break;
      nx = 0;
    }
    rules.push_back({j, 0, nx, 1});
  }
  return rules;
}

Cell square_cell(std::vector<std::vector<Vec2>> sides) {
  Cell c;
  for (auto& pts : sides) c.sides.push_back(share(polyline_side(std::move(pts))));
  const int n = static_cast<int>(c.sides.size());
  for (int i = 0; i < n; ++i) c.next_side.push_back((i + 1) % n);
  return c;
}

std::string params(const json& j) { return j.dump(); }

}  // namespace

SurfacePtr chamanara(const Rational& alpha, long long window) {
  check_ratio(alpha);
  if (alpha.get_num() != 1 || alpha.get_den() < 2) {
    throw Error(ErrorCode::kInvalidArgument, "alpha must be 1/n with n >= 2");
  }
  check_window(window);
  const Rational h = half();
  const Vec2 bl(-h, -h), br(h, -h), tr(h, h), tl(-h, h);
  Cell c;
  c.sides = {
      share(geometric_side(bl, br, alpha, false, window)),  // bottom, accumulates bottom-left
      share(geometric_side(br, tr, alpha, true, window)),   // right, accumulates top-right
      share(geometric_side(tr, tl, alpha, false, window)),  // top, accumulates top-right
      share(geometric_side(tl, bl, alpha, true, window)),   // left, accumulates bottom-left
  };
  c.next_side = {1, 2, 3, 0};
  std::vector<GluingRule> rules = {{0, 2, 0, 0}, {0, 3, 0, 1}};
  json p = {{"alpha", format_rational(alpha)}, {"window", window}};
  return std::make_shared<Surface>("chamanara", params(p), std::vector<Cell>{std::move(c)}, rules,
                                   std::vector<SingularityDeclaration>{{"x", true}});
}

SurfacePtr geometric_series(const Rational& alpha, long long window) {
  check_ratio(alpha);
  check_window(window);
  const Rational len = alpha / (1 - alpha);
  const Vec2 zero(0, 0), end(len, Rational(0));
  Cell c;
  c.sides = {
      share(geometric_side(zero, end, alpha, false, window)),  // upper side J_n, big piece at the far end
      share(geometric_side(end, zero, alpha, false, window)),  // lower side I_n, big piece at 0
  };
  c.next_side = {1, 0};
  c.exterior = true;
  json p = {{"alpha", format_rational(alpha)}, {"window", window}};
  return std::make_shared<Surface>("geometric_series", params(p), std::vector<Cell>{std::move(c)},
                                   std::vector<GluingRule>{{0, 1, 0, 0}},
                                   std::vector<SingularityDeclaration>{{"x", true}});
}

SurfacePtr double_parabola(long long window) {
  check_window(window);
  Cell plus;
  plus.sides = {share(chord_chain_side(1, 1, false, window)), share(chord_chain_side(1, -1, true, window))};
  plus.next_side = {1, -1};
  plus.cusp = {true, false};
  Cell minus;
  minus.sides = {share(chord_chain_side(-1, -1, false, window)), share(chord_chain_side(-1, 1, true, window))};
  minus.next_side = {1, -1};
  minus.cusp = {true, false};
  json p = {{"window", window}};
  return std::make_shared<Surface>("double_parabola", params(p),
                                   std::vector<Cell>{std::move(plus), std::move(minus)},
                                   std::vector<GluingRule>{{0, 0, 1, 0}, {0, 1, 1, 1}},
                                   std::vector<SingularityDeclaration>{{"x", true}});
}

SurfacePtr cone(int k) {
  if (k < 1) throw Error(ErrorCode::kInvalidArgument, "cone multiplicity must be positive");
  std::vector<Cell> cells;
  for (int j = 0; j < 2 * k; ++j) cells.push_back(half_plane(j % 2 == 0));
  json p = {{"k", k}};
  return std::make_shared<Surface>("cone", params(p), std::move(cells), half_plane_chain(2 * k, true),
                                   std::vector<SingularityDeclaration>{{"x", true}});
}

SurfacePtr infinite_helicoid(long long window) {
  check_window(window);
  std::vector<Cell> cells;
  const long long n = 2 * window + 1;
  for (long long j = 0; j < n; ++j) cells.push_back(half_plane((j - window) % 2 == 0));
  cells.front().window_edge = {false, true};
  cells.back().window_edge = {true, false};
  json p = {{"window", window}};
  return std::make_shared<Surface>("infinite_helicoid", params(p), std::move(cells),
                                   half_plane_chain(static_cast<int>(n), false),
                                   std::vector<SingularityDeclaration>{{"x", true}});
}

SurfacePtr square_torus() {
  Cell c = square_cell({{Vec2(0, 0), Vec2(1, 0)},
                        {Vec2(1, 0), Vec2(1, 1)},
                        {Vec2(1, 1), Vec2(0, 1)},
                        {Vec2(0, 1), Vec2(0, 0)}});
  return std::make_shared<Surface>("square_torus", "{}", std::vector<Cell>{std::move(c)},
                                   std::vector<GluingRule>{{0, 2, 0, 0}, {0, 1, 0, 3}},
                                   std::vector<SingularityDeclaration>{});
}

SurfacePtr two_square_genus2() {
  const Rational h = half();
  Cell s1 = square_cell({{Vec2(0, 0), Vec2(h, Rational(0)), Vec2(1, 0)},
                         {Vec2(1, 0), Vec2(1, 1)},
                         {Vec2(1, 1), Vec2(h, Rational(1)), Vec2(0, 1)},
                         {Vec2(0, 1), Vec2(0, 0)}});
  Cell s2 = square_cell({{Vec2(0, 0), Vec2(1, 0)},
                         {Vec2(1, 0), Vec2(1, 1)},
                         {Vec2(1, 1), Vec2(0, 1)},
                         {Vec2(0, 1), Vec2(0, 0)}});
  std::vector<GluingRule> rules = {{0, 1, 1, 3}, {1, 1, 0, 3}, {0, 2, 0, 0}, {1, 2, 1, 0}};
  return std::make_shared<Surface>("two_square_genus2", "{}", std::vector<Cell>{std::move(s1), std::move(s2)},
                                   rules, std::vector<SingularityDeclaration>{});
}

SurfacePtr finite_cyclic_cover(int n) {
  if (n < 1) throw Error(ErrorCode::kInvalidArgument, "cover degree must be positive");
  std::vector<Cell> cells;
  for (int j = 0; j < 2 * n; ++j) cells.push_back(half_plane(j % 2 == 0));
  json p = {{"n", n}};
  return std::make_shared<Surface>("finite_cyclic_cover", params(p), std::move(cells),
                                   half_plane_chain(2 * n, true),
                                   std::vector<SingularityDeclaration>{{"x", true}});
}

std::vector<std::string> fixture_names() {
  return {"chamanara", "geometric_series", "double_parabola", "cone",
          "infinite_helicoid", "square_torus", "two_square_genus2", "finite_cyclic_cover"};
}

SurfacePtr build_fixture(const std::string& name, const std::string& params_json) {
  json p = params_json.empty() ? json::object() : json::parse(params_json, nullptr, false);
  if (p.is_discarded() || !p.is_object()) throw Error(ErrorCode::kInvalidArgument, "parameters must be a JSON object");
  auto rational_param = [&](const char* key, const char* def) {
    if (!p.contains(key)) return parse_rational(def);
    const json& v = p[key];
    if (v.is_string()) return parse_rational(v.get<std::string>());
    if (v.is_number_integer()) return Rational(v.get<long>());
    throw Error(ErrorCode::kInvalidArgument, std::string("parameter ") + key + " must be a rational string");
  };
  auto int_param = [&](const char* key, long long def) -> long long {
    if (!p.contains(key)) return def;
    const json& v = p[key];
    if (v.is_number_integer()) return v.get<long long>();
    if (v.is_string()) {
      Rational r = parse_rational(v.get<std::string>());
      if (r.get_den() != 1) throw Error(ErrorCode::kInvalidArgument, std::string("parameter ") + key + " must be an integer");
      return r.get_num().get_si();
    }
    throw Error(ErrorCode::kInvalidArgument, std::string("parameter ") + key + " must be an integer");
  };
  const long long window = int_param("window", kDefaultWindow);
  if (name == "chamanara") return chamanara(rational_param("alpha", "1/2"), window);
  if (name == "geometric_series") return geometric_series(rational_param("alpha", "1/2"), window);
  if (name == "double_parabola") return double_parabola(window);
  if (name == "cone") return cone(static_cast<int>(int_param("k", 2)));
  if (name == "infinite_helicoid") return infinite_helicoid(window);
  if (name == "square_torus") return square_torus();
  if (name == "two_square_genus2") return two_square_genus2();
  if (name == "finite_cyclic_cover") return finite_cyclic_cover(static_cast<int>(int_param("n", 3)));
  throw Error(ErrorCode::kInvalidArgument, "unknown fixture '" + name + "'");
}

std::vector<NamedSeed> fixture_seeds(const Surface& s) {
  const std::string& n = s.name();
  if (n == "chamanara") {
    return {{"gamma1", {0, 3, 0}, Vec2(1, -1)},
            {"gamma2", {0, 1, 0}, Vec2(-1, 1)},
            {"eta1", {0, 2, std::nullopt}, Vec2(-1, -1)},
            {"eta2", {0, 0, std::nullopt}, Vec2(1, 1)}};
  }
  if (n == "geometric_series") {
    return {{"gamma1", {0, 0, std::nullopt}, Vec2(0, 1)}, {"gamma2", {0, 1, std::nullopt}, Vec2(0, 1)}};
  }
  if (n == "double_parabola") {
    return {{"gamma", {0, 1, std::nullopt}, Vec2(1, 0)}, {"minus_gamma", {1, 1, std::nullopt}, Vec2(-1, 0)}};
  }
  if (n == "cone" || n == "finite_cyclic_cover") {
    std::vector<NamedSeed> out;
    for (std::size_t j = 0; 2 * j < s.cells().size(); ++j) {
      out.push_back({"sheet" + std::to_string(j), {static_cast<int>(2 * j), 1, 0}, Vec2(0, 1)});
    }
    return out;
  }
  if (n == "infinite_helicoid") {
    int mid = static_cast<int>(s.cells().size() / 2);
    return {{"gamma", {mid, 1, 0}, Vec2(0, 1)}};
  }
  if (n == "two_square_genus2") {
    return {{"gamma", {0, 1, 0}, Vec2(-1, 1)}};
  }
  return {};
}

NamedSeed fixture_seed(const Surface& s, const std::string& name) {
  for (auto& seed : fixture_seeds(s)) {
    if (seed.name == name) return seed;
  }
  throw Error(ErrorCode::kInvalidArgument, "surface " + s.name() + " has no seed '" + name + "'");
}

}  // namespace flatsing
