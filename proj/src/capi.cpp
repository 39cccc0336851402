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

#include "flatsing/flatsing.h"

#include <cstdlib>
#include <cstring>
#include <string>

#include "flatsing/fixtures.hpp"
#include "flatsing/serialize.hpp"
#include "flatsing/svg.hpp"

struct flatsing_surface {
  flatsing::SurfacePtr surface;
};

namespace {

using flatsing::Error;
using flatsing::ErrorCode;
using flatsing::Json;

thread_local std::string g_last_error;

char* copy_out(const std::string& s) {
  char* p = static_cast<char*>(std::malloc(s.size() + 1));
  if (p == nullptr) throw std::bad_alloc();
  std::memcpy(p, s.c_str(), s.size() + 1);
  return p;
}

template <typename F>
flatsing_status guarded(F&& f) {
  try {
    f();
    g_last_error.clear();
    return FLATSING_OK;
  } catch (const Error& e) {
    g_last_error = e.what();
    return static_cast<flatsing_status>(static_cast<int>(e.code()) + 1);
  } catch (const Json::exception& e) {
    g_last_error = std::string("InvalidArgument: ") + e.what();
    return FLATSING_E_INVALID_ARGUMENT;
  } catch (const std::exception& e) {
    g_last_error = e.what();
    return FLATSING_E_INTERNAL;
  }
}

const flatsing::Surface& need(const flatsing_surface* s) {
  if (s == nullptr || !s->surface) throw Error(ErrorCode::kInvalidArgument, "null surface handle");
  return *s->surface;
}

Json options(const char* text) {
  if (text == nullptr || *text == '\0') return Json::object();
  Json j = Json::parse(text, nullptr, false);
  if (j.is_discarded() || !j.is_object()) throw Error(ErrorCode::kInvalidArgument, "options must be a JSON object");
  return j;
}

double number(const Json& o, const char* key, double def) {
  if (!o.contains(key)) return def;
  const Json& v = o[key];
  if (v.is_number()) return v.get<double>();
  if (v.is_string()) return flatsing::parse_rational(v.get<std::string>()).get_d();
  throw Error(ErrorCode::kInvalidArgument, std::string("option ") + key + " must be a number or a rational string");
}

std::string anchor_of(const flatsing::Surface& s, const Json& o, const char* key = "anchor") {
  if (o.contains(key)) return o[key].get<std::string>();
  if (s.anchors().empty()) throw Error(ErrorCode::kInvalidArgument, "surface has no singular anchor");
  return s.anchors().front().label;
}

std::optional<flatsing::Vec2> dir_of(const Json& o) {
  if (!o.contains("dir")) return std::nullopt;
  flatsing::Vec2 v = flatsing::vec_from_json(o["dir"]);
  if (v.is_zero()) throw Error(ErrorCode::kInvalidArgument, "direction must be nonzero");
  return v;
}

flatsing::LinearApproach start_of(const flatsing::Surface& s, const Json& o, double delta) {
  using namespace flatsing;
  auto dir = dir_of(o);
  if (o.contains("seed")) {
    NamedSeed seed = fixture_seed(s, o["seed"].get<std::string>());
    return approach_at(s, seed.corner, dir ? *dir : seed.dir, delta);
  }
  if (!dir) throw Error(ErrorCode::kInvalidArgument, "a direction or a named seed is required");
  if (o.contains("corner")) {
    const Json& c = o["corner"];
    CornerKey k{c.at(0).get<int>(), c.at(1).get<int>(), std::nullopt};
    if (c.size() > 2 && !c.at(2).is_null()) k.index = c.at(2).get<long long>();
    return approach_at(s, k, *dir, delta);
  }
  if (o.contains("point")) {
    const Json& p = o["point"];
    SurfacePoint sp{p.at("cell").get<int>(), vec_from_json(p.at("position")), std::nullopt};
    return approach_from_point(s, sp, *dir, delta);
  }
  return linear_approach(s, anchor_of(s, o), *dir, delta);
}

flatsing::SweepOptions sweep_options(const Json& o) {
  flatsing::SweepOptions so;
  so.angle_budget = number(o, "angle_budget", 20) * flatsing::kPi;
  so.radius_floor = number(o, "radius_floor", flatsing::kDefaultRadiusFloor);
  if (!(so.angle_budget > 0) || !(so.radius_floor > 0)) {
    throw Error(ErrorCode::kInvalidArgument, "budgets must be positive");
  }
  return so;
}

}  // namespace

extern "C" {

const char* flatsing_version(void) { return flatsing::kToolVersion; }

const char* flatsing_status_name(flatsing_status status) {
  if (status == FLATSING_OK) return "Ok";
  if (status == FLATSING_E_INTERNAL) return "Internal";
  int i = static_cast<int>(status) - 1;
  if (i < 0 || i > static_cast<int>(ErrorCode::kIsolationViolated)) return "Unknown";
  return flatsing::error_name(static_cast<ErrorCode>(i));
}

const char* flatsing_last_error(void) { return g_last_error.c_str(); }

void flatsing_string_free(char* s) { std::free(s); }

flatsing_status flatsing_surface_build(const char* name, const char* params_json, flatsing_surface** out) {
  return guarded([&] {
    if (name == nullptr || out == nullptr) throw Error(ErrorCode::kInvalidArgument, "null argument");
    auto s = flatsing::build_fixture(name, params_json ? params_json : "");
    *out = new flatsing_surface{std::move(s)};
  });
}

flatsing_status flatsing_surface_load(const char* document, flatsing_surface** out) {
  return guarded([&] {
    if (document == nullptr || out == nullptr) throw Error(ErrorCode::kInvalidArgument, "null argument");
    *out = new flatsing_surface{flatsing::surface_from_string(document)};
  });
}

void flatsing_surface_free(flatsing_surface* s) { delete s; }

flatsing_status flatsing_surface_json(const flatsing_surface* s, char** out) {
  return guarded([&] { *out = copy_out(flatsing::surface_to_string(need(s))); });
}

flatsing_status flatsing_surface_digest(const flatsing_surface* s, char** out) {
  return guarded([&] { *out = copy_out(flatsing::surface_digest(need(s))); });
}

flatsing_status flatsing_surface_anchors(const flatsing_surface* s, char** out) {
  return guarded([&] {
    Json a = Json::array();
    for (const auto& an : need(s).anchors()) a.push_back(an.label);
    *out = copy_out(a.dump());
  });
}

flatsing_status flatsing_validate(const flatsing_surface* s, int sample_budget, char** result_json, int* ok) {
  return guarded([&] {
    if (sample_budget < 1) throw Error(ErrorCode::kInvalidArgument, "sample budget must be positive");
    auto r = flatsing::validate_surface(need(s), sample_budget);
    if (ok) *ok = r.ok() ? 1 : 0;
    *result_json = copy_out(flatsing::dump_stable(flatsing::validation_json(r)));
  });
}

flatsing_status flatsing_trace(const flatsing_surface* s, const char* options_json, char** result_json, char** svg) {
  return guarded([&] {
    using namespace flatsing;
    const Surface& sf = need(s);
    Json o = options(options_json);
    double budget = number(o, "budget", 10);
    if (!(budget > 0)) throw Error(ErrorCode::kInvalidArgument, "budget must be positive");
    LinearApproach a = start_of(sf, o, std::min(budget, 0.25));
    GeodesicPath p = trace(sf, a.start(), a.dir, budget);
    Json r = path_json(p);
    r["start"] = approach_json(a);
    r["partial"] = p.termination == Termination::kLocatorRangeExceeded;
    std::string image = svg ? render_path_svg(sf, p) : "";
    *result_json = copy_out(dump_stable(r));
    if (svg) *svg = copy_out(image);
  });
}

flatsing_status flatsing_sweep(const flatsing_surface* s, const char* options_json, char** result_json, char** svg) {
  return guarded([&] {
    using namespace flatsing;
    const Surface& sf = need(s);
    Json o = options(options_json);
    LinearApproach a = start_of(sf, o, number(o, "delta", 0.25));
    RotationalComponent c = sweep(sf, a, sweep_options(o));
    Json r = component_json(c);
    r["partial"] = c.kind == ComponentKind::kIncomplete || c.ccw.status == EndStatus::kWindowLimited ||
                   c.cw.status == EndStatus::kWindowLimited;
    std::string image = svg ? render_sweep_svg(c) : "";
    *result_json = copy_out(dump_stable(r));
    if (svg) *svg = copy_out(image);
  });
}

flatsing_status flatsing_classify(const flatsing_surface* s, const char* options_json, char** result_json) {
  return guarded([&] {
    using namespace flatsing;
    const Surface& sf = need(s);
    Json o = options(options_json);
    ClassifyOptions co;
    co.sweep = sweep_options(o);
    std::string anchor = anchor_of(sf, o);
    double eps = number(o, "epsilon", 0.25);
    SingularityClass c = classify(sf, anchor, eps, co);
    Json r = class_json(c);
    r["anchor"] = anchor;
    r["partial"] = false;
    *result_json = copy_out(dump_stable(r));
  });
}

flatsing_status flatsing_saddles(const flatsing_surface* s, const char* options_json, char** result_json) {
  return guarded([&] {
    using namespace flatsing;
    const Surface& sf = need(s);
    Json o = options(options_json);
    std::string anchor = anchor_of(sf, o);
    double l = number(o, "max_length", 1);
    if (!(l > 0)) throw Error(ErrorCode::kInvalidArgument, "max_length must be positive");
    SaddleConnectionList list = saddle_connections(sf, anchor, l);
    Json r = saddles_json(list);
    r["anchor"] = anchor;
    r["partial"] = !list.complete;
    *result_json = copy_out(dump_stable(r));
  });
}

flatsing_status flatsing_equivalence(const flatsing_surface* a, const flatsing_surface* b, const char* options_json,
                                     char** result_json) {
  return guarded([&] {
    using namespace flatsing;
    const Surface& x = need(a);
    const Surface& y = need(b);
    Json o = options(options_json);
    std::string ax = anchor_of(x, o, "anchor_a");
    std::string ay = anchor_of(y, o, "anchor_b");
    EquivalenceOptions eo;
    eo.sweep = sweep_options(o);
    auto cert = neighborhood_equivalence(x, ax, y, ay, number(o, "epsilon", 0.25), number(o, "tolerance", 1e-9), eo);
    Json r = certificate_json(cert);
    r["anchor_a"] = ax;
    r["anchor_b"] = ay;
    r["partial"] = cert.verdict == Verdict::kInconclusive;
    *result_json = copy_out(dump_stable(r));
  });
}

}  // extern "C"
