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

#include "flatsing/serialize.hpp"

#include <cmath>
#include <cstdint>
#include <cstdio>

namespace flatsing {

namespace {

Json rational_json(const Rational& r) { return format_rational(r); }

Rational rational_from(const Json& j) {
  if (j.is_string()) return parse_rational(j.get<std::string>());
  if (j.is_number_integer()) return Rational(j.get<long>());
  throw Error(ErrorCode::kMalformedGeometry, "expected a rational string, got " + j.dump());
}

Json matrix_json(const Matrix2& m) {
  return Json::array({rational_json(m.a), rational_json(m.b), rational_json(m.c), rational_json(m.d)});
}

Matrix2 matrix_from(const Json& j) {
  if (!j.is_array() || j.size() != 4) throw Error(ErrorCode::kMalformedGeometry, "matrix must have four entries");
  return {rational_from(j[0]), rational_from(j[1]), rational_from(j[2]), rational_from(j[3])};
}

Json side_json(const SideSpec& s) {
  Json j;
  j["scheme"] = s.scheme;
  if (s.transformed) {
    j["matrix"] = matrix_json(s.matrix);
    j["offset"] = vec_json(s.offset);
    j["base"] = side_json(*s.base);
    return j;
  }
  Json pts = Json::array();
  for (const Vec2& p : s.points) pts.push_back(vec_json(p));
  if (s.scheme == "polyline") {
    j["points"] = pts;
  } else if (s.scheme == "geometric") {
    j["points"] = pts;
    j["ratio"] = rational_json(s.ratio);
    j["big_at_start"] = s.flag;
    j["window"] = s.window;
  } else if (s.scheme == "ray") {
    j["apex"] = pts.at(0);
    j["direction"] = pts.at(1);
    j["outward"] = s.flag;
  } else if (s.scheme == "chord_chain") {
    j["signs"] = Json::array({s.sx, s.sy});
    j["outward"] = s.flag;
    j["window"] = s.window;
  }
  return j;
}

SideSpec side_from(const Json& j) {
  SideSpec s;
  s.scheme = j.at("scheme").get<std::string>();
  if (s.scheme == "transformed") {
    s.transformed = true;
    s.matrix = matrix_from(j.at("matrix"));
    s.offset = vec_from_json(j.at("offset"));
    s.base = std::make_shared<SideSpec>(side_from(j.at("base")));
    return s;
  }
  if (s.scheme == "polyline" || s.scheme == "geometric") {
    for (const Json& p : j.at("points")) s.points.push_back(vec_from_json(p));
  }
  if (s.scheme == "geometric") {
    s.ratio = rational_from(j.at("ratio"));
    s.flag = j.at("big_at_start").get<bool>();
    s.window = j.at("window").get<long long>();
  } else if (s.scheme == "ray") {
    s.points = {vec_from_json(j.at("apex")), vec_from_json(j.at("direction"))};
    s.flag = j.at("outward").get<bool>();
  } else if (s.scheme == "chord_chain") {
    s.sx = j.at("signs").at(0).get<int>();
    s.sy = j.at("signs").at(1).get<int>();
    s.flag = j.at("outward").get<bool>();
    s.window = j.at("window").get<long long>();
  }
  return s;
}

Json double_json(double v) {
  if (std::isfinite(v)) return v;
  return v > 0 ? "inf" : (v < 0 ? "-inf" : "nan");
}

void dump_into(const Json& j, int indent, int depth, std::string& out) {
  auto newline = [&](int d) {
    if (indent < 0) return;
    out += '\n';
    out.append(static_cast<std::size_t>(indent * d), ' ');
  };
  switch (j.type()) {
    case Json::value_t::object: {
      if (j.empty()) {
        out += "{}";
        return;
      }
      out += '{';
      bool first = true;
      for (auto it = j.begin(); it != j.end(); ++it) {
        if (!first) out += ',';
        first = false;
        newline(depth + 1);
        out += Json(it.key()).dump();
        out += indent < 0 ? ":" : ": ";
        dump_into(it.value(), indent, depth + 1, out);
      }
      newline(depth);
      out += '}';
      return;
    }
    case Json::value_t::array: {
      if (j.empty()) {
        out += "[]";
        return;
      }
      out += '[';
      bool first = true;
      for (const Json& v : j) {
        if (!first) out += ',';
        first = false;
        newline(depth + 1);
        dump_into(v, indent, depth + 1, out);
      }
      newline(depth);
      out += ']';
      return;
    }
    case Json::value_t::number_float: {
      const double v = j.get<double>();
      out += std::isfinite(v) ? format_double(v) : '"' + format_double(v) + '"';
      return;
    }
    default: out += j.dump(); return;
  }
}

}  // namespace

Json vec_json(const Vec2& v) { return Json::array({rational_json(v.x), rational_json(v.y)}); }

Vec2 vec_from_json(const Json& j) {
  if (!j.is_array() || j.size() != 2) throw Error(ErrorCode::kMalformedGeometry, "point must have two entries");
  return Vec2(rational_from(j[0]), rational_from(j[1]));
}

Json edge_json(const EdgeRef& e) { return Json::array({e.cell, e.side, e.index}); }

Json corner_json(const CornerKey& k) {
  Json j = Json::array({k.cell, k.side});
  j.push_back(k.index ? Json(*k.index) : Json(nullptr));
  return j;
}

Json angle_json(const Angle& a) {
  Json j;
  j["radians"] = double_json(a.value);
  if (a.pi_multiple) j["pi_multiple"] = rational_json(*a.pi_multiple);
  return j;
}

Json surface_json(const Surface& s) {
  Json j;
  j["format"] = "flatsing-surface";
  j["version"] = kSurfaceFormatVersion;
  j["name"] = s.name();
  j["params"] = s.params_json().empty() ? Json::object() : Json::parse(s.params_json());
  Json cells = Json::array();
  for (const Cell& c : s.cells()) {
    Json cj;
    Json sides = Json::array();
    for (const auto& sd : c.sides) sides.push_back(side_json(sd->spec()));
    cj["sides"] = sides;
    cj["next_side"] = c.next_side;
    cj["cusp"] = c.cusp;
    cj["window_edge"] = c.window_edge;
    cj["exterior"] = c.exterior;
    cells.push_back(cj);
  }
  j["cells"] = cells;
  Json rules = Json::array();
  for (const GluingRule& r : s.rules()) rules.push_back(Json::array({r.cell_a, r.side_a, r.cell_b, r.side_b}));
  j["gluings"] = rules;
  Json decl = Json::array();
  for (const SingularityDeclaration& d : s.declarations()) {
    decl.push_back({{"label", d.label}, {"all_vertices", d.all_vertices}});
  }
  j["singularities"] = decl;
  return j;
}

SurfacePtr surface_from_json(const Json& j) {
  try {
    if (j.at("format") != "flatsing-surface") throw Error(ErrorCode::kMalformedGeometry, "not a surface document");
    int version = j.at("version").get<int>();
    if (version != kSurfaceFormatVersion) {
      throw Error(ErrorCode::kMalformedGeometry, "unsupported surface format version " + std::to_string(version));
    }
    std::vector<Cell> cells;
    for (const Json& cj : j.at("cells")) {
      Cell c;
      for (const Json& sj : cj.at("sides")) c.sides.push_back(make_side(side_from(sj)));
      c.next_side = cj.at("next_side").get<std::vector<int>>();
      c.cusp = cj.at("cusp").get<std::vector<bool>>();
      c.window_edge = cj.value("window_edge", std::vector<bool>{});
      c.exterior = cj.value("exterior", false);
      cells.push_back(std::move(c));
    }
    std::vector<GluingRule> rules;
    for (const Json& r : j.at("gluings")) {
      rules.push_back({r.at(0).get<int>(), r.at(1).get<int>(), r.at(2).get<int>(), r.at(3).get<int>()});
    }
    std::vector<SingularityDeclaration> decl;
    for (const Json& d : j.value("singularities", Json::array())) {
      decl.push_back({d.at("label").get<std::string>(), d.value("all_vertices", true)});
    }
    return std::make_shared<Surface>(j.at("name").get<std::string>(), j.value("params", Json::object()).dump(),
                                     std::move(cells), std::move(rules), std::move(decl));
  } catch (const Json::exception& e) {
    throw Error(ErrorCode::kMalformedGeometry, std::string("bad surface document: ") + e.what());
  }
}

std::string surface_to_string(const Surface& s) { return dump_stable(surface_json(s)) + "\n"; }

SurfacePtr surface_from_string(const std::string& text) {
  Json j = Json::parse(text, nullptr, false);
  if (j.is_discarded()) throw Error(ErrorCode::kMalformedGeometry, "surface document is not valid JSON");
  return surface_from_json(j);
}

std::string surface_digest(const Surface& s) {
  std::uint64_t h = 1469598103934665603ull;
  for (unsigned char ch : dump_stable(surface_json(s), -1)) {
    h ^= ch;
    h *= 1099511628211ull;
  }
  char buf[17];
  std::snprintf(buf, sizeof buf, "%016llx", static_cast<unsigned long long>(h));
  return buf;
}

Json affine_map_json(const AffineMap& f) {
  Json j;
  j["format"] = "flatsing-affine-map";
  j["version"] = kSurfaceFormatVersion;
  j["matrix"] = matrix_json(f.matrix());
  Json corr = Json::array();
  for (auto [a, b] : f.correspondence()) corr.push_back(Json::array({a, b}));
  j["correspondence"] = corr;
  Json offs = Json::array();
  for (const auto& [c, v] : f.offsets()) offs.push_back(Json::array({c, vec_json(v)}));
  j["offsets"] = offs;
  j["source_digest"] = surface_digest(*f.source());
  j["target_digest"] = surface_digest(*f.target());
  return j;
}

AffineMap affine_map_from_json(const Json& j, SurfacePtr source, SurfacePtr target) {
  try {
    if (j.at("format") != "flatsing-affine-map") throw Error(ErrorCode::kInvalidArgument, "not an affine map document");
    std::map<int, int> corr;
    for (const Json& p : j.at("correspondence")) corr[p.at(0).get<int>()] = p.at(1).get<int>();
    std::map<int, Vec2> offs;
    for (const Json& p : j.at("offsets")) offs[p.at(0).get<int>()] = vec_from_json(p.at(1));
    return AffineMap(std::move(source), std::move(target), matrix_from(j.at("matrix")), corr, offs);
  } catch (const Json::exception& e) {
    throw Error(ErrorCode::kInvalidArgument, std::string("bad affine map document: ") + e.what());
  }
}

Json validation_json(const ValidationReport& r) {
  Json checks = Json::array();
  for (const ValidationCheck& c : r.checks) {
    checks.push_back({{"name", c.name}, {"passed", c.passed}, {"detail", c.detail}});
  }
  Json iso = Json::object();
  for (const auto& [label, e] : r.isolation) iso[label] = double_json(e);
  return {{"ok", r.ok()}, {"checks", checks}, {"isolation", iso}};
}

Json path_json(const GeodesicPath& p) {
  Json j;
  j["direction"] = vec_json(p.dir);
  j["termination"] = termination_name(p.termination);
  if (!p.detail.empty()) j["detail"] = p.detail;
  Json segs = Json::array();
  for (const PathSegment& s : p.segments) {
    segs.push_back({{"cell", s.cell},
                    {"from", vec_json(s.a)},
                    {"to", vec_json(s.b)},
                    {"s0", rational_json(s.s0)},
                    {"s1", rational_json(s.s1)},
                    {"offset", vec_json(s.offset)}});
  }
  j["segments"] = segs;
  Json cr = Json::array();
  for (const Crossing& c : p.crossings) {
    cr.push_back({{"from", edge_json(c.from)}, {"to", edge_json(c.to)}, {"translation", vec_json(c.translation)}});
  }
  j["crossings"] = cr;
  j["length"] = double_json(p.length());
  j["end_s"] = rational_json(p.end_s());
  if (p.end_anchor) j["end_anchor"] = *p.end_anchor;
  if (p.end_corner) j["end_corner"] = corner_json(*p.end_corner);
  if (p.end_edge) j["end_edge"] = edge_json(*p.end_edge);
  return j;
}

Json approach_json(const LinearApproach& a) {
  Json j;
  if (a.anchor) j["anchor"] = *a.anchor;
  if (a.corner) j["corner"] = corner_json(*a.corner);
  if (a.base) j["base"] = {{"cell", a.base->cell}, {"position", vec_json(a.base->position)}};
  j["direction"] = vec_json(a.dir);
  j["angle"] = double_json(Direction(a.dir).angle());
  j["delta"] = double_json(a.delta);
  return j;
}

namespace {

Json sweep_side_json(const SweepSide& s) {
  Json j;
  j["status"] = end_status_name(s.status);
  j["extent"] = angle_json(s.extent);
  j["wedges"] = s.corners.size();
  if (!s.detail.empty()) j["detail"] = s.detail;
  if (s.certificate) {
    const BoundaryCertificate& c = *s.certificate;
    Json samples = Json::array();
    for (const RatioSample& r : c.samples) {
      samples.push_back({{"t", double_json(r.t)}, {"ratio", double_json(r.ratio)}, {"offset", double_json(r.offset)}});
    }
    Json lengths = Json::array();
    for (double l : c.connection_lengths) lengths.push_back(double_json(l));
    j["certificate"] = {{"direction", vec_json(c.direction)},
                        {"obstruction", c.obstruction},
                        {"samples", samples},
                        {"connection_lengths", lengths},
                        {"reached_floor", c.reached_floor}};
  }
  return j;
}

}  // namespace

Json component_json(const RotationalComponent& c) {
  Json j;
  j["seed"] = approach_json(c.seed);
  j["t0"] = double_json(c.t0);
  j["kind"] = component_kind_name(c.kind);
  j["length"] = angle_json(c.length);
  j["ccw"] = sweep_side_json(c.ccw);
  j["cw"] = sweep_side_json(c.cw);
  j["theta_minus"] = double_json(c.theta_minus());
  j["theta_plus"] = double_json(c.theta_plus());
  Json rho = Json::array();
  for (const RhoSample& r : c.rho) rho.push_back({{"theta", double_json(r.theta)}, {"rho", double_json(r.rho)}});
  j["rho"] = rho;
  j["chain"] = corner_json(c.chain_id);
  return j;
}

Json class_json(const SingularityClass& c) {
  Json j;
  j["tag"] = singularity_tag_name(c.tag);
  if (c.total_angle) j["total_angle"] = angle_json(*c.total_angle);
  Json lengths = Json::array();
  for (double l : c.connection_lengths) lengths.push_back(double_json(l));
  j["connection_lengths"] = lengths;
  j["components"] = c.components;
  j["sweep"] = component_json(c.sweep);
  j["evidence"] = c.evidence;
  return j;
}

Json saddles_json(const SaddleConnectionList& l) {
  Json cs = Json::array();
  for (const SaddleConnection& c : l.connections) {
    cs.push_back({{"start_anchor", c.start_anchor},
                  {"end_anchor", c.end_anchor},
                  {"start_corner", corner_json(c.start_corner)},
                  {"end_corner", corner_json(c.end_corner)},
                  {"holonomy", vec_json(c.holonomy)},
                  {"length2", rational_json(c.length2)},
                  {"length", double_json(c.length)}});
  }
  return {{"connections", cs}, {"complete", l.complete}, {"confidence_radius", double_json(l.confidence_radius)}};
}

Json certificate_json(const EquivalenceCertificate& c) {
  auto spectrum = [](const std::vector<SpectrumEntry>& es) {
    Json a = Json::array();
    for (const SpectrumEntry& e : es) {
      Json j = {{"direction", vec_json(e.direction)}, {"length", double_json(e.length)}};
      j["partner"] = e.partner ? Json(*e.partner) : Json(nullptr);
      a.push_back(j);
    }
    return a;
  };
  auto components = [](const std::vector<ComponentSketch>& cs) {
    Json a = Json::array();
    for (const ComponentSketch& s : cs) {
      a.push_back({{"seed_direction", vec_json(s.seed_dir)},
                   {"kind", component_kind_name(s.kind)},
                   {"length", double_json(s.length)},
                   {"ccw", end_status_name(s.ccw)},
                   {"cw", end_status_name(s.cw)}});
    }
    return a;
  };
  Json measures = Json::array();
  for (const MeasureCheck& m : c.measures) {
    measures.push_back({{"direction", vec_json(m.direction)},
                        {"mu_x", double_json(m.mu_x)},
                        {"mu_y", double_json(m.mu_y)},
                        {"equal", m.equal}});
  }
  Json j;
  j["epsilon"] = double_json(c.eps);
  j["tolerance"] = double_json(c.tolerance);
  j["spectrum_x"] = spectrum(c.spectrum_x);
  j["spectrum_y"] = spectrum(c.spectrum_y);
  j["components_x"] = components(c.components_x);
  j["components_y"] = components(c.components_y);
  j["measures"] = measures;
  j["verdict"] = verdict_name(c.verdict);
  if (!c.witness_kind.empty()) j["witness_kind"] = c.witness_kind;
  if (!c.witness.empty()) j["witness"] = c.witness;
  return j;
}

std::string dump_stable(const Json& j, int indent) {
  std::string out;
  dump_into(j, indent, 0, out);
  return out;
}

}  // namespace flatsing
