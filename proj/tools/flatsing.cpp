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

// Command-line front end over the C API.

#include <cstdio>
#include <cstdlib>
#include <fstream>
#include <iostream>
#include <map>
#include <memory>
#include <sstream>
#include <string>
#include <vector>

#include <CLI11.hpp>
#include <json.hpp>

#include "flatsing/flatsing.h"

namespace {

using json = nlohmann::json;

constexpr int kExitOk = 0;
constexpr int kExitValidation = 2;
constexpr int kExitBudget = 3;

struct Failure {
  flatsing_status status;
  std::string message;
};

/// Owned C string from the library.
struct CString {
  char* p = nullptr;
  ~CString() { flatsing_string_free(p); }
  std::string str() const { return p ? p : ""; }
};

struct SurfaceHandle {
  flatsing_surface* p = nullptr;
  ~SurfaceHandle() { flatsing_surface_free(p); }
};

void check(flatsing_status st) {
  if (st != FLATSING_OK) throw Failure{st, flatsing_last_error()};
}

bool budget_status(flatsing_status st) {
  return st == FLATSING_E_LOCATOR_RANGE_EXCEEDED || st == FLATSING_E_INCONCLUSIVE || st == FLATSING_E_INCOMPLETE ||
         st == FLATSING_E_NO_COMPARABLE_SAMPLES;
}

std::string read_file(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw Failure{FLATSING_E_INVALID_ARGUMENT, "cannot read " + path};
  std::ostringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

void write_file(const std::string& path, const std::string& text) {
  std::ofstream out(path, std::ios::binary);
  if (!out) throw Failure{FLATSING_E_INVALID_ARGUMENT, "cannot write " + path};
  out << text;
}

std::string indent(const std::string& text, const std::string& pad) {
  std::string out;
  for (char c : text) {
    out += c;
    if (c == '\n') out += pad;
  }
  return out;
}

/// Rational string check for --epsilon and --dir components.
std::string rational_arg(const std::string& s) {
  static const std::string kDigits = "0123456789";
  std::size_t slash = s.find('/');
  auto integer = [&](const std::string& t, bool sign) {
    std::size_t i = (sign && !t.empty() && (t[0] == '-' || t[0] == '+')) ? 1 : 0;
    return i < t.size() && t.find_first_not_of(kDigits, i) == std::string::npos;
  };
  bool ok = slash == std::string::npos ? integer(s, true)
                                       : integer(s.substr(0, slash), true) && integer(s.substr(slash + 1), false);
  if (!ok) throw Failure{FLATSING_E_INVALID_ARGUMENT, "'" + s + "' is not a rational p/q"};
  return s;
}

json dir_arg(const std::string& s) {
  std::size_t comma = s.find(',');
  if (comma == std::string::npos) throw Failure{FLATSING_E_INVALID_ARGUMENT, "--dir expects vx,vy"};
  return json::array({rational_arg(s.substr(0, comma)), rational_arg(s.substr(comma + 1))});
}

json corner_arg(const std::string& s) {
  json out = json::array();
  std::stringstream ss(s);
  std::string part;
  while (std::getline(ss, part, ',')) {
    char* end = nullptr;
    long long v = std::strtoll(part.c_str(), &end, 10);
    if (end == part.c_str() || *end != '\0') throw Failure{FLATSING_E_INVALID_ARGUMENT, "--corner expects integers"};
    out.push_back(v);
  }
  if (out.size() < 2 || out.size() > 3) throw Failure{FLATSING_E_INVALID_ARGUMENT, "--corner expects cell,side[,index]"};
  return out;
}

/// Window of infinite fixtures: --window, else the default clamped to the cap.
long long effective_window(long long window) {
  if (window > 0) return window;
  const char* env = std::getenv("FLATSING_WINDOW_CAP");
  if (env == nullptr || *env == '\0') return 0;
  long long cap = std::strtoll(env, nullptr, 10);
  return cap > 0 && cap < 64 ? cap : 0;
}

struct Common {
  std::string surface;
  std::string fixture;
  std::vector<std::string> params;
  long long window = 0;
  std::string json_out;
  std::string svg_out;
};

json fixture_params(const std::vector<std::string>& params, long long window) {
  json p = json::object();
  for (const std::string& kv : params) {
    std::size_t eq = kv.find('=');
    if (eq == std::string::npos) throw Failure{FLATSING_E_INVALID_ARGUMENT, "--param expects key=value"};
    std::string key = kv.substr(0, eq), value = kv.substr(eq + 1);
    if (key == "k" || key == "n" || key == "window") {
      char* end = nullptr;
      long long v = std::strtoll(value.c_str(), &end, 10);
      if (end == value.c_str() || *end != '\0') throw Failure{FLATSING_E_INVALID_ARGUMENT, key + " must be an integer"};
      p[key] = v;
    } else {
      p[key] = rational_arg(value);
    }
  }
  window = effective_window(window);
  if (window > 0 && !p.contains("window")) p["window"] = window;
  return p;
}

void load(const Common& c, SurfaceHandle& h) {
  if (!c.surface.empty() && !c.fixture.empty()) {
    throw Failure{FLATSING_E_INVALID_ARGUMENT, "give either --surface or --fixture"};
  }
  if (!c.surface.empty()) {
    check(flatsing_surface_load(read_file(c.surface).c_str(), &h.p));
  } else if (!c.fixture.empty()) {
    check(flatsing_surface_build(c.fixture.c_str(), fixture_params(c.params, c.window).dump().c_str(), &h.p));
  } else {
    throw Failure{FLATSING_E_INVALID_ARGUMENT, "--surface or --fixture is required"};
  }
}

std::string digest(const SurfaceHandle& h) {
  CString d;
  check(flatsing_surface_digest(h.p, &d.p));
  return d.str();
}

std::string window_note() {
  const char* env = std::getenv("FLATSING_WINDOW_CAP");
  return std::string("instantiation cap ") + (env && *env ? std::string(env) + " (FLATSING_WINDOW_CAP)" : "1000000");
}

std::string number(double v) {
  char buf[32];
  std::snprintf(buf, sizeof buf, "%.15g", v);
  return buf;
}

/// Report with sorted keys; the results payload is already serialized.
std::string report(const json& command, const std::vector<std::string>& digests, const std::string& results,
                   std::vector<std::string> notes) {
  std::string out = "{\n";
  out += "  \"command\": " + indent(command.dump(2), "  ") + ",\n";
  out += "  \"confidence\": " + indent(json(notes).dump(2), "  ") + ",\n";
  out += "  \"results\": " + indent(results, "  ") + ",\n";
  out += "  \"schema\": \"flatsing-report/1\",\n";
  out += "  \"surface_digest\": " + (digests.size() == 1 ? json(digests[0]) : json(digests)).dump() + ",\n";
  out += "  \"version\": " + json(flatsing_version()).dump() + "\n";
  out += "}\n";
  return out;
}

int emit(const Common& c, const std::string& text) {
  if (c.json_out.empty()) {
    std::cout << text;
  } else {
    write_file(c.json_out, text);
  }
  return kExitOk;
}

bool partial(const std::string& results) {
  json r = json::parse(results, nullptr, false);
  return !r.is_discarded() && r.value("partial", false);
}

void add_common(CLI::App* app, Common& c, bool svg) {
  app->add_option("--surface", c.surface, "Surface JSON file");
  app->add_option("--fixture", c.fixture, "Build a named fixture instead of loading a file");
  app->add_option("--param", c.params, "Fixture parameter key=value");
  app->add_option("--window", c.window, "Index window for infinite fixtures");
  app->add_option("--json", c.json_out, "Write the report here instead of stdout");
  if (svg) app->add_option("--svg", c.svg_out, "Write an SVG rendering");
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"flatsing: singularities of translation surfaces"};
  app.require_subcommand(1);
  app.set_version_flag("--version", std::string(flatsing_version()));

  Common common;
  std::vector<std::string> params_b;
  std::string anchor, anchor_b, surface_b, fixture_b, seed, dir, epsilon = "1/4", tolerance = "1e-9";
  std::string out_path, max_length = "1", alpha, corner, point;
  int cell = 0;
  double angle_budget = 20, radius_floor = 1e-8, budget = 10;
  int k = 0, n = 0, sample_budget = 50;

  auto* build = app.add_subcommand("build", "Build a fixture and write its surface file");
  std::string name;
  build->add_option("name", name, "Fixture name")->required();
  build->add_option("--alpha", alpha, "Ratio alpha as p/q");
  build->add_option("--k", k, "Cone multiplicity");
  build->add_option("--n", n, "Cover degree");
  build->add_option("--out,-o", out_path, "Surface file to write");
  build->add_option("--sample-budget", sample_budget, "Edges checked per infinite side");
  build->add_option("--param", common.params, "Fixture parameter key=value");
  build->add_option("--window", common.window, "Index window for infinite fixtures");
  build->add_option("--json", common.json_out, "Write the report here instead of stdout");

  auto* trace = app.add_subcommand("trace", "Trace a straight line");
  add_common(trace, common, true);
  trace->add_option("--anchor", anchor, "Anchor label");
  trace->add_option("--seed", seed, "Named fixture seed");
  trace->add_option("--dir", dir, "Direction vx,vy");
  trace->add_option("--budget", budget, "Length budget");
  trace->add_option("--corner", corner, "Start corner cell,side[,index]");
  trace->add_option("--cell", cell, "Start cell for --point");
  trace->add_option("--point", point, "Start point x,y in the cell");

  auto* classify = app.add_subcommand("classify", "Classify a singularity");
  add_common(classify, common, false);
  classify->add_option("--anchor", anchor, "Anchor label");
  classify->add_option("--epsilon", epsilon, "Radius p/q");
  classify->add_option("--angle-budget", angle_budget, "Sweep budget in multiples of pi");
  classify->add_option("--radius-floor", radius_floor, "Smallest certified radius ratio");

  auto* sweep = app.add_subcommand("sweep", "Sweep the rotational component of an approach");
  add_common(sweep, common, true);
  sweep->add_option("--anchor", anchor, "Anchor label");
  sweep->add_option("--seed", seed, "Named fixture seed");
  sweep->add_option("--dir", dir, "Seed direction vx,vy");
  sweep->add_option("--corner", corner, "Seed corner cell,side[,index]");
  sweep->add_option("--angle-budget", angle_budget, "Sweep budget in multiples of pi");
  sweep->add_option("--radius-floor", radius_floor, "Smallest certified radius ratio");

  auto* saddles = app.add_subcommand("saddles", "List saddle connections at an anchor");
  add_common(saddles, common, false);
  saddles->add_option("--anchor", anchor, "Anchor label");
  saddles->add_option("--max-length", max_length, "Longest connection, p/q");

  auto* equiv = app.add_subcommand("equiv", "Compare two singular neighbourhoods");
  add_common(equiv, common, false);
  equiv->add_option("--anchor", anchor, "Anchor label on the first surface");
  equiv->add_option("--surface-b", surface_b, "Second surface file");
  equiv->add_option("--fixture-b", fixture_b, "Second surface as a named fixture");
  equiv->add_option("--param-b", params_b, "Second fixture parameter key=value");
  equiv->add_option("--anchor-b", anchor_b, "Anchor label on the second surface");
  equiv->add_option("--epsilon", epsilon, "Radius p/q");
  equiv->add_option("--tolerance", tolerance, "Length tolerance");
  equiv->add_option("--angle-budget", angle_budget, "Sweep budget in multiples of pi");

  try {
    app.parse(argc, argv);
  } catch (const CLI::Success& e) {
    return app.exit(e);
  } catch (const CLI::ParseError& e) {
    app.exit(e);
    return kExitValidation;
  }

  json command = json::object();
  command["argv"] = std::vector<std::string>(argv + 1, argv + argc);
  std::vector<std::string> notes = {window_note()};

  try {
    if (*build) {
      std::vector<std::string> params = common.params;
      if (!alpha.empty()) params.push_back("alpha=" + alpha);
      if (k != 0) params.push_back("k=" + std::to_string(k));
      if (n != 0) params.push_back("n=" + std::to_string(n));
      SurfaceHandle h;
      check(flatsing_surface_build(name.c_str(), fixture_params(params, common.window).dump().c_str(), &h.p));
      CString doc, val;
      int ok = 0;
      check(flatsing_surface_json(h.p, &doc.p));
      check(flatsing_validate(h.p, sample_budget, &val.p, &ok));
      write_file(out_path.empty() ? name + ".surface.json" : out_path, doc.str());
      emit(common, report(command, {digest(h)}, val.str(), notes));
      if (!ok) {
        std::cerr << "flatsing: validation failed\n";
        return kExitValidation;
      }
      return kExitOk;
    }

    SurfaceHandle h;
    load(common, h);
    std::vector<std::string> digests = {digest(h)};
    json opts = json::object();
    if (!anchor.empty()) opts["anchor"] = anchor;
    if (!seed.empty()) opts["seed"] = seed;
    if (!dir.empty()) opts["dir"] = dir_arg(dir);
    if (!corner.empty()) opts["corner"] = corner_arg(corner);
    if (!point.empty()) opts["point"] = {{"cell", cell}, {"position", dir_arg(point)}};
    opts["angle_budget"] = angle_budget;
    opts["radius_floor"] = radius_floor;

    CString result, svg;
    char** svg_slot = common.svg_out.empty() ? nullptr : &svg.p;
    flatsing_status st = FLATSING_OK;
    if (*trace) {
      opts["budget"] = budget;
      notes.push_back("length budget " + number(budget));
      st = flatsing_trace(h.p, opts.dump().c_str(), &result.p, svg_slot);
    } else if (*sweep) {
      notes.push_back("angle budget " + number(angle_budget) + " pi, radius floor " + number(radius_floor));
      st = flatsing_sweep(h.p, opts.dump().c_str(), &result.p, svg_slot);
    } else if (*classify) {
      opts["epsilon"] = rational_arg(epsilon);
      notes.push_back("angle budget " + number(angle_budget) + " pi, radius floor " + number(radius_floor));
      st = flatsing_classify(h.p, opts.dump().c_str(), &result.p);
    } else if (*saddles) {
      opts["max_length"] = rational_arg(max_length);
      st = flatsing_saddles(h.p, opts.dump().c_str(), &result.p);
    } else if (*equiv) {
      SurfaceHandle hb;
      Common other;
      other.surface = surface_b;
      other.fixture = fixture_b;
      other.params = params_b;
      other.window = common.window;
      load(other, hb);
      digests.push_back(digest(hb));
      if (!anchor.empty()) opts["anchor_a"] = anchor;
      if (!anchor_b.empty()) opts["anchor_b"] = anchor_b;
      opts["epsilon"] = rational_arg(epsilon);
      opts["tolerance"] = std::strtod(tolerance.c_str(), nullptr);
      st = flatsing_equivalence(h.p, hb.p, opts.dump().c_str(), &result.p);
    }

    if (st != FLATSING_OK) {
      std::string msg = flatsing_last_error();
      if (!budget_status(st)) throw Failure{st, msg};
      notes.push_back("stopped early: " + msg);
      json err = {{"error", flatsing_status_name(st)}, {"message", msg}, {"partial", true}};
      emit(common, report(command, digests, err.dump(2), notes));
      return kExitBudget;
    }
    if (!common.svg_out.empty()) write_file(common.svg_out, svg.str());
    const bool cut = partial(result.str());
    if (cut) notes.push_back("budget or window exhausted; results are partial");
    emit(common, report(command, digests, result.str(), notes));
    return cut ? kExitBudget : kExitOk;
  } catch (const Failure& f) {
    std::cerr << "flatsing: " << f.message << "\n";
    if (budget_status(f.status)) return kExitBudget;
    return f.status == FLATSING_E_INTERNAL ? 1 : kExitValidation;
  }
}
