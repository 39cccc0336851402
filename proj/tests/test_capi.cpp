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


// Exercises the shared library through its C interface only.

#include <doctest.h>

#include <json.hpp>
#include <string>

#include "flatsing/flatsing.h"

namespace {

struct Owned {
  char* p = nullptr;
  ~Owned() { flatsing_string_free(p); }
  nlohmann::json json() const { return nlohmann::json::parse(p); }
};

struct Handle {
  flatsing_surface* s = nullptr;
  ~Handle() { flatsing_surface_free(s); }
};

}  // namespace

TEST_CASE("build, validate and digest through the C interface") {
  Handle h;
  REQUIRE(flatsing_surface_build("chamanara", R"({"alpha":"1/2"})", &h.s) == FLATSING_OK);
  Owned report;
  int ok = 0;
  REQUIRE(flatsing_validate(h.s, 20, &report.p, &ok) == FLATSING_OK);
  CHECK(ok == 1);
  Owned digest;
  REQUIRE(flatsing_surface_digest(h.s, &digest.p) == FLATSING_OK);
  CHECK(std::string(digest.p).size() == 16);

  Owned doc;
  REQUIRE(flatsing_surface_json(h.s, &doc.p) == FLATSING_OK);
  Handle again;
  REQUIRE(flatsing_surface_load(doc.p, &again.s) == FLATSING_OK);
  Owned digest2;
  REQUIRE(flatsing_surface_digest(again.s, &digest2.p) == FLATSING_OK);
  CHECK(std::string(digest.p) == digest2.p);
}

TEST_CASE("errors map to status codes") {
  Handle h;
  CHECK(flatsing_surface_build("chamanara", R"({"alpha":"2"})", &h.s) == FLATSING_E_INVALID_ARGUMENT);
  CHECK(std::string(flatsing_last_error()).rfind("InvalidArgument", 0) == 0);
  CHECK(flatsing_surface_build("cone", "not json", &h.s) == FLATSING_E_INVALID_ARGUMENT);
  CHECK(flatsing_surface_load("{}", &h.s) != FLATSING_OK);
  CHECK(std::string(flatsing_status_name(FLATSING_E_AMBIGUOUS_WEDGE)) == "AmbiguousWedge");
  CHECK(std::string(flatsing_status_name(FLATSING_E_ISOLATION_VIOLATED)) == "IsolationViolated");
  Owned out;
  CHECK(flatsing_classify(nullptr, "{}", &out.p) == FLATSING_E_INVALID_ARGUMENT);
}

TEST_CASE("classify, sweep and trace results") {
  Handle h;
  REQUIRE(flatsing_surface_build("cone", R"({"k":3})", &h.s) == FLATSING_OK);
  Owned c;
  REQUIRE(flatsing_classify(h.s, R"({"epsilon":"1/4"})", &c.p) == FLATSING_OK);
  CHECK(c.json()["tag"] == "ConePoint");
  CHECK(c.json()["partial"] == false);

  Owned sw, svg;
  REQUIRE(flatsing_sweep(h.s, R"({"seed":"sheet0"})", &sw.p, &svg.p) == FLATSING_OK);
  CHECK(sw.json()["kind"] == "Circle");
  CHECK(std::string(svg.p).rfind("<svg", 0) == 0);

  Owned tr;
  REQUIRE(flatsing_trace(h.s, R"({"corner":[0,1,0],"dir":["1","1"],"budget":2})", &tr.p, nullptr) == FLATSING_OK);
  CHECK(tr.json()["termination"] == "Escaped");
  Owned bad;
  CHECK(flatsing_trace(h.s, R"({"anchor":"x","dir":["1","1"]})", &bad.p, nullptr) == FLATSING_E_AMBIGUOUS_WEDGE);
}

TEST_CASE("equivalence and saddles through the C interface") {
  Handle a, b;
  REQUIRE(flatsing_surface_build("geometric_series", R"({"alpha":"1/2"})", &a.s) == FLATSING_OK);
  REQUIRE(flatsing_surface_build("geometric_series", R"({"alpha":"1/3"})", &b.s) == FLATSING_OK);
  Owned e;
  REQUIRE(flatsing_equivalence(a.s, b.s, "{}", &e.p) == FLATSING_OK);
  CHECK(e.json()["verdict"] == "Inequivalent");
  Owned sc;
  REQUIRE(flatsing_saddles(a.s, R"({"max_length":"1/4"})", &sc.p) == FLATSING_OK);
  CHECK(sc.json()["complete"] == true);
  CHECK(!sc.json()["connections"].empty());
}
