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

#pragma once

#include <string>
#include <vector>

#include "flatsing/surface.hpp"

namespace flatsing {

inline constexpr long long kDefaultWindow = 64;

/// Unit square centred at the origin; each side split into pieces of
/// relative length (1 - alpha) alpha^k, opposite sides reversed and glued.
SurfacePtr chamanara(const Rational& alpha, long long window = kDefaultWindow);
/// Plane slit along [0, alpha / (1 - alpha)]; I_n on the lower side glued to
/// J_n on the upper side, both of length alpha^(n+1).
SurfacePtr geometric_series(const Rational& alpha, long long window = kDefaultWindow);
/// Two regions bounded by chord chains through (+-2^n, +-4^n).
SurfacePtr double_parabola(long long window = kDefaultWindow);
/// 2k half-planes glued cyclically around the origin.
SurfacePtr cone(int k);
/// Half-planes glued in a line, truncated at +-window.
SurfacePtr infinite_helicoid(long long window = kDefaultWindow);
SurfacePtr square_torus();
SurfacePtr two_square_genus2();
/// Degree n cyclic cover of the punctured plane; sheet j is cells 2j, 2j+1.
SurfacePtr finite_cyclic_cover(int n);

std::vector<std::string> fixture_names();
/// Builds a fixture from a JSON object of parameters such as
/// {"alpha": "1/2", "window": 64} or {"k": 3}.
SurfacePtr build_fixture(const std::string& name, const std::string& params_json);

/// Named seed approach of a fixture: a corner and an outgoing direction.
struct NamedSeed {
  std::string name;
  CornerKey corner;
  Vec2 dir;
};
std::vector<NamedSeed> fixture_seeds(const Surface& s);
NamedSeed fixture_seed(const Surface& s, const std::string& name);

}  // namespace flatsing
