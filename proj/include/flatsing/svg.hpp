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

#include <optional>
#include <string>

#include "flatsing/singularity.hpp"

namespace flatsing {

struct Viewport {
  double xmin = -1;
  double ymin = -1;
  double xmax = 1;
  double ymax = 1;
};

struct SvgOptions {
  /// Fitted to the drawn path when unset; unbounded cells are clipped to it.
  std::optional<Viewport> viewport;
  int width = 640;
};

/// Developed path over the outlines of the cells it visits.
std::string render_path_svg(const Surface& s, const GeodesicPath& p, const SvgOptions& opts = {});

/// Swept fan of a component, one ring per turn, with the seed ray.
std::string render_sweep_svg(const RotationalComponent& c, const SvgOptions& opts = {});

}  // namespace flatsing
