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

#include <cstddef>
#include <functional>
#include <optional>
#include <string>
#include <vector>

#include "flatsing/tracer.hpp"

namespace flatsing {

inline constexpr std::size_t kDefaultNodeCap = 20000;

/// A copy of a cell in the development around a centre, seen through the
/// angular window [lo, hi] of lifted directions.
struct DiskNode {
  int cell = 0;
  Vec2 offset;
  double lo = 0;
  double hi = 0;
  double entry = 0;
  /// Line of the entry edge in local coordinates; only the far side counts.
  bool gated = false;
  DPoint gate;
  DPoint gate_normal;
};

struct DiskStats {
  bool complete = true;
  /// Everything closer than this was developed.
  double confidence_radius = 0;
  std::size_t nodes = 0;
};

/// Visitors may shrink the radius; copies beyond it are not developed.
using DiskVisitor = std::function<void(const DiskNode&, double& radius)>;

/// Best-first development of all cell copies meeting the radius-R disk
/// around the centre. The visitor sees each copy once per window.
DiskStats explore_disk(const Surface& s, const TraceStart& centre, double radius,
                       const DiskVisitor& visit, std::size_t node_cap = kDefaultNodeCap);

/// Exact position of the centre in its own cell.
Vec2 centre_position(const Surface& s, const TraceStart& centre);

/// Singular vertex lift seen from the centre: w is its developed
/// displacement, exact.
struct SingularLift {
  Vec2 w;
  double dist = 0;
};

std::vector<SingularLift> singular_lifts(const Surface& s, const TraceStart& centre, double radius,
                                         DiskStats* stats = nullptr,
                                         std::size_t node_cap = kDefaultNodeCap);

struct DiskEstimate {
  double value = 0;
  bool complete = true;
  double confidence_radius = 0;
};

/// Distance from p to the singular set, capped at cap.
DiskEstimate immersion_radius(const Surface& s, const SurfacePoint& p, double cap,
                              std::size_t node_cap = kDefaultNodeCap);

/// Length of the shortest straight segment from p to q within cap.
std::optional<double> straight_distance(const Surface& s, const SurfacePoint& p,
                                        const SurfacePoint& q, double cap,
                                        std::size_t node_cap = kDefaultNodeCap);

/// Distance between flat points, cap-limited: the shorter of a straight
/// segment and a path bending once at the nearest singularity.
std::optional<double> point_distance(const Surface& s, const SurfacePoint& p, const SurfacePoint& q,
                                     double cap, std::size_t node_cap = kDefaultNodeCap);

struct SaddleConnection {
  std::string start_anchor;
  std::string end_anchor;
  CornerKey start_corner;
  CornerKey end_corner;
  Vec2 holonomy;
  Rational length2;
  double length = 0;
};

struct SaddleConnectionList {
  std::vector<SaddleConnection> connections;
  bool complete = true;
  double confidence_radius = 0;
  std::size_t nodes = 0;
};

/// Connections of length at most max_length leaving the anchor, searched
/// from at most corner_limit of its corners. node_cap is shared by the
/// corners: each gets an even split of what the earlier ones left unused.
SaddleConnectionList saddle_connections(const Surface& s, const std::string& anchor,
                                        double max_length, std::size_t corner_limit = 64,
                                        std::size_t node_cap = kDefaultNodeCap);

/// Connections leaving one corner.
SaddleConnectionList corner_saddle_connections(const Surface& s, const CornerKey& corner,
                                               double max_length,
                                               std::size_t node_cap = kDefaultNodeCap);

/// True when the approach lasts beyond t and its point at arc length t lies
/// within distance r of x.
bool in_basis_set(const Surface& s, const LinearApproach& a, const SurfacePoint& x, double r,
                  double t);

}  // namespace flatsing
