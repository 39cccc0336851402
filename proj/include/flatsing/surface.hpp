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

#include <compare>
#include <map>
#include <memory>
#include <optional>
#include <string>
#include <vector>

#include "flatsing/error.hpp"
#include "flatsing/side.hpp"

namespace flatsing {

struct EdgeRef {
  int cell = 0;
  int side = 0;
  long long index = 0;

  friend auto operator<=>(const EdgeRef&, const EdgeRef&) = default;
};

std::string to_string(const EdgeRef& e);

/// A corner is keyed by its outgoing edge, or by the side whose start
/// accumulates at the corner when there is no outgoing edge.
struct CornerKey {
  int cell = 0;
  int side = 0;
  std::optional<long long> index;

  friend auto operator<=>(const CornerKey&, const CornerKey&) = default;
};

std::string to_string(const CornerKey& k);

/// Interior angle of a cell at one vertex. Directions in the wedge run
/// counter-clockwise from start_dir (along the outgoing edge) to end_dir
/// (back along the incoming edge). start_dir belongs to the wedge only when
/// an outgoing edge exists; end_dir never does.
struct Corner {
  CornerKey key;
  Vec2 vertex;
  std::optional<EdgeRef> in;
  std::optional<EdgeRef> out;
  Vec2 start_dir;
  Vec2 end_dir;
  Angle angle;
  bool cusp = false;

  bool contains(const Vec2& w) const;
  /// Lifted angle of w measured from start_dir, in [0, 2pi).
  double offset_of(const Vec2& w) const;
};

struct Cell {
  std::vector<std::shared_ptr<const Side>> sides;
  /// Side whose start meets the finish of side i, or -1 at infinity.
  std::vector<int> next_side;
  /// The junction after side i is a cusp (zero interior angle).
  std::vector<bool> cusp;
  /// Sides left unglued because the construction is truncated by its window.
  std::vector<bool> window_edge;
  /// The walk encloses the outside of a slit or polygon, not its inside.
  bool exterior = false;

  bool bounded() const;
};

struct GluingRule {
  int cell_a = 0;
  int side_a = 0;
  int cell_b = 0;
  int side_b = 0;
};

/// Every corner of the surface is assigned to label when set.
struct SingularityDeclaration {
  std::string label;
  bool all_vertices = true;
};

struct Anchor {
  std::string label;
  /// Principal corners: all corners for finite surfaces, junction corners
  /// otherwise.
  std::vector<CornerKey> corners;
  /// Total angle of the corner cycle when it closes.
  std::optional<Angle> total_angle;
  bool declared = false;
};

struct SurfacePoint {
  int cell = 0;
  Vec2 position;
  std::optional<EdgeRef> edge;
};

struct BoundaryHit {
  EdgeRef edge;
  SideHit hit;
};

struct ValidationCheck {
  std::string name;
  bool passed = true;
  std::string detail;
};

struct ValidationReport {
  std::vector<ValidationCheck> checks;
  std::map<std::string, double> isolation;  // anchor label -> epsilon estimate
  bool ok() const;
};

struct Crossing {
  EdgeRef from;
  EdgeRef to;
  Vec2 translation;
};

class Surface {
 public:
  Surface(std::string name, std::string params_json, std::vector<Cell> cells,
          std::vector<GluingRule> rules, std::vector<SingularityDeclaration> declarations);

  const std::string& name() const { return name_; }
  const std::string& params_json() const { return params_; }
  const std::vector<Cell>& cells() const { return cells_; }
  const Cell& cell(int i) const;
  const Side& side(int cell, int side) const;
  const std::vector<GluingRule>& rules() const { return rules_; }
  const std::vector<SingularityDeclaration>& declarations() const { return declarations_; }

  bool compact() const;
  /// Area of a compact surface; nullopt means infinite.
  std::optional<Rational> area() const;
  /// True when every side is a finite polyline or ray.
  bool finite_combinatorics() const;

  Segment segment(const EdgeRef& e) const;
  EdgeRef partner(const EdgeRef& e) const;
  /// Translation carrying e onto its partner.
  Vec2 translation(const EdgeRef& e) const;
  int prev_side(int cell, int side) const;

  Corner corner(const CornerKey& k) const;
  Corner corner_with_in(const EdgeRef& e) const;
  /// Counter-clockwise neighbour across the incoming edge.
  std::optional<Corner> ccw_next(const Corner& c) const;
  /// Clockwise neighbour across the outgoing edge.
  std::optional<Corner> cw_next(const Corner& c) const;
  /// Walks around the vertex until a wedge contains w; nullopt when none.
  std::optional<Corner> resolve_wedge(const Corner& c, const Vec2& w) const;
  /// Corner at the vertex reported by a hit.
  Corner corner_at(const BoundaryHit& h) const;

  const std::vector<Anchor>& anchors() const { return anchors_; }
  const Anchor& anchor(const std::string& label) const;
  /// Anchor of a corner, or nullopt for a regular (flat) vertex.
  std::optional<std::string> anchor_label(const CornerKey& k) const;

  /// First boundary hit strictly ahead of o in direction v within a cell.
  std::optional<BoundaryHit> locate(int cell, const Vec2& o, const Vec2& v) const;

  SurfacePoint canonical(const SurfacePoint& p) const;
  /// Moves an edge point into the partner cell.
  SurfacePoint cross_edge(const SurfacePoint& p, const Vec2& dir) const;
  /// Cumulative offsets for a chain of crossings starting in cell start.
  std::vector<Vec2> develop(int start, const std::vector<EdgeRef>& prefix) const;

  /// All corners of a finite surface in key order.
  std::vector<CornerKey> all_corners() const;
  /// Corners met while walking around an anchor in the window, limited.
  std::vector<CornerKey> anchor_corners(const std::string& label, std::size_t limit) const;

 private:
  void identify_anchors();

  std::string name_;
  std::string params_;
  std::vector<Cell> cells_;
  std::vector<GluingRule> rules_;
  std::vector<SingularityDeclaration> declarations_;
  std::vector<std::vector<int>> prev_side_;
  std::map<std::pair<int, int>, std::pair<int, int>> pairing_;
  std::vector<Anchor> anchors_;
  std::map<CornerKey, int> corner_anchor_;  // finite surfaces only; -1 = regular
};

using SurfacePtr = std::shared_ptr<const Surface>;

ValidationReport validate_surface(const Surface& s, int sample_budget);

/// Anchors with declarations merged in; throws UnresolvedIdentification when
/// a corner walk leaves the window without a declaration.
std::vector<Anchor> anchor_identify(const Surface& s);

/// Default instantiation cap, overridden by FLATSING_WINDOW_CAP.
long long window_cap();

}  // namespace flatsing
