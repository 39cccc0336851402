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

#include <map>
#include <optional>
#include <string>
#include <vector>

#include "flatsing/singularity.hpp"

namespace flatsing {

/// x in source cell c goes to matrix * x + offsets[c] in target cell
/// correspondence[c]. Edges correspond by side and index.
class AffineMap {
 public:
  /// Checks the map against an existing target on the instantiated edges.
  AffineMap(SurfacePtr source, SurfacePtr target, Matrix2 matrix, std::map<int, int> correspondence,
            std::map<int, Vec2> offsets);

  const SurfacePtr& source() const { return source_; }
  const SurfacePtr& target() const { return target_; }
  const Matrix2& matrix() const { return matrix_; }
  const std::map<int, int>& correspondence() const { return corr_; }
  const std::map<int, Vec2>& offsets() const { return offsets_; }

  int target_cell(int cell) const;
  Vec2 offset(int cell) const;
  SurfacePoint apply(const SurfacePoint& p) const;
  CornerKey apply(const CornerKey& k) const;
  /// Anchor label in the target for an anchor of the source.
  std::string apply_anchor(const std::string& label) const;

 private:
  SurfacePtr source_;
  SurfacePtr target_;
  Matrix2 matrix_;
  std::map<int, int> corr_;
  std::map<int, Vec2> offsets_;
};

/// Target built from the source cells moved by the map; the identity
/// correspondence when none is given.
AffineMap affine_image(SurfacePtr source, const Matrix2& matrix, std::map<int, int> correspondence = {},
                       std::map<int, Vec2> offsets = {});

/// g after f; f's target must be g's source.
AffineMap compose(const AffineMap& g, const AffineMap& f);

Direction normalized_action(const Matrix2& a, const Direction& theta);

LinearApproach pushforward(const AffineMap& f, const LinearApproach& a);

/// Continuous lift of the circle map induced by a matrix.
class CircleLift {
 public:
  CircleLift(Matrix2 a, double t0, double s0);
  double t0() const { return t0_; }
  double s0() const { return s0_; }
  double operator()(double t) const;

 private:
  Matrix2 a_;
  double t0_;
  double s0_;
  double m_[4];
};

/// Requires exp(i s0) to be the direction of a exp(i t0).
CircleLift lift_map(const Matrix2& a, double t0, double s0);

/// Chart map of f_* between a component and the component of the image seed.
class ComponentAction {
 public:
  ComponentAction(const AffineMap& f, const RotationalComponent& source, const RotationalComponent& target);
  const CircleLift& lift() const { return lift_; }
  /// Target chart coordinate of a source chart coordinate.
  double operator()(double theta) const;
  /// Image approach read through the target chart.
  LinearApproach image(double theta) const;
  bool in_source(double theta) const { return src_.contains(theta); }
  bool in_target(double theta) const { return tgt_.contains(theta); }

 private:
  CircleLift lift_;
  ComponentChart src_;
  ComponentChart tgt_;
};

ComponentAction component_action(const AffineMap& f, const RotationalComponent& source,
                                 const RotationalComponent& target);

enum class ElementType { kParabolic, kElliptic, kHyperbolic };
const char* element_type_name(ElementType t);

struct ElementClass {
  ElementType type = ElementType::kParabolic;
  /// Elliptic only; nullopt means undecided.
  std::optional<bool> torsion;
  /// Elliptic rotation angle, exact when a rational multiple of pi.
  std::optional<Angle> rotation;
  Rational trace;
};

ElementClass classify_element(const Matrix2& a);

struct DirectionLattice {
  /// Offset t in [0, pi) of the lattice pi Z + t.
  double offset = 0;
  /// Exact eigendirection when rational.
  std::optional<Vec2> direction;
};

/// Fixed directions of the lift as lattices pi Z + t; empty for elliptic.
std::vector<DirectionLattice> fixed_direction_lattice(const Matrix2& a);

}  // namespace flatsing
