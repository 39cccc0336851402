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
#include <vector>

#include "flatsing/disk.hpp"

namespace flatsing {

inline constexpr double kDefaultAngleBudget = 20 * kPi;
inline constexpr double kDefaultRadiusFloor = 1e-8;

enum class EndStatus { kClosed, kBoundary, kBudgetCapped, kWindowLimited };
enum class ComponentKind {
  kCircle,
  kClosedInterval,
  kSingleton,
  kHalfOpenSpire,
  kDoubleSpireCandidate,
  kIncomplete,
};

const char* end_status_name(EndStatus s);
const char* component_kind_name(ComponentKind k);

struct RatioSample {
  double t = 0;
  double ratio = 0;  // r(gamma(t)) / t
  double offset = 0; // angle between the sampled ray and the boundary ray
};

/// Evidence that rays approaching a boundary direction lose their
/// embedded neighbourhoods.
struct BoundaryCertificate {
  Vec2 direction;
  std::string obstruction;  // horizontal, vertical or "slope p/q"
  std::vector<RatioSample> samples;
  /// Lengths of connections along the boundary direction, shrinking.
  std::vector<double> connection_lengths;
  bool reached_floor = false;
};

struct SweepSide {
  EndStatus status = EndStatus::kBoundary;
  Angle extent;
  /// Corners unrolled beyond the seed corner, in sweep order.
  std::vector<CornerKey> corners;
  std::optional<BoundaryCertificate> certificate;
  std::string detail;
};

struct RhoSample {
  double theta = 0;  // lifted angle
  double rho = 0;    // embedded radius relative to the distance from the apex
};

struct RotationalComponent {
  LinearApproach seed;
  /// Lifted angle of the seed direction; the chart is theta -> exp(i theta).
  double t0 = 0;
  /// Angle from the seed wedge's first ray to the seed direction.
  Angle seed_offset;
  SweepSide ccw;
  SweepSide cw;
  ComponentKind kind = ComponentKind::kIncomplete;
  Angle length;
  std::vector<RhoSample> rho;
  /// Smallest corner of the chain of wedges, within the window.
  CornerKey chain_id;

  double theta_minus() const { return t0 - cw.extent.value; }
  double theta_plus() const { return t0 + ccw.extent.value; }
};

struct SweepOptions {
  double angle_budget = kDefaultAngleBudget;
  double radius_floor = kDefaultRadiusFloor;
  /// Number of wedges sampled for the radius profile.
  int rho_samples = 8;
  bool certificates = true;
};

RotationalComponent sweep(const Surface& s, const LinearApproach& seed, const SweepOptions& opts = {});

struct BoundaryWitness {
  double m = 0;
  double t = 0;
  double ratio = 0;
};

struct BoundaryTest {
  bool boundary = false;
  std::vector<BoundaryWitness> witnesses;
  std::vector<RatioSample> samples;
  /// Smallest sampled ratio; a lower bound certificate when not boundary.
  double min_ratio = 0;
};

/// Boundary when for every M some sampled t has r(gamma(t)) < M t.
BoundaryTest boundary_test(const Surface& s, const LinearApproach& a, const std::vector<double>& m_schedule,
                           const std::vector<double>& t_schedule);

/// Maps lifted angles of a component to approaches.
class ComponentChart {
 public:
  ComponentChart(const Surface& s, const RotationalComponent& c, double t0);
  double t0() const { return t0_; }
  bool contains(double theta) const;
  LinearApproach operator()(double theta) const;

 private:
  const Surface* s_;
  RotationalComponent c_;
  double t0_;
};

ComponentChart component_chart(const Surface& s, const RotationalComponent& c, double t0);

/// Chain identifier of the wedge containing an approach.
CornerKey chain_id(const Surface& s, const CornerKey& corner, std::size_t max_steps = 4096);

struct ComponentSummary {
  CornerKey chain;
  LinearApproach seed;
};

/// Distinct components met by seeds in every principal wedge and in the
/// wedges where connections no longer than eps start. One seed per wedge.
std::vector<ComponentSummary> seed_components(const Surface& s, const std::string& anchor,
                                              double eps = 0, std::size_t corner_limit = 64,
                                              std::size_t node_cap = kDefaultNodeCap);

enum class SingularityTag { kConePoint, kInfiniteAngle, kWild, kFlatViolation };
const char* singularity_tag_name(SingularityTag t);

struct SingularityClass {
  SingularityTag tag = SingularityTag::kWild;
  std::optional<Angle> total_angle;
  /// Distinct lengths of connections no longer than eps, increasing.
  std::vector<double> connection_lengths;
  std::size_t components = 0;
  RotationalComponent sweep;
  std::string evidence;
};

struct ClassifyOptions {
  SweepOptions sweep;
  std::size_t corner_limit = 8;
  /// Disk nodes shared by the corners in the connection search.
  std::size_t node_cap = 16000;
};

SingularityClass classify(const Surface& s, const std::string& anchor, double eps,
                          const ClassifyOptions& opts = {});

/// Compact completion whose every anchor is a cone point.
bool finite_affine_type(const Surface& s, double eps);

/// Seed approach for an anchor: the middle principal corner, middle of its
/// wedge.
LinearApproach default_seed(const Surface& s, const std::string& anchor, double delta);

}  // namespace flatsing
