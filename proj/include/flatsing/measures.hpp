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

#include "flatsing/singularity.hpp"

namespace flatsing {

struct TransversalSegment {
  int cell = 0;
  Vec2 a;
  Vec2 b;
  Direction theta;
};

/// Transversal checked to lie in one cell and to cross the direction.
TransversalSegment make_transversal(const Surface& s, int cell, const Vec2& a, const Vec2& b,
                                    const Direction& theta);

/// Width of the segment across the direction.
double nu_measure(const TransversalSegment& sigma);

/// Germs of direction theta leaving every point of a segment.
struct StripFamily {
  TransversalSegment sigma;
};

/// Finitely many germs sharing a direction.
struct GermFamily {
  std::vector<LinearApproach> germs;
};

double mu_theta(const StripFamily& b, const std::vector<TransversalSegment>& transversals);
double mu_theta(const Surface& s, const GermFamily& b, const std::vector<TransversalSegment>& transversals);

struct Compatibility {
  double nu = 0;
  double mu = 0;
  bool equal = false;
};

Compatibility check_compatibility(const TransversalSegment& sigma, double tolerance = 1e-12);

struct DistanceSample {
  double t = 0;
  double u = 0;
  std::optional<double> value;
};

struct LimsupEstimate {
  std::vector<DistanceSample> samples;
  double estimate = 0;
  std::size_t skipped = 0;
  /// increasing, decreasing or stable over the tail.
  std::string trend;
};

LimsupEstimate alexandrov_distance(const Surface& s, const LinearApproach& a1, double s1, const LinearApproach& a2,
                                   double s2, const std::vector<double>& t_schedule);

LimsupEstimate upper_angle(const Surface& s, const LinearApproach& a1, const LinearApproach& a2,
                           const std::vector<double>& t_schedule);

enum class Verdict { kEquivalent, kInequivalent, kInconclusive };
const char* verdict_name(Verdict v);

struct SpectrumEntry {
  Vec2 direction;  // primitive holonomy
  double length = 0;
  /// Index of the reverse connection in the same spectrum.
  std::optional<std::size_t> partner;
};

struct ComponentSketch {
  Vec2 seed_dir;
  ComponentKind kind = ComponentKind::kIncomplete;
  double length = 0;
  EndStatus ccw = EndStatus::kBoundary;
  EndStatus cw = EndStatus::kBoundary;
};

struct MeasureCheck {
  Vec2 direction;
  double mu_x = 0;
  double mu_y = 0;
  bool equal = true;
};

struct EquivalenceCertificate {
  double eps = 0;
  double tolerance = 0;
  std::vector<SpectrumEntry> spectrum_x;
  std::vector<SpectrumEntry> spectrum_y;
  std::vector<ComponentSketch> components_x;
  std::vector<ComponentSketch> components_y;
  std::vector<MeasureCheck> measures;
  Verdict verdict = Verdict::kInconclusive;
  /// spectrum or component for inequivalence, budget otherwise.
  std::string witness_kind;
  std::string witness;
};

struct EquivalenceOptions {
  std::size_t corner_limit = 32;
  std::size_t node_cap = kDefaultNodeCap;
  SweepOptions sweep;
};

EquivalenceCertificate neighborhood_equivalence(const Surface& x, const std::string& anchor_x, const Surface& y,
                                                const std::string& anchor_y, double eps, double tolerance = 1e-9,
                                                const EquivalenceOptions& opts = {});

}  // namespace flatsing
