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

// Independent reference computations for tests. Plain doubles and brute
// force only; nothing here calls into the library.

#pragma once

#include <algorithm>
#include <cmath>
#include <limits>
#include <vector>

#include <gmpxx.h>

namespace oracles {

// Distance from (t, 0) to the nearest chord-chain vertex (2^n, +-4^n).
inline double parabola_vertex_distance(double t) {
  double best = std::numeric_limits<double>::infinity();
  for (int n = -70; n <= 70; ++n) {
    const double x = std::ldexp(1.0, n);
    const double y = std::ldexp(1.0, 2 * n);
    best = std::min(best, std::hypot(t - x, y));
  }
  return best;
}

// Gaps between consecutive slit vertices of the geometric series surface,
// enumerated from partial sums of alpha^n, kept when in [floor, eps].
inline std::vector<double> geometric_series_lengths(const mpq_class& alpha, double eps, double floor) {
  std::vector<mpq_class> marks = {0};
  mpq_class term = alpha, sum = 0;
  for (int n = 1; n < 200; ++n) {
    sum += term;
    marks.push_back(sum);
    term *= alpha;
  }
  std::vector<double> out;
  for (std::size_t i = 1; i < marks.size(); ++i) {
    const double gap = mpq_class(marks[i] - marks[i - 1]).get_d();
    if (gap <= eps && gap >= floor) out.push_back(gap);
  }
  std::sort(out.begin(), out.end());
  out.erase(std::unique(out.begin(), out.end()), out.end());
  return out;
}

// Chord of a unit wedge of opening phi.
inline double unit_chord(double phi) { return 2 * std::sin(phi / 2); }

// Planar torus distance between two points of [0,1)^2.
inline double torus_distance(double x0, double y0, double x1, double y1) {
  double best = std::numeric_limits<double>::infinity();
  for (int i = -1; i <= 1; ++i) {
    for (int j = -1; j <= 1; ++j) best = std::min(best, std::hypot(x1 + i - x0, y1 + j - y0));
  }
  return best;
}

}  // namespace oracles
