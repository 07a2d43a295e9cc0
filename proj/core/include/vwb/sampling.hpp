// Copyright 2026 The vwb Authors
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//     http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#ifndef VWB_SAMPLING_HPP_
#define VWB_SAMPLING_HPP_

#include <cstddef>
#include <string>
#include <vector>

#include "vwb/numeric.hpp"

namespace vwb {

// Radii r0 * shrink^k, k = 0..depth-1.
struct NeighborhoodSchedule {
  Real r0 = Real(1);
  Real shrink = Real::rational(1, 2);
  int depth = 8;

  static NeighborhoodSchedule defaults(Backend b);
  void validate() const;  // throws ValidationError
  std::vector<Real> radii() const;
  NeighborhoodSchedule to_float() const;
};

enum class SamplingMode { uniform, dyadic_refined };
std::string to_string(SamplingMode m);
SamplingMode sampling_mode_from_string(const std::string& s);

struct GridSpec {
  std::vector<int> counts{3};  // per axis; the last entry repeats
  SamplingMode mode = SamplingMode::dyadic_refined;

  int count(std::size_t axis) const;
  void validate() const;  // each count >= 3
  // Doubles the resolution; every sample of *this is also a sample of the result
  // in dyadic-refined mode.
  GridSpec refined() const;
};

// Offsets in (-r, r) for n samples per axis.
//  uniform:        r * (2i/(n+1) - 1), i = 1..n
//  dyadic-refined: r * i / 2^L, |i| < 2^L, L = floor(log2(n+1)) - 1, plus the
//                  same pattern scaled by r (an inner shell at scale r^2).
std::vector<Real> ball_offsets(const Real& r, int n, SamplingMode mode);

// Sorted, de-duplicated samples of the open ball B(c, r) along one axis,
// including every extra point that lies in the ball.
std::vector<Real> ball_samples(const Real& c, const Real& r, const GridSpec& grid, std::size_t axis,
                               const std::vector<Real>& extra = {});

struct TracePoint {
  Real radius;
  Real value;
};
using Trace = std::vector<TracePoint>;

enum class ModulusVerdict { regular, irregular, inconclusive };
std::string to_string(ModulusVerdict v);

// Divergence: the last three entries are +inf, or each grows by >= 1.5x over
// its predecessor and the last exceeds 1e3. Convergence: the last two entries
// agree (exactly in rational mode, within tol otherwise).
ModulusVerdict classify_trace(const Trace& trace, double tol = kFloatTolerance);

enum class Verdict { holds, violated, inconclusive, inconclusive_pass };
std::string to_string(Verdict v);

void sort_unique(std::vector<Real>& v);

}  // namespace vwb

#endif  // VWB_SAMPLING_HPP_
