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

#include "vwb/sampling.hpp"

#include <algorithm>

#include "vwb/errors.hpp"

namespace vwb {

NeighborhoodSchedule NeighborhoodSchedule::defaults(Backend b) {
  NeighborhoodSchedule s;
  if (b == Backend::floating) {
    s.depth = 20;
    return s.to_float();
  }
  return s;
}

void NeighborhoodSchedule::validate() const {
  if (!r0.is_finite() || r0.sign() <= 0) throw ValidationError("schedule r0 must be positive");
  if (!shrink.is_finite() || shrink.sign() <= 0 || shrink >= Real(1)) {
    throw ValidationError("schedule shrink must lie in (0,1)");
  }
  if (depth < 1) throw ValidationError("schedule depth must be positive");
}

std::vector<Real> NeighborhoodSchedule::radii() const {
  validate();
  std::vector<Real> out;
  Real r = r0;
  for (int k = 0; k < depth; ++k) {
    out.push_back(r);
    r *= shrink;
  }
  return out;
}

NeighborhoodSchedule NeighborhoodSchedule::to_float() const {
  return {r0.to_float(), shrink.to_float(), depth};
}

std::string to_string(SamplingMode m) {
  return m == SamplingMode::uniform ? "uniform" : "dyadic-refined";
}

SamplingMode sampling_mode_from_string(const std::string& s) {
  if (s == "uniform") return SamplingMode::uniform;
  if (s == "dyadic-refined" || s == "dyadic") return SamplingMode::dyadic_refined;
  throw ValidationError("unknown sampling mode '" + s + "'");
}

int GridSpec::count(std::size_t axis) const {
  if (counts.empty()) return 3;
  return counts[std::min(axis, counts.size() - 1)];
}

void GridSpec::validate() const {
  for (int c : counts) {
    if (c < 3) throw ValidationError("grid sample count must be at least 3 per axis");
  }
}

GridSpec GridSpec::refined() const {
  GridSpec g = *this;
  for (int& c : g.counts) c = 2 * c + 1;
  return g;
}

std::vector<Real> ball_offsets(const Real& r, int n, SamplingMode mode) {
  std::vector<Real> out;
  if (mode == SamplingMode::uniform) {
    for (int i = 1; i <= n; ++i) out.push_back(r * (Real::rational(2L * i, n + 1) - Real(1)));
    return out;
  }
  int level = 0;
  while ((2L << level) <= n + 1) ++level;  // level = floor(log2(n+1))
  level = std::max(1, level - 1);
  const long m = 1L << level;
  for (const Real& scale : {r, r * r}) {
    if (scale >= r && !out.empty()) break;  // no inner shell when r >= 1
    for (long i = -(m - 1); i <= m - 1; ++i) out.push_back(scale * Real::rational(i, m));
  }
  return out;
}

std::vector<Real> ball_samples(const Real& c, const Real& r, const GridSpec& grid, std::size_t axis,
                               const std::vector<Real>& extra) {
  std::vector<Real> out;
  Real rr = c.is_exact() ? r : r.to_float();
  for (const Real& o : ball_offsets(rr, grid.count(axis), grid.mode)) out.push_back(c + o);
  for (const Real& e : extra) {
    if (c - rr < e && e < c + rr) out.push_back(e);
  }
  sort_unique(out);
  return out;
}

std::string to_string(ModulusVerdict v) {
  switch (v) {
    case ModulusVerdict::regular: return "regular";
    case ModulusVerdict::irregular: return "irregular";
    case ModulusVerdict::inconclusive: return "inconclusive";
  }
  return "inconclusive";
}

ModulusVerdict classify_trace(const Trace& trace, double tol) {
  const std::size_t n = trace.size();
  if (n >= 3) {
    const Real& a = trace[n - 3].value;
    const Real& b = trace[n - 2].value;
    const Real& c = trace[n - 1].value;
    if (a.is_pos_inf() && b.is_pos_inf() && c.is_pos_inf()) return ModulusVerdict::irregular;
    const Real growth = Real::rational(3, 2);
    auto grows = [&](const Real& from, const Real& to) {
      if (to.is_pos_inf()) return !from.is_pos_inf();
      return from.is_finite() && from.sign() > 0 && to >= growth * from;
    };
    if (grows(a, b) && grows(b, c) && c > Real(1000)) return ModulusVerdict::irregular;
  }
  if (n >= 2 && approx_equal(trace[n - 2].value, trace[n - 1].value, tol) && trace[n - 1].value.is_finite()) {
    return ModulusVerdict::regular;
  }
  return ModulusVerdict::inconclusive;
}

std::string to_string(Verdict v) {
  switch (v) {
    case Verdict::holds: return "holds";
    case Verdict::violated: return "violated";
    case Verdict::inconclusive: return "inconclusive";
    case Verdict::inconclusive_pass: return "inconclusive-pass";
  }
  return "inconclusive";
}

void sort_unique(std::vector<Real>& v) {
  std::sort(v.begin(), v.end());
  v.erase(std::unique(v.begin(), v.end()), v.end());
}

}  // namespace vwb
