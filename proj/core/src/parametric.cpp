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

#include "vwb/parametric.hpp"

#include <algorithm>

#include "vwb/errors.hpp"
#include "vwb/sampling.hpp"

namespace vwb {

Real Affine2::operator()(const Real& x, const Real& p) const {
  Real v = c;
  if (ax.sign() != 0) v += ax * x;
  if (ap.sign() != 0) v += ap * p;
  return v;
}

ParametricMultifunction::ParametricMultifunction(std::string name, Range x_domain, Range p_domain,
                                                 std::vector<ParamPiece> pieces)
    : name_(std::move(name)),
      x_domain_(std::move(x_domain)),
      p_domain_(std::move(p_domain)),
      pieces_(std::move(pieces)) {}

ParametricMultifunction ParametricMultifunction::lift(const PiecewiseMultifunction& f, const Real& coeff) {
  std::vector<ParamPiece> pieces;
  for (const Piece& pc : f.pieces()) {
    ParamPiece pp{pc.name, pc.domain, Range::all(), {}};
    for (const Band& b : pc.bands) {
      if (b.where && *b.where != pc.domain) {
        throw ValidationError(f.name() + ": restricted bands cannot be lifted");
      }
      ParamBand pb;
      for (const Affine& t : b.lo) pb.lo.push_back({t.a, coeff, t.b});
      for (const Affine& t : b.hi) pb.hi.push_back({t.a, coeff, t.b});
      pp.bands.push_back(std::move(pb));
    }
    pieces.push_back(std::move(pp));
  }
  return ParamMF(f.name(), f.domain(), Range::all(), std::move(pieces));
}

PiecewiseMultifunction ParametricMultifunction::slice_p(const Real& p) const {
  std::vector<Piece> out;
  for (const ParamPiece& pp : pieces_) {
    if (!pp.p.contains(p)) continue;
    Piece pc{pp.name, pp.x, {}};
    for (const ParamBand& b : pp.bands) {
      Band band;
      for (const Affine2& t : b.lo) band.lo.push_back(t.at_p(p));
      for (const Affine2& t : b.hi) band.hi.push_back(t.at_p(p));
      pc.bands.push_back(std::move(band));
    }
    out.push_back(std::move(pc));
  }
  return PMF(name_ + "(.," + p.str() + ")", x_domain_, std::move(out));
}

PiecewiseMultifunction ParametricMultifunction::slice_x(const Real& x) const {
  std::vector<Piece> out;
  for (const ParamPiece& pp : pieces_) {
    if (!pp.x.contains(x)) continue;
    Piece pc{pp.name, pp.p, {}};
    for (const ParamBand& b : pp.bands) {
      Band band;
      for (const Affine2& t : b.lo) band.lo.push_back(t.at_x(x));
      for (const Affine2& t : b.hi) band.hi.push_back(t.at_x(x));
      pc.bands.push_back(std::move(band));
    }
    out.push_back(std::move(pc));
  }
  return PMF(name_ + "(" + x.str() + ",.)", p_domain_, std::move(out));
}

IntervalSet ParametricMultifunction::image(const Real& x, const Real& p) const {
  if (!p_domain_.contains(p)) throw OutOfDomain(name_ + ": parameter " + p.str() + " outside domain");
  return slice_p(p).image(x);
}

std::vector<Real> ParametricMultifunction::p_breakpoints() const {
  std::vector<Real> out;
  for (const ParamPiece& pp : pieces_) {
    if (pp.p.lo.is_finite()) out.push_back(pp.p.lo);
    if (pp.p.hi.is_finite()) out.push_back(pp.p.hi);
  }
  sort_unique(out);
  return out;
}

void ParametricMultifunction::validate() const {
  std::vector<Real> probes = p_breakpoints();
  std::vector<Real> extra;
  for (std::size_t i = 0; i + 1 < probes.size(); ++i) extra.push_back(midpoint(probes[i], probes[i + 1]));
  if (probes.empty()) {
    extra.push_back(Real(0));
  } else {
    extra.push_back(probes.front() - Real(1));
    extra.push_back(probes.back() + Real(1));
  }
  probes.insert(probes.end(), extra.begin(), extra.end());
  for (const Real& p : probes) {
    if (p_domain_.contains(p)) slice_p(p).validate();
  }
}

bool ParametricMultifunction::is_exact() const {
  for (const ParamPiece& pp : pieces_) {
    if (!pp.x.is_exact() || !pp.p.is_exact()) return false;
    for (const ParamBand& b : pp.bands) {
      for (const auto* v : {&b.lo, &b.hi}) {
        if (!std::all_of(v->begin(), v->end(), [](const Affine2& t) { return t.is_exact(); })) return false;
      }
    }
  }
  return x_domain_.is_exact() && p_domain_.is_exact();
}

ParametricMultifunction ParametricMultifunction::to_float() const {
  std::vector<ParamPiece> pieces = pieces_;
  for (ParamPiece& pp : pieces) {
    pp.x = pp.x.to_float();
    pp.p = pp.p.to_float();
    for (ParamBand& b : pp.bands) {
      for (Affine2& t : b.lo) t = t.to_float();
      for (Affine2& t : b.hi) t = t.to_float();
    }
  }
  return ParamMF(name_, x_domain_.to_float(), p_domain_.to_float(), std::move(pieces));
}

}  // namespace vwb
