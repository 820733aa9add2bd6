// SPDX-License-Identifier: MIT
// The bubble residual under the rescaled metric and its scaling fits.
#include "qcv/curvature_lab.hpp"
#include "qcv/errors.hpp"

#include <cmath>

namespace qcv {

namespace {

std::vector<Real> xi_of(const BubbleParams& b) {
  std::vector<Real> xi(static_cast<size_t>(b.N), Real(0));
  for (size_t i = 0; i < b.xi.size(); ++i) xi[i] = to_real(b.xi[i]);
  return xi;
}

}  // namespace

ResidualSample residual_at(const MetricField& field, const BubbleParams& bubble,
                           const std::vector<Real>& y, GammaChoice choice) {
  if (bubble.N != field.N()) throw DimensionError("residual: bubble and field dimensions differ");
  const MetricProfile prof = field.y_profile();
  Real r2 = 0;
  for (const auto& v : y) r2 += v * v;
  if (r2 > to_real(prof.s_inner)) throw PreconditionError("residual: point outside |y| <= rho / eps");
  const UField u = UField::bubble(bubble, choice);
  const PaneitzValue pv = paneitz_apply(prof, u, y);
  const int N = field.N();
  const Real uv = u.value(y);
  ResidualSample s;
  s.y = y;
  const auto xi = xi_of(bubble);
  Real d2 = 0;
  for (size_t i = 0; i < y.size(); ++i) d2 += (y[i] - xi[i]) * (y[i] - xi[i]);
  s.distance = sqrt(d2);
  s.paneitz = pv.value;
  s.nonlinear = Real(N - 4) / 2 * pow(uv, Real(N + 4) / (N - 4));
  s.residual = s.paneitz - s.nonlinear;
  return s;
}

ResidualProfile residual_profile(const MetricField& field, const BubbleParams& bubble,
                                 const std::vector<Real>& dir, const std::vector<Real>& distances,
                                 GammaChoice choice) {
  if (distances.empty()) throw InputError("residual_profile: no sample distances");
  if (static_cast<int>(dir.size()) != field.N()) throw ShapeError("residual_profile: direction length");
  Real norm = 0;
  for (const auto& v : dir) norm += v * v;
  norm = sqrt(norm);
  if (norm == 0) throw InputError("residual_profile: zero direction");
  const auto xi = xi_of(bubble);
  ResidualProfile prof;
  std::vector<double> lx, ly;
  for (const auto& d : distances) {
    std::vector<Real> y(dir.size());
    for (size_t i = 0; i < y.size(); ++i) y[i] = xi[i] + d * dir[i] / norm;
    prof.samples.push_back(residual_at(field, bubble, y, choice));
    const auto& s = prof.samples.back();
    lx.push_back(std::log1p(s.distance.convert_to<double>()));
    ly.push_back(log(abs(s.residual)).convert_to<double>());
  }
  if (lx.size() >= 2) {
    const double n = static_cast<double>(lx.size());
    double sx = 0, sy = 0, sxx = 0, sxy = 0;
    for (size_t i = 0; i < lx.size(); ++i) {
      sx += lx[i];
      sy += ly[i];
      sxx += lx[i] * lx[i];
      sxy += lx[i] * ly[i];
    }
    prof.slope = (n * sxy - sx * sy) / (n * sxx - sx * sx);
    prof.intercept = (sy - prof.slope * sx) / n;
  }
  return prof;
}

EpsilonHalving epsilon_halving(const MetricField& field, const BubbleParams& bubble,
                               const std::vector<Real>& y, GammaChoice choice) {
  MetricField half = field;
  half.eps = field.eps / 2;
  EpsilonHalving e;
  e.r_eps = residual_at(field, bubble, y, choice).residual;
  e.r_half = residual_at(half, bubble, y, choice).residual;
  e.ratio = e.r_eps / e.r_half;
  return e;
}

}  // namespace qcv
