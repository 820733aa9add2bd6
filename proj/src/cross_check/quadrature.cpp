// SPDX-License-Identifier: MIT
// Adaptive Gauss-Kronrod quadrature on (0, inf) and the radial kernel oracle.
#include "qcv/cross_check.hpp"
#include "qcv/errors.hpp"

#include <boost/math/quadrature/gauss_kronrod.hpp>

#include <cmath>

namespace qcv {

namespace {

constexpr unsigned kMaxDepth = 30;

template <class T, class F>
T radial_quad(const F& f, double tol, double* error_out) {
  using GK = boost::math::quadrature::gauss_kronrod<T, 61>;
  // Each half is asked for a tenth of the target so that their sum meets it.
  const T rel(tol / 10);
  T e0 = 0, e1 = 0;
  const T head = GK::integrate(f, T(0), T(1), kMaxDepth, rel, &e0);
  auto tail = [&](const T& t) { return f(T(1) / t) / (t * t); };
  const T rest = GK::integrate(tail, T(0), T(1), kMaxDepth, rel, &e1);
  const T value = head + rest;
  // Boost reports the absolute Kronrod minus Gauss gap of each half.
  const T bound = e0 + e1;
  using std::abs;
  using std::max;
  if (!(bound <= T(tol) * max(T(1), T(abs(value)))))
    throw AccuracyError("adaptive_radial_quad: tolerance not reached");
  if (error_out) *error_out = static_cast<double>(bound);
  return value;
}

}  // namespace

QuadResult adaptive_radial_quad(const std::function<double(double)>& f, double tol) {
  QuadResult r;
  r.value = radial_quad<double>(f, tol, &r.error);
  return r;
}

Real adaptive_radial_quad_real(const std::function<Real(const Real&)>& f, double tol) {
  return radial_quad<Real>(f, tol, nullptr);
}

Real evaluate_series(const LambdaSeries& s, const Real& lambda, const Real& tau) {
  Real total = 0;
  for (const auto& [e, c] : s.terms)
    total += pow(lambda, e) * (c[0].to_real() + tau * (c[1].to_real() + tau * c[2].to_real()));
  return total;
}

KernelCheck check_radial_kernel(const SPoly& P, int k, int m, const BigRational& lambda,
                                const BigRational& tau) {
  const Real l = to_real(lambda), t = to_real(tau), l2 = l * l;
  std::vector<Real> coeffs;
  for (const auto& c : P.coeffs()) coeffs.push_back(to_real(c.at(tau)));
  auto integrand = [&](const Real& r) {
    const Real s = r * r;
    Real p = 0;
    for (auto it = coeffs.rbegin(); it != coeffs.rend(); ++it) p = p * s + *it;
    return p * pow(r, k) / pow(l2 + s, m);
  };
  KernelCheck c;
  c.closed_form = evaluate_series(poly_radial_integral(P, k, m), l, t);
  c.quadrature = adaptive_radial_quad_real(integrand, 1e-30);
  c.relative_gap = abs(c.quadrature - c.closed_form) / abs(c.closed_form);
  return c;
}

}  // namespace qcv
