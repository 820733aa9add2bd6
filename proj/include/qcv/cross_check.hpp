// SPDX-License-Identifier: MIT
// Independent numerical oracles: adaptive radial quadrature, Monte Carlo on
// the unit sphere and singular convolution integrals with their scaling fits.
#pragma once

#include "qcv/radial_integrals.hpp"
#include "qcv/weyl_algebra.hpp"

#include <cstdint>
#include <functional>
#include <optional>
#include <vector>

namespace qcv {

// int_0^inf f(r) dr split at r = 1, the tail mapped by r = 1/t, each half by
// adaptive Gauss-Kronrod.  The error estimate must fall below
// tol * max(1, |result|), otherwise AccuracyError.
struct QuadResult {
  double value = 0;
  double error = 0;
};
QuadResult adaptive_radial_quad(const std::function<double(double)>& f, double tol = 1e-13);

// The same rule in working precision, for integrands with cancellation.
Real adaptive_radial_quad_real(const std::function<Real(const Real&)>& f, double tol = 1e-30);

// Quadrature of int_0^inf P(r^2) r^k / (lambda^2 + r^2)^m dr at a numeric
// lambda and tau, next to the closed form from poly_radial_integral.
struct KernelCheck {
  Real closed_form;
  Real quadrature;
  Real relative_gap;
};
KernelCheck check_radial_kernel(const SPoly& P, int k, int m, const BigRational& lambda,
                                const BigRational& tau);

// Value of a LambdaSeries at numeric lambda and tau.
Real evaluate_series(const LambdaSeries& s, const Real& lambda, const Real& tau);

struct McEstimate {
  double mean = 0;
  double stderr_ = 0;  // sample standard deviation / sqrt(samples)
  std::uint64_t samples = 0;
  std::uint64_t seed = 0;
};

// Samples are split into fixed batches; batch b draws from a generator seeded
// with (seed, b), and the batch sums are combined in index order, so the
// estimate is bit-identical for a given seed and sample count.
constexpr std::uint64_t kMcBatch = 1 << 16;

// |S^{N-1}| times the average of f over uniform points on the unit sphere.
// Throws InputError for N < 2 or fewer than 1000 samples.
McEstimate mc_sphere(int N, std::uint64_t samples,
                     const std::function<double(const double*)>& integrand, std::uint64_t seed);

// One sphere identity as a Monte Carlo target; p, q only matter for kinds
// that use them.
struct SphereTarget {
  SphereKind kind;
  int p = 0;
  int q = 0;
};
struct SphereCheck {
  SphereTarget target;
  SymScalar exact;       // moment-assembled side
  bool identity_holds = false;
  double exact_value = 0;
  McEstimate mc;
  bool agrees = false;   // |mc - exact| <= 3 stderr
};
// All targets from one shared set of samples.
std::vector<SphereCheck> mc_sphere_identities(const WeylForm& w,
                                              const std::vector<SphereTarget>& targets,
                                              std::uint64_t samples, std::uint64_t seed);

// The integrand of a sphere identity under Monte Carlo.
McEstimate mc_sphere_identity(const WeylForm& w, SphereKind kind, int p, int q,
                              std::uint64_t samples, std::uint64_t seed);

// int |x - y|^{s-N} (1 + |y|)^{-t} dy over R^N, or over the ball |y| <= radius,
// at x = |x| e_1.  Importance sampling from an equal mixture of a density
// proportional to |x - y|^{s-N} near x and a radial heavy-tailed density about
// the origin; weights are exact.
McEstimate convolution_integral(int N, double s, double t, double x_norm,
                                std::optional<double> radius, std::uint64_t samples,
                                std::uint64_t seed);

struct ScalingFit {
  std::vector<double> abscissae;
  std::vector<double> values;
  std::vector<double> stderrs;
  double exponent = 0;
  double intercept = 0;
  double residual = 0;  // root mean square of the weighted log-log residuals
};

// Weighted least squares of log value against log abscissa, with the two
// largest abscissae counted twice.  Needs at least 4 strictly increasing
// positive abscissae spanning two decades, otherwise InputError.
ScalingFit fit_scaling(std::vector<double> abscissae, std::vector<double> values);

// Exponent of x -> int |x - y|^{s-N} (1 + |y|)^{-t} dy fitted against 1 + |x|.
// Requires 0 < s < N and t > s.
ScalingFit convolution_scaling(int N, double s, double t, const std::vector<double>& x_grid,
                               std::uint64_t samples, std::uint64_t seed);

// Exponent of r -> int_{B_r} |y - z|^{s-N} (1 + |z|)^{k-N} dz at fixed y,
// fitted against r.  Requires 0 < s, k, s + k < N and |y| >= 4 max r.
ScalingFit ball_scaling(int N, double s, double k, double y_norm, const std::vector<double>& r_grid,
                        std::uint64_t samples, std::uint64_t seed);

// The exponent predicted for convolution_scaling: s - t below t = N and
// s - N above; at t = N the profile carries an extra logarithm.
double predicted_convolution_exponent(int N, double s, double t);

// Largest over smallest of value / ((1 + |x|)^{s-N} (1 + log(1 + |x|))), and
// the fitted exponent of that ratio; the t = N case predicts a bounded ratio.
struct LogCaseCheck {
  double spread = 0;
  double ratio_exponent = 0;
};
LogCaseCheck log_case_check(int N, double s, const ScalingFit& fit);

}  // namespace qcv
