// SPDX-License-Identifier: MIT
// Unit tests for the quadrature, Monte Carlo and convolution oracles.
#include <doctest.h>

#include "qcv/cross_check.hpp"
#include "qcv/errors.hpp"

#include <cmath>

using namespace qcv;

TEST_CASE("adaptive radial quadrature") {
  CHECK(std::abs(adaptive_radial_quad([](double r) { return r / ((1 + r * r) * (1 + r * r)); }).value - 0.5) <
        1e-12);
  CHECK(std::abs(adaptive_radial_quad([](double r) { return std::pow(r, 3) / std::pow(1 + r * r, 3); }).value -
                 0.25) < 1e-12);
  for (int N : {5, 25}) {
    const double area = 2 * std::pow(M_PI, N / 2.0) / std::tgamma(N / 2.0);
    const double q =
        adaptive_radial_quad([N](double r) { return std::pow(r, N - 1) / std::pow(1 + r * r, N); }).value;
    const double exact = energy_constant(N).expand_sphere().to_real().convert_to<double>();
    CHECK(std::abs((N - 4.0) / N * area * q - exact) < 1e-12 * exact);
  }
  // 1 / r is not integrable at 0.
  CHECK_THROWS_AS(adaptive_radial_quad([](double r) { return 1 / r; }), AccuracyError);
}

TEST_CASE("radial kernels against their closed forms") {
  const int N = 25;
  const FPoly fp = FPoly::standard();
  const SPoly s = SPoly::monomial(TauQ(1), 1), f = fp.poly(), f1 = fp.deriv(1);
  const SPoly X = s * f1 * f1 + BigRational(2) * f * f1;
  const SPoly sf = s * f1 + f;
  const BigRational tau("17005133910625468/1000000000000");
  for (const BigRational& lam : {rat(1, 2), rat(1, 1), rat(3, 2)}) {
    for (const auto& [P, a, b] : std::vector<std::tuple<SPoly, int, int>>{
             {X, N + 5, N - 2}, {f * f, N + 3, N - 2}, {sf * sf, N + 3, N - 2}, {f * f, N - 1, N - 4}}) {
      const KernelCheck c = check_radial_kernel(P, a, b, lam, tau);
      CHECK(c.relative_gap < 1e-40);
    }
  }
}

TEST_CASE("monte carlo on the sphere") {
  const int N = 5;
  const double area = 8 * M_PI * M_PI / 3;  // |S^4|
  const McEstimate one = mc_sphere(N, 1000, [](const double*) { return 1.0; }, 1);
  CHECK(one.stderr_ == 0);
  CHECK(std::abs(one.mean - area) < 1e-12);
  const McEstimate y2 = mc_sphere(N, 1000000, [](const double* y) { return y[0] * y[0]; }, 2);
  CHECK(std::abs(y2.mean - area / 5) <= 3 * y2.stderr_);
  // Bit-identical for the same seed, different for another.
  const McEstimate again = mc_sphere(N, 1000000, [](const double* y) { return y[0] * y[0]; }, 2);
  CHECK(again.mean == y2.mean);
  CHECK(again.stderr_ == y2.stderr_);
  CHECK(mc_sphere(N, 1000000, [](const double* y) { return y[0] * y[0]; }, 3).mean != y2.mean);
  CHECK_THROWS_AS(mc_sphere(1, 1000, [](const double*) { return 1.0; }, 1), InputError);
  CHECK_THROWS_AS(mc_sphere(5, 999, [](const double*) { return 1.0; }, 1), InputError);
}

TEST_CASE("sphere identities under monte carlo") {
  const WeylForm w = random_weyl(5, 21);
  std::vector<SphereTarget> targets;
  for (SphereKind k : all_sphere_kinds()) targets.push_back({k, 1, 3});
  const auto checks = mc_sphere_identities(w, targets, 1000000, 5);
  for (const auto& c : checks) {
    INFO(sphere_kind_name(c.target.kind));
    CHECK(c.identity_holds);
    CHECK(c.agrees);
  }
  // The single-target entry point uses the same samples.
  const McEstimate h2 = mc_sphere_identity(w, SphereKind::H2, 0, 0, 1000000, 5);
  CHECK(h2.mean == checks[0].mc.mean);
  // Against the scalar integrand of the weyl module.
  const std::vector<double> wd = w.to_double();
  const McEstimate direct = mc_sphere(
      5, 1000000, [&](const double* y) { return sphere_integrand(wd, 5, SphereKind::H2, y, 0, 0); }, 5);
  CHECK(std::abs(direct.mean - h2.mean) < 1e-9 * h2.mean);
}

TEST_CASE("convolution scaling") {
  const std::vector<double> grid{10, 30, 100, 300, 1000, 3000, 10000};
  const ScalingFit big_t = convolution_scaling(5, 4, 6, grid, 1000000, 42);
  CHECK(std::abs(big_t.exponent - predicted_convolution_exponent(5, 4, 6)) < 0.15);
  const ScalingFit small_t = convolution_scaling(5, 2, 4, grid, 1000000, 42);
  CHECK(std::abs(small_t.exponent - predicted_convolution_exponent(5, 2, 4)) < 0.15);
  const ScalingFit log_t = convolution_scaling(5, 2, 5, grid, 1000000, 42);
  const LogCaseCheck lc = log_case_check(5, 2, log_t);
  CHECK(std::abs(lc.ratio_exponent) < 0.15);
  CHECK(lc.spread < 4);
  const ScalingFit ball = ball_scaling(5, 2, 2, 4000, {10, 30, 100, 300, 1000}, 1000000, 9);
  CHECK(std::abs(ball.exponent - 2) < 0.2);

  CHECK_THROWS_AS(convolution_scaling(5, 4, 6, {10, 30, 100}, 1000, 1), InputError);
  CHECK_THROWS_AS(convolution_scaling(5, 4, 6, {10, 20, 30, 40}, 1000, 1), InputError);
  CHECK_THROWS_AS(convolution_scaling(5, 4, 6, {10, 30, 20, 3000}, 1000, 1), InputError);
  CHECK_THROWS_AS(convolution_scaling(5, 4, 3, grid, 1000, 1), InputError);
  CHECK_THROWS_AS(ball_scaling(5, 2, 2, 100, {10, 30, 100, 1000}, 1000, 1), InputError);
}

TEST_CASE("scaling fit on exact power laws") {
  std::vector<double> x{1, 10, 100, 1000}, v;
  for (double a : x) v.push_back(3 * std::pow(a, -1.5));
  const ScalingFit f = fit_scaling(x, v);
  CHECK(std::abs(f.exponent + 1.5) < 1e-12);
  CHECK(std::abs(std::exp(f.intercept) - 3) < 1e-10);
  CHECK(f.residual < 1e-12);
}
