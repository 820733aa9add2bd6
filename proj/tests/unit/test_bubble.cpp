// SPDX-License-Identifier: MIT
#include <doctest.h>

#include "qcv/bubble.hpp"
#include "qcv/errors.hpp"

using namespace qcv;

namespace {

BubbleParams params(int N, BigRational lambda = 1) {
  BubbleParams p;
  p.N = N;
  p.lambda = std::move(lambda);
  return p;
}

}  // namespace

TEST_CASE("bubble derivatives at the centre") {
  for (int N : {5, 25}) {
    CAPTURE(N);
    const BubbleParams p = params(N, rat(3, 4));
    const RealPoint c(static_cast<size_t>(N), Real(0));
    const Real u = u0_derivative(c, p, {});
    for (int i = 0; i < N; ++i) CHECK(u0_derivative(c, p, {i}) == 0);
    // d_ij u0 = -(N-4) u0 delta_ij / lambda^2 at the centre.
    const Real lam2 = Real(9) / 16;
    CHECK(abs(u0_derivative(c, p, {1, 1}) + (N - 4) * u / lam2) < 1e-70 * u);
    CHECK(u0_derivative(c, p, {0, 1}) == 0);
    CHECK_THROWS_AS(u0_derivative(c, p, {0, 0, 0, 0, 0}), JetOrderError);
  }
}

TEST_CASE("printed third derivative formula") {
  const int N = 7;
  const BubbleParams p = params(N, rat(5, 4));
  const auto y = random_points(N, 1, 3, 2.0, p)[0];
  Real z2 = 0;
  for (const auto& v : y) z2 += v * v;
  const Real w = Real(25) / 16 + z2;
  const Real u = u0_derivative(y, p, {});
  const int i = 0, j = 2, s = 2;
  Real printed = -N * (N - 2) * (N - 4) * u * y[i] * y[j] * y[s] / (w * w * w) +
                 (N - 2) * (N - 4) * u * (1 * y[i] + 0 * y[j] + 0 * y[s]) / (w * w);
  CHECK(abs(u0_derivative(y, p, {i, j, s}) - printed) < 1e-70 * abs(printed));
}

TEST_CASE("exact profile derivatives") {
  const int N = 6;
  BubbleParams p = params(N, rat(1, 2));
  p.xi = std::vector<BigRational>(6, 0);
  p.xi[0] = rat(1, 3);
  std::vector<BigRational> y{1, rat(1, 2), 0, 0, rat(-1, 5), 0};
  RealPoint yr;
  for (const auto& v : y) yr.push_back(to_real(v));
  const Real g = gamma_N(N);
  for (std::vector<int> idx : std::vector<std::vector<int>>{{}, {0}, {0, 1}, {1, 1, 4}, {0, 0, 1, 1}}) {
    const Real exact = to_real(profile_derivative_exact(y, p, idx)) * g;
    const Real num = u0_derivative(yr, p, idx);
    CHECK(abs(exact - num) <= 1e-70 * abs(num) + 1e-90);
  }
  CHECK_THROWS_AS(profile_derivative_exact(std::vector<BigRational>(5, 0), params(5), {}),
                  PreconditionError);
}

TEST_CASE("jet storage") {
  CHECK(multi_indices(3, 2).size() == 1 + 3 + 6);
  CHECK(multi_indices(25, 4).size() == 1 + 25 + 325 + 2925 + 20475);
  const BubbleParams p = params(5);
  const auto y = random_points(5, 1, 11, 1.0, p)[0];
  const Jet j = u0_jet(y, p, 3);
  CHECK(j.at({2, 0, 1}) == j.at({0, 1, 2}));
  CHECK(j.at({2, 0, 1}) == u0_derivative(y, p, {1, 2, 0}));
  CHECK_THROWS_AS(j.at({0, 0, 0, 0}), JetOrderError);
  CHECK_THROWS_AS(u0_jet(y, p, 5), JetOrderError);
}

TEST_CASE("closed forms against finite differences") {
  for (int N : {5, 25}) {
    CAPTURE(N);
    const BubbleParams p = params(N, rat(7, 8));
    for (const auto& y : random_points(N, 3, 21, 3.0, p)) {
      const auto gaps = derivative_fd_gaps(y, p, 4);
      REQUIRE(gaps.size() == 4);
      for (const auto& g : gaps) CHECK(g < 1e-6);
    }
    const auto y = random_points(N, 1, 5, 2.0, p)[0];
    const Real fd = u0_finite_difference(y, p, {0, 1}, Real("1e-20"));
    const Real cf = u0_derivative(y, p, {0, 1});
    CHECK(abs(fd - cf) < 1e-30 * abs(cf));
  }
}

TEST_CASE("flat residual") {
  for (int N : {5, 25}) {
    CAPTURE(N);
    for (const char* lam : {"1/2", "1", "3/2"}) {
      const BubbleParams p = params(N, BigRational(lam));
      for (const auto& y : random_points(N, 10, 99, 4.0, p))
        CHECK(flat_residual(y, p, GammaChoice::Equation).relative < 1e-9);
    }
    // The printed constant overshoots by exactly (N(N-4)(N-2)(N+2))^2.
    const BubbleParams p = params(N);
    const auto y = random_points(N, 1, 1, 1.0, p)[0];
    const FlatResidual r = flat_residual(y, p, GammaChoice::Printed);
    const Real c = Real(N) * (N - 4) * (N - 2) * (N + 2);
    CHECK(abs(r.bilaplacian / r.nonlinear - c * c) < 1e-60 * c * c);
  }
  // Far field at N = 5.
  BubbleParams p = params(5);
  RealPoint far(5, Real(0));
  far[0] = 100;
  CHECK(flat_residual(far, p, GammaChoice::Equation).relative < 1e-8);
}

TEST_CASE("rescaling") {
  BubbleParams x = params(25, rat(3, 2));
  x.xi = std::vector<BigRational>(25, 0);
  x.xi[3] = rat(1, 7);
  CHECK(to_y_scale(x, 1) == x);
  const BigRational eps = rat(1, BigInt(1) << 50);
  BubbleParams ye = params(25, eps);
  CHECK(to_y_scale(ye, eps).lambda == 1);
  const BubbleParams y = to_y_scale(x, rat(1, 3));
  CHECK(y.lambda == rat(9, 2));
  CHECK(to_x_scale(y) == x);
  CHECK_THROWS_AS(to_y_scale(x, 0), PreconditionError);

  // eps^{(N-4)/2} u0(eps y) = u0'(y).
  const Real e = Real(1) / 3;
  for (const auto& pt : random_points(25, 20, 4, 3.0, y)) {
    RealPoint xs = pt;
    for (auto& v : xs) v *= e;
    const Real lhs = pow(e, Real(21) / 2) * u0_derivative(xs, x, {});
    const Real rhs = u0_derivative(pt, y, {});
    CHECK(abs(lhs - rhs) < 1e-70 * abs(rhs));
  }
}

TEST_CASE("fourth-derivative product identity") {
  const BubbleParams p = params(25, rat(5, 4));
  for (const auto& y : random_points(25, 3, 8, 2.0, p)) {
    CHECK(ijkk_identity(y, p, 0, 0).relative_gap < 1e-60);
    CHECK(ijkk_identity(y, p, 1, 3).relative_gap < 1e-60);
    // With eps = 1/100 in place of lambda' the diagonal case no longer holds.
    CHECK(ijkk_identity(y, p, 2, 2, rat(1, 100)).relative_gap > 1e-3);
  }
}
