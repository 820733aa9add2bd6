// SPDX-License-Identifier: MIT
#include <doctest.h>

#include "qcv/curvature_lab.hpp"
#include "qcv/errors.hpp"
#include "qcv/taylor.hpp"

using namespace qcv;

namespace {

const BigRational kTau("17005133910625468/1000000000000");

MetricField field(const WeylForm& W, BigRational mu, BigRational eps, BigRational rho) {
  MetricField f;
  f.W = W;
  f.tau = kTau;
  f.mu = std::move(mu);
  f.eps = std::move(eps);
  f.rho = std::move(rho);
  return f;
}

std::vector<Real> point(int N, std::initializer_list<const char*> head) {
  std::vector<Real> y(static_cast<size_t>(N), Real(0));
  size_t i = 0;
  for (const char* v : head) y[i++] = Real(v);
  return y;
}

Real max_abs(const RealMatrix& m) {
  Real best = 0;
  for (int i = 0; i < m.rows(); ++i)
    for (int j = 0; j < m.cols(); ++j) best = std::max(best, Real(abs(m(i, j))));
  return best;
}

BubbleParams bubble(int N, BigRational lambda, int axis = -1, BigRational offset = 0) {
  BubbleParams b;
  b.N = N;
  b.lambda = std::move(lambda);
  b.xi.assign(static_cast<size_t>(N), BigRational(0));
  if (axis >= 0) b.xi[static_cast<size_t>(axis)] = std::move(offset);
  return b;
}

}  // namespace

TEST_CASE("taylor arithmetic") {
  auto sp = TaylorSpace::get(2, 4);
  CHECK(sp->size() == 15);
  const Taylor x = Taylor::variable(sp, 0, Real(2));
  const Taylor y = Taylor::variable(sp, 1, Real(-1));
  const Taylor p = x * x * y;  // at (2, -1)
  CHECK(p.value() == -4);
  CHECK(p.partial({1, 0}) == -4);  // 2xy
  CHECK(p.partial({0, 1}) == 4);   // x^2
  CHECK(p.partial({2, 1}) == 2);
  CHECK(p.d(0).d(0).value() == -2);
  CHECK_THROWS_AS(p.partial({3, 2}), JetOrderError);
  // (1 + x)^{-3/2} against its binomial series at x = 0.
  auto s1 = TaylorSpace::get(1, 4);
  const Taylor q = negative_power(Taylor::variable(s1, 0, Real(1)), 3);
  CHECK(abs(q.partial({2}) - Real(15) / 4) < 1e-70);
  CHECK(abs(q.partial({4}) - Real(945) / 16) < 1e-70);
}

TEST_CASE("matrix exponential") {
  auto sp = TaylorSpace::get(0, 0);
  TaylorMatrix a(2, sp);
  a(0, 1).coeff(0) = Real("0.5");
  a(1, 0).coeff(0) = Real("0.5");
  const ExpResult e = matrix_exponential(a);
  CHECK(abs(e.exp_plus(0, 0).value() - cosh(Real("0.5"))) < 1e-30);
  CHECK(abs(e.exp_minus(0, 1).value() + sinh(Real("0.5"))) < 1e-30);
  CHECK(e.remainder_bound < 1e-30);
  a(0, 0).coeff(0) = 2;
  CHECK_THROWS_AS(matrix_exponential(a), AccuracyError);
}

TEST_CASE("profile and h jets") {
  const WeylForm W = random_weyl(5, 3);
  MetricField f = field(W, rat(1, 2), rat(1, 3), rat(1, 2));
  const MetricProfile p = f.x_profile();
  const std::vector<BigRational> zero(5, BigRational(0));
  for (std::vector<int> idx : std::vector<std::vector<int>>{{}, {0}, {2}}) {
    for (const auto& row : h_derivative(p, zero, idx))
      for (const auto& v : row) CHECK(v == 0);
  }
  const std::vector<BigRational> x{rat(1, 10), rat(-1, 5), rat(1, 7), 0, rat(1, 4)};
  const HJet jet = h_jet(p, x, 2);
  const auto h0 = jet.at({});
  BigRational tr = 0;
  for (int i = 0; i < 5; ++i) tr += h0[static_cast<size_t>(i)][static_cast<size_t>(i)];
  CHECK(tr == 0);
  for (int j = 0; j < 5; ++j) {
    BigRational div = 0;
    for (int i = 0; i < 5; ++i) div += jet.at({i})[static_cast<size_t>(i)][static_cast<size_t>(j)];
    CHECK(div == 0);
  }
  CHECK(jet.at({3, 1}) == jet.at({1, 3}));
  CHECK_THROWS_AS(jet.at({1, 1, 1}), JetOrderError);
  // Linear in mu.
  MetricField g = f;
  g.mu = rat(1, 4);
  CHECK(h_derivative(p, x, {0, 4})[0][1] == 2 * h_derivative(g.x_profile(), x, {0, 4})[0][1]);
  // Real and exact versions agree.
  std::vector<Real> xr;
  for (const auto& v : x) xr.push_back(to_real(v));
  const RealMatrix hr = h_derivative(p, xr, {1, 2, 2});
  CHECK(abs(hr(0, 3) - to_real(h_derivative(p, x, {1, 2, 2})[0][3])) < 1e-60);
}

TEST_CASE("cutoff") {
  const auto chi = cutoff_polynomial(rat(1, 4), 1);
  auto ev = [&](const BigRational& s, int k) {
    std::vector<BigRational> c = chi;
    for (int d = 0; d < k; ++d) {
      std::vector<BigRational> n;
      for (size_t i = 1; i < c.size(); ++i) n.push_back(c[i] * static_cast<long>(i));
      c = n;
    }
    BigRational r = 0;
    for (auto it = c.rbegin(); it != c.rend(); ++it) r = r * s + *it;
    return r;
  };
  CHECK(ev(rat(1, 4), 0) == 1);
  CHECK(ev(BigRational(1), 0) == 0);
  for (int k = 1; k <= 4; ++k) {
    CHECK(ev(rat(1, 4), k) == 0);
    CHECK(ev(BigRational(1), k) == 0);
  }
  // The field is C^4 across |x| = rho: both branches share the 4-jet there.
  const WeylForm W = random_weyl(5, 4);
  const MetricProfile p = field(W, 1, rat(1, 2), rat(1, 2)).x_profile();
  CHECK(p.branch(BigRational(rat(1, 4))) == p.inner);
  CHECK(p.branch(BigRational(rat(1, 2))) == p.blend);
  CHECK(p.branch(BigRational(2)).empty());
  const std::vector<BigRational> at_rho{rat(1, 2), 0, 0, 0, 0};
  MetricProfile blend_only = p;
  blend_only.s_inner = 0;  // force the blend branch at |x| = rho
  for (std::vector<int> idx : std::vector<std::vector<int>>{{}, {0}, {0, 1}, {0, 0, 2}, {0, 0, 1, 1}})
    CHECK(h_derivative(p, at_rho, idx) == h_derivative(blend_only, at_rho, idx));
  CHECK_THROWS_AS(field(W, 2, rat(1, 2), rat(1, 2)).x_profile(), InputError);
  CHECK_THROWS_AS(field(W, 1, rat(1, 2), rat(1, 4)).x_profile(), InputError);
}

TEST_CASE("metric at a point") {
  const int N = 25;
  const MetricField f = field(embed_weyl(random_weyl(4, 7), N), rat(1, 1000), rat(1, 2), rat(1, 2));
  const MetricProfile p = f.x_profile();
  const MetricValue flat = metric_at(p, std::vector<Real>(N, Real(0)));
  CHECK(max_abs(flat.g - RealMatrix::Identity(N, N)) == 0);
  const auto pts = random_points(N, 20, 17, 0.9, bubble(N, 1));
  for (const auto& x : pts) {
    const MetricValue v = metric_at(p, x);
    CHECK(abs(v.det - 1) < 1e-12);
    CHECK(v.inverse_gap < 1e-25);
    CHECK(v.remainder_bound < 1e-30);
  }
}

TEST_CASE("flat metric has no curvature") {
  const int N = 6;
  const MetricField f = field(WeylForm(N, std::vector<BigInt>(1296, 0), 1), rat(1, 2), rat(1, 2), rat(1, 2));
  const CurvaturePoint c = curvature_at(f.y_profile(), point(N, {"0.3", "0.1"}));
  CHECK(c.scalar == 0);
  CHECK(c.q_curvature == 0);
  CHECK(max_abs(c.ricci) == 0);
  for (const auto& v : c.christoffel) CHECK(v == 0);
}

TEST_CASE("reduced and explicit engines agree") {
  for (int N : {6, 7}) {
    CAPTURE(N);
    const MetricField f = field(embed_weyl(random_weyl(4, 7), N), rat(1, 10000), rat(1, 2), rat(1, 2));
    const MetricProfile p = f.y_profile();
    const auto y = point(N, {"0.3", "-0.2", "0.5", "0.1", "0.4", "-0.3"});
    const CurvaturePoint a = curvature_at(p, y, Engine::Reduced);
    const CurvaturePoint b = curvature_at(p, y, Engine::Explicit);
    CHECK(max_abs(a.ricci - b.ricci) < 1e-35 * max_abs(b.ricci));
    CHECK(abs(a.scalar - b.scalar) < 1e-35 * abs(b.scalar));
    CHECK(abs(a.q_curvature - b.q_curvature) < 1e-35 * abs(b.q_curvature));
    for (size_t q = 0; q < a.christoffel.size(); ++q) CHECK(abs(a.christoffel[q] - b.christoffel[q]) < 1e-35);
    CHECK(a.trace_gap < 1e-40);
    CHECK(a.contracted_christoffel < 1e-35);
    BubbleParams bp = bubble(N, rat(3, 4), 1, rat(1, 3));
    const UField u = UField::bubble(bp, GammaChoice::Equation);
    const PaneitzValue pa = paneitz_apply(p, u, y, Engine::Reduced);
    const PaneitzValue pb = paneitz_apply(p, u, y, Engine::Explicit);
    CHECK(abs(pa.value - pb.value) < 1e-35 * abs(pb.value));
  }
  // A centre off the block span cannot use the reduced engine.
  const int N = 6;
  const MetricField f = field(embed_weyl(random_weyl(4, 7), N), rat(1, 10000), rat(1, 2), rat(1, 2));
  const UField u = UField::bubble(bubble(N, 1, 5, rat(1, 2)), GammaChoice::Equation);
  CHECK_THROWS_AS(paneitz_apply(f.y_profile(), u, point(N, {"0.1"}), Engine::Reduced), PreconditionError);
}

TEST_CASE("ricci against finite differences") {
  const int N = 5;
  const MetricField f = field(random_weyl(5, 3), rat(1, 10000), rat(1, 2), rat(1, 2));
  const MetricProfile p = f.y_profile();
  const auto y = point(N, {"0.8", "-0.5", "0.6", "0.3", "0.4"});
  const CurvaturePoint c = curvature_at(p, y);
  const RealMatrix fd = ricci_finite_difference(p, y, Real("1e-15"));
  CHECK(max_abs(fd - c.ricci) < 1e-25 * max_abs(c.ricci));
}

TEST_CASE("paneitz operator") {
  const int N = 25;
  const BubbleParams bp = bubble(N, rat(5, 4), 0, rat(1, 3));
  const UField u = UField::bubble(bp, GammaChoice::Equation);
  // h = 0: the flat bilaplacian, compared with the closed-form bubble.
  const MetricField flat = field(WeylForm(N, std::vector<BigInt>(390625, 0), 1), 1, rat(1, 2), rat(1, 2));
  for (const auto& y : random_points(N, 5, 31, 1.5, bp)) {
    const PaneitzValue pv = paneitz_apply(flat.y_profile(), u, y);
    const FlatResidual fr = flat_residual(y, bp, GammaChoice::Equation);
    CHECK(abs(pv.value - fr.bilaplacian) < 1e-9 * abs(fr.bilaplacian));
    CHECK(abs(pv.value - fr.nonlinear) < 1e-9 * abs(fr.nonlinear));
  }
  const MetricField f = field(embed_weyl(random_weyl(4, 7), N), rat(1, 100), rat(1, 4), rat(1, 2));
  const MetricProfile p = f.y_profile();
  const auto y = point(N, {"0.8", "-0.5", "0.6", "0.3", "0", "0", "0.4"});
  // Constant function: P 1 = ((N-4)/2) Q.
  const PaneitzValue one = paneitz_apply(p, UField::one(), y);
  const CurvaturePoint c = curvature_at(p, y);
  CHECK(abs(one.value - Real(N - 4) / 2 * c.q_curvature) < 1e-40 * abs(c.q_curvature));
  // Linearity.
  const UField v = UField::bubble(bubble(N, rat(3, 4), 2, rat(-1, 2)), GammaChoice::Printed);
  const Real a("0.7"), b("-1.3");
  const Real lhs = paneitz_apply(p, u * a + v * b, y).value;
  const Real rhs = a * paneitz_apply(p, u, y).value + b * paneitz_apply(p, v, y).value;
  CHECK(abs(lhs - rhs) < 1e-20 * abs(rhs));
}

TEST_CASE("expansion lemmas by mu scaling") {
  const int N = 25;
  const WeylForm W = embed_weyl(random_weyl(4, 7), N);
  const auto y = point(N, {"0.8", "-0.5", "0.6", "0.3", "0", "0", "0.4"});
  std::vector<Real> ric_lin, ric_quad, scal, lap, q;
  for (const char* m : {"1/100", "1/1000", "1/10000"}) {
    const MetricField f = field(W, BigRational(m), rat(1, 4), rat(1, 2));
    const Real mu = to_real(f.mu), mu2 = mu * mu, mu3 = mu2 * mu;
    const LemmaTerms lt = lemma_terms(f.y_profile(), y);
    ric_lin.push_back(max_abs(lt.ricci - lt.ricci_linear) / mu2);
    ric_quad.push_back(max_abs(lt.ricci - lt.ricci_quadratic) / mu3);
    scal.push_back((lt.scalar - lt.scalar_leading) / mu3);
    lap.push_back((lt.laplacian_scalar - lt.laplacian_scalar_leading) / mu3);
    q.push_back((lt.q_curvature - lt.q_leading) / mu3);
  }
  // Each ratio settles instead of growing tenfold per step.
  for (const auto* series : {&ric_lin, &ric_quad, &scal, &lap, &q})
    for (size_t i = 1; i < series->size(); ++i) {
      const Real r = (*series)[i] / (*series)[i - 1];
      CHECK(r > 0.9);
      CHECK(r < 1.1);
    }
}

TEST_CASE("residual of the rescaled bubble") {
  const int N = 25;
  const WeylForm W = embed_weyl(random_weyl(4, 7), N);
  const BubbleParams bp = bubble(N, 1, 1, rat(1, 2));
  const auto y = point(N, {"3"});
  // W = 0: only the flat residual is left.
  const MetricField flat = field(WeylForm(N, std::vector<BigInt>(390625, 0), 1), 1, rat(1, 10), rat(1, 2));
  const ResidualSample s0 = residual_at(flat, bp, y, GammaChoice::Equation);
  CHECK(abs(s0.residual) < 1e-9 * abs(s0.nonlinear));
  // eps-halving at fixed y.
  const EpsilonHalving e = epsilon_halving(field(W, 1, rat(1, 20), rat(1, 2)), bp, y, GammaChoice::Equation);
  CHECK(abs(e.ratio / 1024 - 1) < 0.15);
  // With the bubble centred at the origin the first-order terms cancel and
  // the residual is quadratic in h.
  const EpsilonHalving e0 =
      epsilon_halving(field(W, 1, rat(1, 20), rat(1, 2)), bubble(N, 1), y, GammaChoice::Equation);
  CHECK(abs(e0.ratio / (1024.0 * 1024.0) - 1) < 0.01);
  std::vector<Real> dir(N, Real(0));
  dir[0] = 1;
  CHECK_THROWS_AS(residual_profile(field(W, 1, rat(1, 20), rat(1, 2)), bp, dir, {}, GammaChoice::Equation),
                  InputError);
  CHECK_THROWS_AS(residual_at(field(W, 1, rat(1, 20), rat(1, 2)), bp, point(N, {"11"}), GammaChoice::Equation),
                  PreconditionError);
}
