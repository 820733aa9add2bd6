// SPDX-License-Identifier: MIT
// Pointwise curvature of the metric g = e^h with h = phi(|x|^2) H(x): metric,
// Christoffel symbols, Ricci, scalar and Q-curvature, the Paneitz operator,
// and the bubble residual under the rescaled metric.
#pragma once

#include "qcv/bubble.hpp"
#include "qcv/eigen_real.hpp"
#include "qcv/exact_scalars.hpp"
#include "qcv/radial_integrals.hpp"
#include "qcv/weyl_algebra.hpp"

#include <Eigen/Core>

#include <optional>
#include <vector>

namespace qcv {

using RealMatrix = Eigen::Matrix<Real, Eigen::Dynamic, Eigen::Dynamic>;

// h(x) = phi(|x|^2) H(x) with H_ij(x) = W_ipjq x_p x_q and phi piecewise
// polynomial in s = |x|^2: `inner` for s <= s_inner, `blend` strictly between
// s_inner and s_outer, zero from s_outer on.
struct MetricProfile {
  WeylForm W;
  std::vector<BigRational> inner;
  std::vector<BigRational> blend;
  BigRational s_inner;
  BigRational s_outer;

  int N() const { return W.dim(); }
  // Coefficients of the branch that applies at s (empty means phi = 0 there).
  const std::vector<BigRational>& branch(const BigRational& s) const;
  const std::vector<BigRational>& branch(const Real& s) const;
  bool in_exact_region(const BigRational& s) const { return s <= s_inner; }
};

// Indices that occur in a nonzero entry of W; h vanishes off this block.
std::vector<int> weyl_support(const WeylForm& w);

// The metric of the construction:
//   h = mu eps^8 f(|x|^2 / eps^2) H(x) for |x| <= rho,
// multiplied by the C^4 cutoff chi(|x|^2) that falls from 1 at |x| = rho to 0
// at |x| = 1.  tau enters f as its constant term.
struct MetricField {
  WeylForm W;
  FPoly f = FPoly::standard();
  BigRational tau;
  BigRational mu{1};
  BigRational eps{1};
  BigRational rho{1};
  BigRational alpha{1};

  int N() const { return W.dim(); }
  // Throws InputError unless 0 < mu <= 1, 0 < eps <= rho <= 1, alpha > 0.
  void validate() const;
  // h as a function of x.
  MetricProfile x_profile() const;
  // h~(y) = h(eps y), the profile seen after rescaling.
  MetricProfile y_profile() const;
};

// Coefficients of the cutoff chi(s) = 1 - B((s - a) / (b - a)) in powers of s,
// with B(t) = 126t^5 - 420t^6 + 540t^7 - 315t^8 + 70t^9.
std::vector<BigRational> cutoff_polynomial(const BigRational& a, const BigRational& b);

// One partial derivative of h (order 0..4), exactly, as an N x N matrix.
std::vector<std::vector<BigRational>> h_derivative(const MetricProfile& p,
                                                   const std::vector<BigRational>& x,
                                                   const std::vector<int>& indices);
// The same at a working-precision point.
RealMatrix h_derivative(const MetricProfile& p, const std::vector<Real>& x,
                        const std::vector<int>& indices);

// All derivatives up to `order` keyed by sorted multi-index.
struct HJet {
  int order = 0;
  std::map<Jet::Key, std::vector<std::vector<BigRational>>> d;
  const std::vector<std::vector<BigRational>>& at(std::vector<int> indices) const;
};
HJet h_jet(const MetricProfile& p, const std::vector<BigRational>& x, int order);

// sum_{k <= 4} max_{entries} |d^k h(x)|, compared against alpha.
Real alpha_norm(const MetricProfile& p, const std::vector<Real>& x);

struct MetricValue {
  RealMatrix g;
  RealMatrix g_inv;
  Real det;
  Real inverse_gap;  // max |g g^{-1} - Id|
  int series_terms = 0;
  double remainder_bound = 0;
};
MetricValue metric_at(const MetricProfile& p, const std::vector<Real>& x);

// Which implementation evaluates the geometry.  Reduced uses the block of W:
// when W vanishes off the first k coordinates, every field depends on the
// rest only through sigma = |x_perp|^2, so the jets live in k + 1 variables.
// Explicit uses all N coordinates and is meant for small N.
enum class Engine { Auto, Reduced, Explicit };

struct CurvaturePoint {
  std::vector<Real> x;
  RealMatrix g, g_inv;
  std::vector<Real> christoffel;  // Gamma^i_jk at (i * N + j) * N + k
  RealMatrix ricci;
  Real scalar;
  Real q_curvature;
  Real laplacian_scalar;  // Delta_g S
  int jet_order = 4;
  // Diagnostics: max_k |sum_i Gamma^i_ik|, which vanishes when det g = 1,
  // and |g^{ij} Ric_ij - S|.
  Real contracted_christoffel;
  Real trace_gap;

  const Real& gamma(int i, int j, int k) const;
};

CurvaturePoint curvature_at(const MetricProfile& p, const std::vector<Real>& x,
                            Engine engine = Engine::Auto);

// u(x) = constant + sum_t scale_t (lambda2_t + |x - centre_t|^2)^{-kappa_t}
// with kappa_t = twice_kappa_t / 2.  Jets to any order are analytic.
struct UTerm {
  std::vector<Real> centre;
  Real lambda2;
  int twice_kappa = 0;
  Real scale;
};
struct UField {
  Real constant = 0;
  std::vector<UTerm> terms;

  static UField bubble(const BubbleParams& b, GammaChoice choice);
  static UField one();
  UField operator*(const Real& c) const;
  UField operator+(const UField& o) const;
  Real value(const std::vector<Real>& x) const;
};

struct PaneitzValue {
  Real value;          // P_g u
  Real bilaplacian;    // Delta_g^2 u
  Real divergence;     // div_g(a S g + b Ric) du
  Real q_term;         // ((N-4)/2) Q u
  Real flat;           // Delta^2 u
};
PaneitzValue paneitz_apply(const MetricProfile& p, const UField& u, const std::vector<Real>& x,
                           Engine engine = Engine::Auto);

// The leading-order expressions of the expansion lemmas next to the exact
// values, at one point.  Matrices are restricted to the support indices of W.
struct LemmaTerms {
  std::vector<int> support;
  RealMatrix ricci, ricci_linear, ricci_quadratic;  // exact, -Delta h / 2, printed to second order
  Real scalar, scalar_leading;
  Real laplacian_scalar, laplacian_scalar_leading;
  Real q_curvature, q_leading;
};
LemmaTerms lemma_terms(const MetricProfile& p, const std::vector<Real>& x,
                       Engine engine = Engine::Auto);

// R(y) = P_g~ u0~ - ((N-4)/2) u0~^{(N+4)/(N-4)} for the rescaled metric and
// the bubble with y-scale parameters `bubble`.
struct ResidualSample {
  std::vector<Real> y;
  Real distance;  // |y - xi'|
  Real residual;
  Real paneitz;
  Real nonlinear;
};
ResidualSample residual_at(const MetricField& field, const BubbleParams& bubble,
                           const std::vector<Real>& y, GammaChoice choice);

struct ResidualProfile {
  std::vector<ResidualSample> samples;
  double slope = 0;      // fitted d log|R| / d log(1 + |y - xi'|)
  double intercept = 0;
};
// Samples along the unit direction `dir` from xi' at the listed distances.
// Throws InputError on an empty list and PreconditionError for a point
// outside |y| <= rho / eps.
ResidualProfile residual_profile(const MetricField& field, const BubbleParams& bubble,
                                 const std::vector<Real>& dir,
                                 const std::vector<Real>& distances, GammaChoice choice);

struct EpsilonHalving {
  Real r_eps, r_half;
  Real ratio;  // r_eps / r_half, ideally 2^10
};
// R at the same y for eps and eps / 2, with the bubble and field otherwise fixed.
EpsilonHalving epsilon_halving(const MetricField& field, const BubbleParams& bubble,
                               const std::vector<Real>& y, GammaChoice choice);

// Independent check: Christoffel symbols and Ricci by central differences of
// the metric (full formula, no use of det g = 1).
RealMatrix ricci_finite_difference(const MetricProfile& p, const std::vector<Real>& x,
                                   const Real& step);

}  // namespace qcv
