// SPDX-License-Identifier: MIT
// The bubble u0 = gamma (lambda / (lambda^2 + |y - xi|^2))^{(N-4)/2}, its
// closed-form derivatives to fourth order, and the flat bilaplacian residual.
#pragma once

#include "qcv/exact_scalars.hpp"

#include <array>
#include <cstdint>
#include <map>
#include <optional>
#include <vector>

namespace qcv {

// A bubble centred at xi with scale lambda.  epsilon records the scale the
// parameters live at: 1 for the x-scale bubble, eps after passing to
// y = x / eps.
struct BubbleParams {
  int N = 0;
  BigRational lambda{1};
  std::vector<BigRational> xi;  // empty means the origin
  BigRational epsilon{1};

  bool operator==(const BubbleParams& o) const;
  // In the configuration set: |xi| <= 1 and 1/2 < lambda < 3/2.
  bool in_configuration_set() const;
};

// Two normalisations of the constant in front of the bubble.  The printed one
// is [N(N-4)^2(N-2)(N+2)/2]^{-(N-4)/8}.  The one forced by
// Delta^2 u = ((N-4)/2) u^{(N+4)/(N-4)} is [2N(N-2)(N+2)]^{(N-4)/8}.
enum class GammaChoice { Printed, Equation };

// gamma = base^{exponent}; base is rational, the exponent is (N-4)/8 up to sign.
struct GammaForm {
  BigRational base;
  BigRational exponent;
};
GammaForm gamma_form(int N, GammaChoice choice = GammaChoice::Printed);
Real gamma_N(int N, GammaChoice choice = GammaChoice::Printed);

using RealPoint = std::vector<Real>;

// Partial derivative of u0 in the coordinates listed (any order 0..4; an
// index may repeat).
Real u0_derivative(const RealPoint& y, const BubbleParams& p,
                   const std::vector<int>& indices,
                   GammaChoice choice = GammaChoice::Printed);

// The same derivative of u0 / gamma, exactly.  Needs N even so the power
// (N-4)/2 is an integer.
BigRational profile_derivative_exact(const std::vector<BigRational>& y,
                                     const BubbleParams& p,
                                     const std::vector<int>& indices);

// Partial derivative of (lambda / (lambda^2 + |y - xi|^2))^kappa with
// kappa = twice_kappa / 2.  u0 is gamma times this with kappa = (N-4)/2 and
// u0^2 is gamma^2 times it with kappa = N-4.
Real bubble_power_derivative(const RealPoint& y, const BubbleParams& p, int twice_kappa,
                             const std::vector<int>& indices);

// All partial derivatives up to `order`, stored once per sorted multi-index.
class Jet {
 public:
  using Key = std::array<int, 4>;  // sorted indices padded with -1

  Jet(int dim, int order) : dim_(dim), order_(order) {}
  int dim() const { return dim_; }
  int order() const { return order_; }
  const Real& at(std::vector<int> indices) const;  // throws JetOrderError
  void set(std::vector<int> indices, Real v);
  const std::map<Key, Real>& entries() const { return d_; }
  static Key key_of(std::vector<int> indices);

 private:
  int dim_;
  int order_;
  std::map<Key, Real> d_;
};

// Every sorted multi-index of length 0..order over [0, N).
std::vector<std::vector<int>> multi_indices(int N, int order);

Jet u0_jet(const RealPoint& y, const BubbleParams& p, int order,
           GammaChoice choice = GammaChoice::Printed);

struct FlatResidual {
  Real bilaplacian;  // Delta^2 u0
  Real nonlinear;    // ((N-4)/2) u0^{(N+4)/(N-4)}
  Real residual;     // difference
  Real relative;     // |residual| / |nonlinear|
};
FlatResidual flat_residual(const RealPoint& y, const BubbleParams& p,
                           GammaChoice choice = GammaChoice::Printed);

// Passing between the x-scale bubble and v(y) = eps^{(N-4)/2} u(eps y):
// lambda' = lambda / eps and xi' = xi / eps.
BubbleParams to_y_scale(const BubbleParams& x_params, const BigRational& eps);
BubbleParams to_x_scale(const BubbleParams& y_params);

// Nested central differences with one Richardson step, taken in the last
// listed index of the derivative one order lower.
Real u0_finite_difference(const RealPoint& y, const BubbleParams& p,
                          const std::vector<int>& indices, const Real& h,
                          GammaChoice choice = GammaChoice::Printed);

// Worst relative gap, per derivative order 1..order, between closed forms and
// finite differences over all multi-indices at one point.  The gap is scaled
// by the largest derivative of that order at the point.
std::vector<Real> derivative_fd_gaps(const RealPoint& y, const BubbleParams& p, int order);

// Seeded random points with |y - xi| <= radius.
std::vector<RealPoint> random_points(int N, int count, std::uint64_t seed,
                                     double radius, const BubbleParams& p);

// The fourth-derivative product identity
//   u0 d_ijkk u0 = A d_ijkk(u0^2) + B d_ij u0 d_kk u0
//                  + C u0^2 |z|^2 delta_ij / (s^2 + |z|^2)^3
//                  - D u0^2 delta_ij / (s^2 + |z|^2)^2
// summed over k, with z = y - xi and scale s.  Taking s = lambda' makes it an
// identity; the variant with s = epsilon is kept for comparison.
struct IjkkCheck {
  Real lhs;
  Real rhs;
  Real relative_gap;
};
IjkkCheck ijkk_identity(const RealPoint& y, const BubbleParams& p, int i, int j,
                        const std::optional<BigRational>& scale = std::nullopt);

}  // namespace qcv
