// SPDX-License-Identifier: MIT
// Truncated multivariate Taylor polynomials with working-precision
// coefficients, and square matrices of them.
#pragma once

#include "qcv/exact_scalars.hpp"

#include <memory>
#include <vector>

namespace qcv {

// Monomials in `vars` variables of total degree <= `degree`, graded, with a
// product table and per-variable derivative tables.  Shared between all
// polynomials of the same shape.
class TaylorSpace {
 public:
  static std::shared_ptr<const TaylorSpace> get(int vars, int degree);

  int vars() const { return vars_; }
  int degree() const { return degree_; }
  int size() const { return static_cast<int>(exps_.size()); }
  const std::vector<int>& exponents(int m) const { return exps_[static_cast<size_t>(m)]; }
  int index_of(const std::vector<int>& e) const;  // -1 if past the degree
  int total_degree(int m) const { return deg_[static_cast<size_t>(m)]; }

  struct Term {
    int a, b, c;  // coefficient c += a-th * b-th
  };
  const std::vector<Term>& products() const { return prod_; }
  struct Shift {
    int from, to;
    int factor;
  };
  const std::vector<Shift>& derivative(int v) const { return deriv_[static_cast<size_t>(v)]; }

  TaylorSpace(int vars, int degree);

 private:
  int vars_, degree_;
  std::vector<std::vector<int>> exps_;
  std::vector<int> deg_;
  std::vector<Term> prod_;
  std::vector<std::vector<Shift>> deriv_;
};

// sum_m c_m * delta^{e_m} around an implicit base point.
class Taylor {
 public:
  Taylor() = default;
  explicit Taylor(std::shared_ptr<const TaylorSpace> space);
  static Taylor constant(std::shared_ptr<const TaylorSpace> space, const Real& c);
  // base + delta_v.
  static Taylor variable(std::shared_ptr<const TaylorSpace> space, int v, const Real& base);

  const TaylorSpace& space() const { return *sp_; }
  const std::shared_ptr<const TaylorSpace>& space_ptr() const { return sp_; }
  const Real& value() const { return c_[0]; }
  const Real& coeff(int m) const { return c_[static_cast<size_t>(m)]; }
  Real& coeff(int m) { return c_[static_cast<size_t>(m)]; }
  // The partial derivative at the base point, exponent-vector form.
  Real partial(const std::vector<int>& e) const;

  Taylor operator+(const Taylor& o) const;
  Taylor operator-(const Taylor& o) const;
  Taylor operator-() const;
  Taylor operator*(const Taylor& o) const;
  Taylor operator*(const Real& s) const;
  Taylor& operator+=(const Taylor& o);
  Taylor& operator-=(const Taylor& o);
  Taylor& operator*=(const Real& s);
  void add_product(const Taylor& a, const Taylor& b);  // *this += a * b

  Taylor d(int v) const;  // derivative in variable v
  Real l1_norm() const;
  Real l1_norm_nonconstant() const;

 private:
  std::shared_ptr<const TaylorSpace> sp_;
  std::vector<Real> c_;
};

Taylor operator*(const Real& s, const Taylor& t);

// p(x) for a polynomial with rational coefficients, by Horner.
Taylor compose_poly(const std::vector<BigRational>& coeffs, const Taylor& x);
// x^{-kappa} with kappa = twice_kappa / 2 and x(base) > 0, by the binomial
// series in (x - x0) / x0, exact to the truncation degree.
Taylor negative_power(const Taylor& x, int twice_kappa);

// Dense square matrix of Taylor polynomials.
class TaylorMatrix {
 public:
  TaylorMatrix() = default;
  TaylorMatrix(int n, std::shared_ptr<const TaylorSpace> space);
  static TaylorMatrix identity(int n, std::shared_ptr<const TaylorSpace> space);

  int n() const { return n_; }
  Taylor& operator()(int i, int j) { return e_[static_cast<size_t>(i * n_ + j)]; }
  const Taylor& operator()(int i, int j) const { return e_[static_cast<size_t>(i * n_ + j)]; }

  TaylorMatrix operator+(const TaylorMatrix& o) const;
  TaylorMatrix operator-(const TaylorMatrix& o) const;
  TaylorMatrix operator*(const TaylorMatrix& o) const;
  TaylorMatrix operator*(const Real& s) const;
  TaylorMatrix d(int v) const;
  Taylor trace() const;
  TaylorMatrix transpose() const;
  // Max row sum of coefficient l1 norms; submultiplicative under truncation.
  Real norm() const;
  Real norm_constant() const;
  Real norm_nonconstant() const;

 private:
  int n_ = 0;
  std::vector<Taylor> e_;
};

struct ExpResult {
  TaylorMatrix exp_plus;   // e^{A}
  TaylorMatrix exp_minus;  // e^{-A}
  int terms = 0;
  double remainder_bound = 0;  // bound on the dropped tail, both series
};
// e^{A} and e^{-A} by the power series, keeping the order of factors.  The
// series stops once the tail bound drops below rel_tol * max(|A|, 1e-300).
// Throws AccuracyError when the constant part has norm above 1.
ExpResult matrix_exponential(const TaylorMatrix& a, double rel_tol = 1e-30);

}  // namespace qcv
