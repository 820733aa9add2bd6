// SPDX-License-Identifier: MIT
// Closed-form radial integrals of the type  int_0^inf P(r^2) r^a/(l^2+r^2)^b dr
// where P is a polynomial whose coefficients are quadratic in tau.
#pragma once

#include "qcv/exact_scalars.hpp"

#include <array>
#include <map>
#include <string>
#include <vector>

namespace qcv {

// q0 + q1*tau + q2*tau^2 with exact rational coefficients.
struct TauQ {
  std::array<BigRational, 3> q{0, 0, 0};

  TauQ() = default;
  TauQ(BigRational c0, BigRational c1 = 0, BigRational c2 = 0)
      : q{std::move(c0), std::move(c1), std::move(c2)} {}
  static TauQ tau() { return TauQ(0, 1, 0); }

  bool is_zero() const { return q[0] == 0 && q[1] == 0 && q[2] == 0; }
  int degree() const;  // -1 for zero
  TauQ operator+(const TauQ& o) const;
  TauQ operator-(const TauQ& o) const;
  TauQ operator-() const;
  TauQ operator*(const TauQ& o) const;  // throws past tau^2
  TauQ operator*(const BigRational& c) const;
  TauQ operator/(const BigRational& c) const;
  TauQ& operator+=(const TauQ& o) { return *this = *this + o; }
  bool operator==(const TauQ& o) const { return q == o.q; }
  bool operator!=(const TauQ& o) const { return !(q == o.q); }
  BigRational at(const BigRational& tau) const;
  std::string str() const;
};

// Polynomial in s = r^2 with TauQ coefficients; index = power of s.
class SPoly {
 public:
  SPoly() = default;
  explicit SPoly(std::vector<TauQ> c);
  static SPoly monomial(TauQ c, int k);
  static SPoly constant(TauQ c) { return monomial(std::move(c), 0); }

  int degree() const { return static_cast<int>(c_.size()) - 1; }
  const TauQ& coeff(int k) const;
  const std::vector<TauQ>& coeffs() const { return c_; }

  SPoly operator+(const SPoly& o) const;
  SPoly operator-(const SPoly& o) const;
  SPoly operator*(const SPoly& o) const;
  SPoly operator*(const BigRational& c) const;
  SPoly shift(int k) const;  // multiply by s^k
  SPoly derivative() const;
  // Drop the tau-dependent part of every coefficient (tau set to 0).
  SPoly tau_free() const;

 private:
  void trim();
  std::vector<TauQ> c_;
};

SPoly operator*(const BigRational& c, const SPoly& p);

// f(s) = tau + c1 s + c2 s^2 + c3 s^3 + s^4, tau kept formal.
struct FPoly {
  BigRational c1;
  BigRational c2;
  BigRational c3;
  BigRational c4{1};

  // The reading in which the printed energy polynomial is reproduced.
  static FPoly standard();
  // The same quartic with the alternative linear coefficient.
  static FPoly with_linear(BigRational c1);

  SPoly poly() const;      // f
  SPoly deriv(int k) const;  // f^(k)
  BigRational eval_at(const BigRational& s, const BigRational& tau) const;
  double eval(double s, double tau) const;
  double deriv_eval(int k, double s, double tau) const;
};

// Result of a single master integral: coeff * lambda^lambda_exp.
struct RadialTerm {
  SymScalar coeff;
  int lambda_exp = 0;
  Real value_at(const Real& lambda) const;
};

// int_0^inf r^a / (lambda^2 + r^2)^b dr
//   = lambda^{a+1-2b} Gamma((a+1)/2) Gamma(b-(a+1)/2) / (2 Gamma(b)).
// b lives on the half-integer lattice.
RadialTerm radial_master(int a, HalfInt b);

// Exact evaluation at a rational lambda when the Gamma ratio is rational
// up to the same pi power; returns coeff * lambda^exp as a SymScalar.
SymScalar radial_master_at(int a, HalfInt b, const BigRational& lambda);

// Map from lambda exponent to a tau-quadratic whose coefficients are
// SymScalars sharing one pi power.
struct LambdaSeries {
  std::map<int, std::array<SymScalar, 3>> terms;

  LambdaSeries& operator+=(const LambdaSeries& o);
  LambdaSeries operator*(const BigRational& c) const;
  LambdaSeries shifted(int k) const;  // multiply by lambda^k
  bool operator==(const LambdaSeries& o) const;
};

// int_0^inf P(r^2) r^k / (lambda^2 + r^2)^m dr with lambda symbolic.
LambdaSeries poly_radial_integral(const SPoly& P, int k, int m);

// ((N-4)/N) |S^{N-1}| int_0^inf r^{N-1}/(1+r^2)^N dr.
SymScalar energy_constant(int N);

}  // namespace qcv
