// SPDX-License-Identifier: MIT
// Exact scalar algebra: big rationals, Gamma values on the half-integer
// lattice, powers of pi, and the formal sphere-area symbol |S^{N-1}|.
#pragma once

#include <gmpxx.h>
#include <mpfr.h>

#include <boost/multiprecision/mpfr.hpp>

#include <string>
#include <vector>

namespace qcv {

using BigInt = mpz_class;
using BigRational = mpq_class;

// Canonical p/q; mpq_class leaves a two-argument construction unreduced.
inline BigRational rat(const BigInt& p, const BigInt& q) {
  BigRational r(p, q);
  r.canonicalize();
  return r;
}

// Working precision for the 64-digit numeric routes.  Sixteen guard digits
// keep the exported 64 digits clean after a few dozen operations.
using Real = boost::multiprecision::number<
    boost::multiprecision::mpfr_float_backend<80>,
    boost::multiprecision::et_off>;

// A half-integer stored as twice its value, so 5/2 is HalfInt{5}.
struct HalfInt {
  long twice;
  static HalfInt integer(long n) { return HalfInt{2 * n}; }
  static HalfInt half(long twice_value) { return HalfInt{twice_value}; }
  bool is_integer() const { return twice % 2 == 0; }
  BigRational value() const { return BigRational(twice, 2); }
};

// coeff * pi^(pi_half/2) * |S^{dim-1}|^sphere_power.
//
// The sqrt(pi) slot is internal: half-integer Gamma values carry it and it
// must pair off before pi_power() is read.  Zero has a unique representation
// with every exponent cleared.
class SymScalar {
 public:
  SymScalar() = default;
  explicit SymScalar(BigRational coeff, int pi_half = 0, int sphere_power = 0,
                     int dim = 0);
  static SymScalar sphere_symbol(int dim);

  const BigRational& coeff() const { return coeff_; }
  int pi_half_power() const { return pi_half_; }
  int pi_power() const;  // throws if a lone sqrt(pi) remains
  int sphere_power() const { return sphere_power_; }
  int dim() const { return dim_; }
  bool is_zero() const { return coeff_ == 0; }
  bool is_rational() const { return pi_half_ == 0 && sphere_power_ == 0; }
  int sign() const { return sgn(coeff_); }

  // Replace |S^{N-1}| by 2 pi^{N/2} / Gamma(N/2).
  SymScalar expand_sphere() const;

  SymScalar operator*(const SymScalar& o) const;
  SymScalar operator/(const SymScalar& o) const;
  SymScalar operator+(const SymScalar& o) const;  // like terms only
  SymScalar operator-(const SymScalar& o) const;
  SymScalar operator-() const;
  SymScalar& operator+=(const SymScalar& o) { return *this = *this + o; }
  SymScalar& operator*=(const SymScalar& o) { return *this = *this * o; }
  bool operator==(const SymScalar& o) const;
  bool operator!=(const SymScalar& o) const { return !(*this == o); }
  bool like(const SymScalar& o) const;

  Real to_real() const;
  std::string str() const;

 private:
  void normalize();
  BigRational coeff_{0};
  int pi_half_ = 0;
  int sphere_power_ = 0;
  int dim_ = 0;
};

SymScalar operator*(const BigRational& c, const SymScalar& s);

BigInt factorial(long n);

// Gamma(x) for x on the positive half-integer lattice.
SymScalar gamma_value(HalfInt x);

// prod Gamma(num) / prod Gamma(den).
SymScalar gamma_ratio(const std::vector<HalfInt>& num,
                      const std::vector<HalfInt>& den);

// 2 pi^{N/2} / Gamma(N/2), fully expanded.
SymScalar sphere_area(int N);

struct DimConstants {
  int N = 0;
  BigRational a_N;
  BigRational b_N;
  BigRational gammaN_base;  // N(N-4)^2(N-2)(N+2)/2 as printed
  SymScalar E;
};

// The coefficients of S g and Ric in the second-order part of the Paneitz
// operator.
BigRational paneitz_a(int N);
BigRational paneitz_b(int N);

// Populates every field; E comes from the radial-integrals module.
DimConstants dim_constants(int N);

// Decimal rendering of an exact rational with `digits` significant digits,
// computed by scaled-integer division (truncation toward zero).
std::string to_decimal(const BigRational& q, int digits = 64);

// Real approximation of a rational at the working precision.
Real to_real(const BigRational& q);

// Exact element a + b*sqrt(d) of Q(sqrt(d)) with d a nonnegative integer.
class QuadSurd {
 public:
  QuadSurd() = default;
  QuadSurd(BigRational a, BigRational b, BigInt d);
  static QuadSurd rational(BigRational a, BigInt d) {
    return QuadSurd(std::move(a), 0, std::move(d));
  }
  const BigRational& a() const { return a_; }
  const BigRational& b() const { return b_; }
  const BigInt& d() const { return d_; }

  QuadSurd operator+(const QuadSurd& o) const;
  QuadSurd operator-(const QuadSurd& o) const;
  QuadSurd operator*(const QuadSurd& o) const;
  QuadSurd operator*(const BigRational& c) const;
  bool operator==(const QuadSurd& o) const;

  // Exact sign, decided by comparing a^2 with b^2 d when signs disagree.
  int sign() const;
  Real to_real() const;

 private:
  void check_field(const QuadSurd& o) const;
  BigRational a_{0};
  BigRational b_{0};
  BigInt d_{0};
};

// Outward-rounded interval with MPFR endpoints at an explicit precision.
class Interval {
 public:
  explicit Interval(mpfr_prec_t bits);
  Interval(const BigRational& q, mpfr_prec_t bits);
  Interval(const Interval& o);
  Interval& operator=(const Interval& o);
  ~Interval();

  static Interval sqrt_of(const BigInt& n, mpfr_prec_t bits);

  Interval operator+(const Interval& o) const;
  Interval operator-(const Interval& o) const;
  Interval operator*(const Interval& o) const;
  Interval operator/(const Interval& o) const;  // divisor must exclude 0

  // -1 or +1 when the interval excludes zero, 0 when undecided.
  int sign() const;
  mpfr_prec_t precision() const { return bits_; }
  std::string lo_str(int digits) const;
  std::string hi_str(int digits) const;
  Real midpoint() const;

 private:
  mpfr_prec_t bits_;
  mpfr_t lo_;
  mpfr_t hi_;
};

// Bits needed for a given count of decimal digits, with a small guard.
mpfr_prec_t digits_to_bits(int digits);

}  // namespace qcv
