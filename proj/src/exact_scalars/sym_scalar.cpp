// SPDX-License-Identifier: MIT
#include "qcv/errors.hpp"
#include "qcv/exact_scalars.hpp"

#include <sstream>

namespace qcv {

SymScalar::SymScalar(BigRational coeff, int pi_half, int sphere_power, int dim)
    : coeff_(std::move(coeff)),
      pi_half_(pi_half),
      sphere_power_(sphere_power),
      dim_(dim) {
  coeff_.canonicalize();
  normalize();
}

SymScalar SymScalar::sphere_symbol(int dim) { return SymScalar(1, 0, 1, dim); }

void SymScalar::normalize() {
  coeff_.canonicalize();
  if (coeff_ == 0) {
    pi_half_ = 0;
    sphere_power_ = 0;
  }
  if (sphere_power_ == 0) dim_ = 0;
}

int SymScalar::pi_power() const {
  if (pi_half_ % 2 != 0)
    throw std::domain_error("SymScalar carries an unpaired sqrt(pi) factor");
  return pi_half_ / 2;
}

bool SymScalar::like(const SymScalar& o) const {
  return pi_half_ == o.pi_half_ && sphere_power_ == o.sphere_power_ &&
         dim_ == o.dim_;
}

SymScalar SymScalar::operator*(const SymScalar& o) const {
  if (sphere_power_ != 0 && o.sphere_power_ != 0 && dim_ != o.dim_)
    throw std::domain_error("sphere symbols of different dimensions");
  int dim = sphere_power_ != 0 ? dim_ : o.dim_;
  return SymScalar(coeff_ * o.coeff_, pi_half_ + o.pi_half_,
                   sphere_power_ + o.sphere_power_, dim);
}

SymScalar SymScalar::operator/(const SymScalar& o) const {
  if (o.is_zero()) throw std::domain_error("SymScalar division by zero");
  if (sphere_power_ != 0 && o.sphere_power_ != 0 && dim_ != o.dim_)
    throw std::domain_error("sphere symbols of different dimensions");
  int dim = sphere_power_ != 0 ? dim_ : o.dim_;
  return SymScalar(coeff_ / o.coeff_, pi_half_ - o.pi_half_,
                   sphere_power_ - o.sphere_power_, dim);
}

SymScalar SymScalar::operator+(const SymScalar& o) const {
  if (is_zero()) return o;
  if (o.is_zero()) return *this;
  if (!like(o))
    throw UnlikeTermsError("cannot add " + str() + " and " + o.str());
  return SymScalar(coeff_ + o.coeff_, pi_half_, sphere_power_, dim_);
}

SymScalar SymScalar::operator-(const SymScalar& o) const { return *this + (-o); }

SymScalar SymScalar::operator-() const {
  return SymScalar(-coeff_, pi_half_, sphere_power_, dim_);
}

bool SymScalar::operator==(const SymScalar& o) const {
  return coeff_ == o.coeff_ && pi_half_ == o.pi_half_ &&
         sphere_power_ == o.sphere_power_ && dim_ == o.dim_;
}

SymScalar operator*(const BigRational& c, const SymScalar& s) {
  return SymScalar(c) * s;
}

SymScalar SymScalar::expand_sphere() const {
  SymScalar out(coeff_, pi_half_, 0, 0);
  if (sphere_power_ == 0) return out;
  SymScalar area = sphere_area(dim_);
  for (int k = 0; k < sphere_power_; ++k) out = out * area;
  for (int k = 0; k > sphere_power_; --k) out = out / area;
  return out;
}

Real SymScalar::to_real() const {
  SymScalar e = expand_sphere();
  Real v = qcv::to_real(e.coeff_);
  Real root_pi = boost::multiprecision::sqrt(boost::math::constants::pi<Real>());
  v *= boost::multiprecision::pow(root_pi, e.pi_half_);
  return v;
}

std::string SymScalar::str() const {
  std::ostringstream os;
  os << coeff_.get_str();
  if (pi_half_ != 0) {
    if (pi_half_ % 2 == 0)
      os << "*pi^" << pi_half_ / 2;
    else
      os << "*pi^(" << pi_half_ << "/2)";
  }
  if (sphere_power_ != 0) os << "*|S^" << dim_ - 1 << "|^" << sphere_power_;
  return os.str();
}

BigInt factorial(long n) {
  if (n < 0) throw PoleError("factorial of a negative integer");
  BigInt r;
  mpz_fac_ui(r.get_mpz_t(), static_cast<unsigned long>(n));
  return r;
}

SymScalar gamma_value(HalfInt x) {
  if (x.twice <= 0)
    throw PoleError("Gamma pole at nonpositive argument " +
                    x.value().get_str());
  if (x.is_integer()) return SymScalar(BigRational(factorial(x.twice / 2 - 1)));
  // Gamma(k + 1/2) = (2k)! / (4^k k!) * sqrt(pi)
  long k = (x.twice - 1) / 2;
  BigInt four_k;
  mpz_ui_pow_ui(four_k.get_mpz_t(), 4, static_cast<unsigned long>(k));
  BigRational c(factorial(2 * k), four_k * factorial(k));
  return SymScalar(c, 1);
}

SymScalar gamma_ratio(const std::vector<HalfInt>& num,
                      const std::vector<HalfInt>& den) {
  SymScalar r(1);
  for (const auto& x : num) r = r * gamma_value(x);
  for (const auto& x : den) r = r / gamma_value(x);
  return r;
}

SymScalar sphere_area(int N) {
  if (N < 1) throw DimensionError("sphere_area requires N >= 1");
  return SymScalar(2, N) / gamma_value(HalfInt{N});
}

Real to_real(const BigRational& q) {
  Real n, d;
  mpfr_set_z(n.backend().data(), q.get_num_mpz_t(), MPFR_RNDN);
  mpfr_set_z(d.backend().data(), q.get_den_mpz_t(), MPFR_RNDN);
  return n / d;
}

std::string to_decimal(const BigRational& q, int digits) {
  if (q == 0) return "0";
  BigInt num = abs(q.get_num());
  BigInt den = q.get_den();
  // Find e with 10^(digits-1) <= num*10^-e/den < 10^digits.
  long e = static_cast<long>(mpz_sizeinbase(num.get_mpz_t(), 10)) -
           static_cast<long>(mpz_sizeinbase(den.get_mpz_t(), 10)) -
           (digits - 1);
  BigInt scaled;
  BigInt lo, hi;
  mpz_ui_pow_ui(lo.get_mpz_t(), 10, static_cast<unsigned long>(digits - 1));
  hi = lo * 10;
  for (;;) {
    BigInt p;
    if (e >= 0) {
      mpz_ui_pow_ui(p.get_mpz_t(), 10, static_cast<unsigned long>(e));
      scaled = num / (den * p);
    } else {
      mpz_ui_pow_ui(p.get_mpz_t(), 10, static_cast<unsigned long>(-e));
      scaled = num * p / den;
    }
    if (scaled < lo) {
      --e;
    } else if (scaled >= hi) {
      ++e;
    } else {
      break;
    }
  }
  std::string s = scaled.get_str();
  long exp10 = e + digits - 1;
  std::string out = (q < 0 ? "-" : "");
  out += s.substr(0, 1);
  if (s.size() > 1) out += "." + s.substr(1);
  out += "e" + std::string(exp10 >= 0 ? "+" : "-") +
         std::to_string(exp10 >= 0 ? exp10 : -exp10);
  return out;
}

}  // namespace qcv
