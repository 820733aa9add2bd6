// SPDX-License-Identifier: MIT
#include "qcv/errors.hpp"
#include "qcv/exact_scalars.hpp"

#include <cmath>
#include <memory>

namespace qcv {

QuadSurd::QuadSurd(BigRational a, BigRational b, BigInt d)
    : a_(std::move(a)), b_(std::move(b)), d_(std::move(d)) {
  if (d_ < 0) throw std::domain_error("QuadSurd radicand must be nonnegative");
  a_.canonicalize();
  b_.canonicalize();
}

void QuadSurd::check_field(const QuadSurd& o) const {
  if (d_ != o.d_ && b_ != 0 && o.b_ != 0)
    throw std::domain_error("QuadSurd operands live in different fields");
}

QuadSurd QuadSurd::operator+(const QuadSurd& o) const {
  check_field(o);
  return QuadSurd(a_ + o.a_, b_ + o.b_, b_ != 0 ? d_ : o.d_);
}

QuadSurd QuadSurd::operator-(const QuadSurd& o) const {
  check_field(o);
  return QuadSurd(a_ - o.a_, b_ - o.b_, b_ != 0 ? d_ : o.d_);
}

QuadSurd QuadSurd::operator*(const QuadSurd& o) const {
  check_field(o);
  const BigInt& d = b_ != 0 ? d_ : o.d_;
  return QuadSurd(a_ * o.a_ + b_ * o.b_ * BigRational(d), a_ * o.b_ + b_ * o.a_,
                  d);
}

QuadSurd QuadSurd::operator*(const BigRational& c) const {
  return QuadSurd(a_ * c, b_ * c, d_);
}

bool QuadSurd::operator==(const QuadSurd& o) const {
  return (*this - o).sign() == 0;
}

int QuadSurd::sign() const {
  int sa = sgn(a_);
  int sb = (d_ == 0) ? 0 : sgn(b_);
  if (sb == 0) return sa;
  if (sa == 0) return sb;
  if (sa == sb) return sa;
  BigRational lhs = a_ * a_;
  BigRational rhs = b_ * b_ * BigRational(d_);
  if (lhs > rhs) return sa;
  if (lhs < rhs) return sb;
  return 0;
}

Real QuadSurd::to_real() const {
  Real d;
  mpfr_set_z(d.backend().data(), d_.get_mpz_t(), MPFR_RNDN);
  return qcv::to_real(a_) + qcv::to_real(b_) * boost::multiprecision::sqrt(d);
}

mpfr_prec_t digits_to_bits(int digits) {
  return static_cast<mpfr_prec_t>(std::ceil(digits * 3.3219280948873623)) + 16;
}

Interval::Interval(mpfr_prec_t bits) : bits_(bits) {
  mpfr_init2(lo_, bits_);
  mpfr_init2(hi_, bits_);
  mpfr_set_zero(lo_, 1);
  mpfr_set_zero(hi_, 1);
}

Interval::Interval(const BigRational& q, mpfr_prec_t bits) : Interval(bits) {
  mpfr_set_q(lo_, q.get_mpq_t(), MPFR_RNDD);
  mpfr_set_q(hi_, q.get_mpq_t(), MPFR_RNDU);
}

Interval::Interval(const Interval& o) : Interval(o.bits_) {
  mpfr_set(lo_, o.lo_, MPFR_RNDD);
  mpfr_set(hi_, o.hi_, MPFR_RNDU);
}

Interval& Interval::operator=(const Interval& o) {
  if (this == &o) return *this;
  bits_ = o.bits_;
  mpfr_set_prec(lo_, bits_);
  mpfr_set_prec(hi_, bits_);
  mpfr_set(lo_, o.lo_, MPFR_RNDD);
  mpfr_set(hi_, o.hi_, MPFR_RNDU);
  return *this;
}

Interval::~Interval() {
  mpfr_clear(lo_);
  mpfr_clear(hi_);
}

Interval Interval::sqrt_of(const BigInt& n, mpfr_prec_t bits) {
  if (n < 0) throw std::domain_error("square root of a negative integer");
  Interval r(bits);
  mpfr_set_z(r.lo_, n.get_mpz_t(), MPFR_RNDD);
  mpfr_set_z(r.hi_, n.get_mpz_t(), MPFR_RNDU);
  mpfr_sqrt(r.lo_, r.lo_, MPFR_RNDD);
  mpfr_sqrt(r.hi_, r.hi_, MPFR_RNDU);
  return r;
}

Interval Interval::operator+(const Interval& o) const {
  Interval r(std::max(bits_, o.bits_));
  mpfr_add(r.lo_, lo_, o.lo_, MPFR_RNDD);
  mpfr_add(r.hi_, hi_, o.hi_, MPFR_RNDU);
  return r;
}

Interval Interval::operator-(const Interval& o) const {
  Interval r(std::max(bits_, o.bits_));
  mpfr_sub(r.lo_, lo_, o.hi_, MPFR_RNDD);
  mpfr_sub(r.hi_, hi_, o.lo_, MPFR_RNDU);
  return r;
}

Interval Interval::operator*(const Interval& o) const {
  mpfr_prec_t bits = std::max(bits_, o.bits_);
  Interval r(bits);
  mpfr_t t;
  mpfr_init2(t, bits);
  const mpfr_srcptr a[2] = {lo_, hi_};
  const mpfr_srcptr b[2] = {o.lo_, o.hi_};
  bool first = true;
  for (auto x : a) {
    for (auto y : b) {
      mpfr_mul(t, x, y, MPFR_RNDD);
      if (first || mpfr_less_p(t, r.lo_)) mpfr_set(r.lo_, t, MPFR_RNDD);
      mpfr_mul(t, x, y, MPFR_RNDU);
      if (first || mpfr_greater_p(t, r.hi_)) mpfr_set(r.hi_, t, MPFR_RNDU);
      first = false;
    }
  }
  mpfr_clear(t);
  return r;
}

Interval Interval::operator/(const Interval& o) const {
  if (o.sign() == 0) throw std::domain_error("interval divisor contains zero");
  mpfr_prec_t bits = std::max(bits_, o.bits_);
  Interval inv(bits);
  mpfr_ui_div(inv.lo_, 1, o.hi_, MPFR_RNDD);
  mpfr_ui_div(inv.hi_, 1, o.lo_, MPFR_RNDU);
  return *this * inv;
}

int Interval::sign() const {
  if (mpfr_sgn(lo_) > 0) return 1;
  if (mpfr_sgn(hi_) < 0) return -1;
  return 0;
}

static std::string mpfr_str(mpfr_srcptr x, int digits, mpfr_rnd_t rnd) {
  char* buf = nullptr;
  std::string fmt = "%." + std::to_string(digits - 1) + "R*e";
  mpfr_asprintf(&buf, fmt.c_str(), rnd, x);
  std::string s(buf);
  mpfr_free_str(buf);
  return s;
}

std::string Interval::lo_str(int digits) const {
  return mpfr_str(lo_, digits, MPFR_RNDD);
}

std::string Interval::hi_str(int digits) const {
  return mpfr_str(hi_, digits, MPFR_RNDU);
}

Real Interval::midpoint() const {
  Real a, b;
  mpfr_set(a.backend().data(), lo_, MPFR_RNDN);
  mpfr_set(b.backend().data(), hi_, MPFR_RNDN);
  return (a + b) / 2;
}

}  // namespace qcv
