// SPDX-License-Identifier: MIT
#include "qcv/errors.hpp"
#include "qcv/radial_integrals.hpp"

#include <cmath>
#include <sstream>

namespace qcv {

// ---------------------------------------------------------------- TauQ

int TauQ::degree() const {
  for (int k = 2; k >= 0; --k)
    if (q[k] != 0) return k;
  return -1;
}

TauQ TauQ::operator+(const TauQ& o) const {
  return TauQ(q[0] + o.q[0], q[1] + o.q[1], q[2] + o.q[2]);
}

TauQ TauQ::operator-(const TauQ& o) const {
  return TauQ(q[0] - o.q[0], q[1] - o.q[1], q[2] - o.q[2]);
}

TauQ TauQ::operator-() const { return TauQ(-q[0], -q[1], -q[2]); }

TauQ TauQ::operator*(const TauQ& o) const {
  std::array<BigRational, 5> r{0, 0, 0, 0, 0};
  for (int i = 0; i < 3; ++i)
    for (int j = 0; j < 3; ++j)
      if (q[i] != 0 && o.q[j] != 0) r[i + j] += q[i] * o.q[j];
  if (r[3] != 0 || r[4] != 0)
    throw std::domain_error("tau degree exceeds 2 in TauQ product");
  return TauQ(r[0], r[1], r[2]);
}

TauQ TauQ::operator*(const BigRational& c) const {
  return TauQ(q[0] * c, q[1] * c, q[2] * c);
}

TauQ TauQ::operator/(const BigRational& c) const {
  if (c == 0) throw std::domain_error("TauQ division by zero");
  return TauQ(q[0] / c, q[1] / c, q[2] / c);
}

BigRational TauQ::at(const BigRational& tau) const {
  return q[0] + tau * (q[1] + tau * q[2]);
}

std::string TauQ::str() const {
  std::ostringstream os;
  os << q[0].get_str() << " + (" << q[1].get_str() << ")*tau + ("
     << q[2].get_str() << ")*tau^2";
  return os.str();
}

// ---------------------------------------------------------------- SPoly

SPoly::SPoly(std::vector<TauQ> c) : c_(std::move(c)) { trim(); }

SPoly SPoly::monomial(TauQ c, int k) {
  std::vector<TauQ> v(static_cast<size_t>(k) + 1);
  v[static_cast<size_t>(k)] = std::move(c);
  return SPoly(std::move(v));
}

void SPoly::trim() {
  while (!c_.empty() && c_.back().is_zero()) c_.pop_back();
}

const TauQ& SPoly::coeff(int k) const {
  static const TauQ zero;
  if (k < 0 || k >= static_cast<int>(c_.size())) return zero;
  return c_[static_cast<size_t>(k)];
}

SPoly SPoly::operator+(const SPoly& o) const {
  std::vector<TauQ> r(std::max(c_.size(), o.c_.size()));
  for (size_t k = 0; k < r.size(); ++k)
    r[k] = coeff(static_cast<int>(k)) + o.coeff(static_cast<int>(k));
  return SPoly(std::move(r));
}

SPoly SPoly::operator-(const SPoly& o) const { return *this + o * BigRational(-1); }

SPoly SPoly::operator*(const SPoly& o) const {
  if (c_.empty() || o.c_.empty()) return SPoly();
  std::vector<TauQ> r(c_.size() + o.c_.size() - 1);
  for (size_t i = 0; i < c_.size(); ++i)
    for (size_t j = 0; j < o.c_.size(); ++j) r[i + j] += c_[i] * o.c_[j];
  return SPoly(std::move(r));
}

SPoly SPoly::operator*(const BigRational& c) const {
  std::vector<TauQ> r = c_;
  for (auto& t : r) t = t * c;
  return SPoly(std::move(r));
}

SPoly operator*(const BigRational& c, const SPoly& p) { return p * c; }

SPoly SPoly::shift(int k) const {
  if (c_.empty()) return SPoly();
  std::vector<TauQ> r(static_cast<size_t>(k), TauQ());
  r.insert(r.end(), c_.begin(), c_.end());
  return SPoly(std::move(r));
}

SPoly SPoly::derivative() const {
  if (c_.size() <= 1) return SPoly();
  std::vector<TauQ> r(c_.size() - 1);
  for (size_t k = 1; k < c_.size(); ++k)
    r[k - 1] = c_[k] * BigRational(static_cast<long>(k));
  return SPoly(std::move(r));
}

SPoly SPoly::tau_free() const {
  std::vector<TauQ> r = c_;
  for (auto& t : r) t = TauQ(t.q[0]);
  return SPoly(std::move(r));
}

// ---------------------------------------------------------------- FPoly

FPoly FPoly::standard() { return with_linear(-12000); }

FPoly FPoly::with_linear(BigRational c1) {
  FPoly f;
  f.c1 = std::move(c1);
  f.c2 = 2411;
  f.c3 = -135;
  f.c4 = 1;
  return f;
}

SPoly FPoly::poly() const {
  return SPoly({TauQ::tau(), TauQ(c1), TauQ(c2), TauQ(c3), TauQ(c4)});
}

SPoly FPoly::deriv(int k) const {
  SPoly p = poly();
  for (int i = 0; i < k; ++i) p = p.derivative();
  return p;
}

BigRational FPoly::eval_at(const BigRational& s, const BigRational& tau) const {
  return tau + s * (c1 + s * (c2 + s * (c3 + s * c4)));
}

double FPoly::eval(double s, double tau) const { return deriv_eval(0, s, tau); }

double FPoly::deriv_eval(int k, double s, double tau) const {
  double c[5] = {tau, c1.get_d(), c2.get_d(), c3.get_d(), c4.get_d()};
  double v = 0;
  for (int p = 4; p >= k; --p) {
    double fall = 1;
    for (int i = 0; i < k; ++i) fall *= (p - i);
    v = v * s + c[p] * fall;
  }
  return v;
}

// ---------------------------------------------------------------- radial

Real RadialTerm::value_at(const Real& lambda) const {
  return coeff.to_real() * boost::multiprecision::pow(lambda, lambda_exp);
}

RadialTerm radial_master(int a, HalfInt b) {
  // Convergence at 0 needs a > -1, at infinity 2b > a + 1.
  if (a <= -1) {
    throw DivergenceError("radial integral diverges at r = 0: need a > -1, got a = " +
                          std::to_string(a));
  }
  if (!(b.twice > a + 1)) {
    throw DivergenceError(
        "radial integral diverges at infinity: need b > (a+1)/2, got a = " +
        std::to_string(a) + ", b = " + b.value().get_str());
  }
  HalfInt x{a + 1};              // (a+1)/2
  HalfInt y{b.twice - (a + 1)};  // b - (a+1)/2
  RadialTerm t;
  t.coeff = gamma_ratio({x, y}, {b}) / SymScalar(2);
  t.lambda_exp = a + 1 - static_cast<int>(b.twice);
  return t;
}

SymScalar radial_master_at(int a, HalfInt b, const BigRational& lambda) {
  RadialTerm t = radial_master(a, b);
  BigRational p(1);
  BigRational base = t.lambda_exp >= 0 ? lambda : BigRational(1) / lambda;
  for (int i = 0; i < std::abs(t.lambda_exp); ++i) p *= base;
  return t.coeff * SymScalar(p);
}

LambdaSeries& LambdaSeries::operator+=(const LambdaSeries& o) {
  for (const auto& [e, v] : o.terms) {
    auto& slot = terms[e];
    for (int k = 0; k < 3; ++k) slot[k] = slot[k] + v[k];
  }
  return *this;
}

LambdaSeries LambdaSeries::operator*(const BigRational& c) const {
  LambdaSeries r;
  for (const auto& [e, v] : terms)
    for (int k = 0; k < 3; ++k) r.terms[e][k] = SymScalar(c) * v[k];
  return r;
}

LambdaSeries LambdaSeries::shifted(int k) const {
  LambdaSeries r;
  for (const auto& [e, v] : terms) r.terms[e + k] = v;
  return r;
}

bool LambdaSeries::operator==(const LambdaSeries& o) const {
  auto nonzero = [](const std::array<SymScalar, 3>& v) {
    return !(v[0].is_zero() && v[1].is_zero() && v[2].is_zero());
  };
  for (const auto& [e, v] : terms) {
    auto it = o.terms.find(e);
    if (it == o.terms.end()) {
      if (nonzero(v)) return false;
    } else if (!(v == it->second)) {
      return false;
    }
  }
  for (const auto& [e, v] : o.terms)
    if (!terms.count(e) && nonzero(v)) return false;
  return true;
}

LambdaSeries poly_radial_integral(const SPoly& P, int k, int m) {
  LambdaSeries out;
  for (int j = 0; j <= P.degree(); ++j) {
    const TauQ& c = P.coeff(j);
    if (c.is_zero()) continue;
    RadialTerm t;
    try {
      t = radial_master(k + 2 * j, HalfInt::integer(m));
    } catch (const DivergenceError& e) {
      throw DivergenceError(std::string(e.what()) + " (monomial s^" +
                            std::to_string(j) + " with r^" + std::to_string(k) +
                            "/(l^2+r^2)^" + std::to_string(m) + ")");
    }
    auto& slot = out.terms[t.lambda_exp];
    for (int p = 0; p < 3; ++p)
      if (c.q[p] != 0) slot[p] = slot[p] + SymScalar(c.q[p]) * t.coeff;
  }
  return out;
}

SymScalar energy_constant(int N) {
  if (N < 5) throw DimensionError("energy_constant requires N >= 5");
  RadialTerm t = radial_master(N - 1, HalfInt::integer(N));
  return SymScalar(rat(N - 4, N)) * SymScalar::sphere_symbol(N) * t.coeff;
}

}  // namespace qcv
