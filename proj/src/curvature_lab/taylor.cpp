// SPDX-License-Identifier: MIT
// Truncated Taylor arithmetic.  The product kernel works on the raw MPFR
// values to avoid a temporary per coefficient pair.
#include "qcv/taylor.hpp"
#include "qcv/errors.hpp"

#include <cmath>
#include <map>
#include <mutex>

namespace qcv {

// ---------------------------------------------------------------- space

TaylorSpace::TaylorSpace(int vars, int degree) : vars_(vars), degree_(degree) {
  // Graded enumeration: all exponent vectors of degree 0, then 1, ...
  std::vector<int> e(static_cast<size_t>(vars), 0);
  for (int d = 0; d <= degree; ++d) {
    std::vector<std::vector<int>> layer;
    std::vector<int> cur(static_cast<size_t>(vars), 0);
    // Recursive fill of `d` units over the variables.
    auto fill = [&](auto&& self, int v, int left) -> void {
      if (v == vars - 1) {
        cur[static_cast<size_t>(v)] = left;
        layer.push_back(cur);
        return;
      }
      for (int k = left; k >= 0; --k) {
        cur[static_cast<size_t>(v)] = k;
        self(self, v + 1, left - k);
      }
    };
    if (vars == 0) {
      if (d == 0) layer.push_back({});
    } else {
      fill(fill, 0, d);
    }
    for (auto& x : layer) {
      exps_.push_back(std::move(x));
      deg_.push_back(d);
    }
  }
  std::map<std::vector<int>, int> index;
  for (int m = 0; m < size(); ++m) index[exps_[static_cast<size_t>(m)]] = m;
  for (int a = 0; a < size(); ++a)
    for (int b = 0; b < size(); ++b) {
      if (deg_[static_cast<size_t>(a)] + deg_[static_cast<size_t>(b)] > degree) continue;
      std::vector<int> s(static_cast<size_t>(vars));
      for (int v = 0; v < vars; ++v)
        s[static_cast<size_t>(v)] = exps_[static_cast<size_t>(a)][static_cast<size_t>(v)] +
                                    exps_[static_cast<size_t>(b)][static_cast<size_t>(v)];
      prod_.push_back({a, b, index.at(s)});
    }
  deriv_.resize(static_cast<size_t>(vars));
  for (int v = 0; v < vars; ++v)
    for (int m = 0; m < size(); ++m) {
      const int k = exps_[static_cast<size_t>(m)][static_cast<size_t>(v)];
      if (k == 0) continue;
      auto t = exps_[static_cast<size_t>(m)];
      --t[static_cast<size_t>(v)];
      deriv_[static_cast<size_t>(v)].push_back({m, index.at(t), k});
    }
}

std::shared_ptr<const TaylorSpace> TaylorSpace::get(int vars, int degree) {
  static std::mutex mu;
  static std::map<std::pair<int, int>, std::shared_ptr<const TaylorSpace>> cache;
  std::lock_guard<std::mutex> lock(mu);
  auto& slot = cache[{vars, degree}];
  if (!slot) slot = std::make_shared<const TaylorSpace>(vars, degree);
  return slot;
}

int TaylorSpace::index_of(const std::vector<int>& e) const {
  int d = 0;
  for (int x : e) d += x;
  if (d > degree_) return -1;
  for (int m = 0; m < size(); ++m)
    if (deg_[static_cast<size_t>(m)] == d && exps_[static_cast<size_t>(m)] == e) return m;
  return -1;
}

// ---------------------------------------------------------------- Taylor

Taylor::Taylor(std::shared_ptr<const TaylorSpace> space)
    : sp_(std::move(space)), c_(static_cast<size_t>(sp_->size()), Real(0)) {}

Taylor Taylor::constant(std::shared_ptr<const TaylorSpace> space, const Real& c) {
  Taylor t(std::move(space));
  t.c_[0] = c;
  return t;
}

Taylor Taylor::variable(std::shared_ptr<const TaylorSpace> space, int v, const Real& base) {
  Taylor t(space);
  t.c_[0] = base;
  std::vector<int> e(static_cast<size_t>(space->vars()), 0);
  e[static_cast<size_t>(v)] = 1;
  if (space->degree() >= 1) t.c_[static_cast<size_t>(space->index_of(e))] = 1;
  return t;
}

Real Taylor::partial(const std::vector<int>& e) const {
  const int m = sp_->index_of(e);
  if (m < 0) throw JetOrderError("derivative order exceeds the Taylor degree");
  Real f = 1;
  for (int k : e)
    for (int i = 2; i <= k; ++i) f *= i;
  return c_[static_cast<size_t>(m)] * f;
}

Taylor Taylor::operator+(const Taylor& o) const {
  Taylor r = *this;
  r += o;
  return r;
}

Taylor Taylor::operator-(const Taylor& o) const {
  Taylor r = *this;
  r -= o;
  return r;
}

Taylor Taylor::operator-() const {
  Taylor r = *this;
  for (auto& x : r.c_) x = -x;
  return r;
}

Taylor& Taylor::operator+=(const Taylor& o) {
  for (size_t i = 0; i < c_.size(); ++i) c_[i] += o.c_[i];
  return *this;
}

Taylor& Taylor::operator-=(const Taylor& o) {
  for (size_t i = 0; i < c_.size(); ++i) c_[i] -= o.c_[i];
  return *this;
}

Taylor& Taylor::operator*=(const Real& s) {
  for (auto& x : c_) x *= s;
  return *this;
}

Taylor Taylor::operator*(const Real& s) const {
  Taylor r = *this;
  r *= s;
  return r;
}

Taylor operator*(const Real& s, const Taylor& t) { return t * s; }

void Taylor::add_product(const Taylor& a, const Taylor& b) {
  for (const auto& t : sp_->products()) {
    mpfr_srcptr x = a.c_[static_cast<size_t>(t.a)].backend().data();
    mpfr_srcptr y = b.c_[static_cast<size_t>(t.b)].backend().data();
    if (mpfr_zero_p(x) || mpfr_zero_p(y)) continue;
    mpfr_ptr c = c_[static_cast<size_t>(t.c)].backend().data();
    mpfr_fma(c, x, y, c, MPFR_RNDN);
  }
}

Taylor Taylor::operator*(const Taylor& o) const {
  Taylor r(sp_);
  r.add_product(*this, o);
  return r;
}

Taylor Taylor::d(int v) const {
  Taylor r(sp_);
  for (const auto& s : sp_->derivative(v))
    r.c_[static_cast<size_t>(s.to)] = c_[static_cast<size_t>(s.from)] * s.factor;
  return r;
}

Real Taylor::l1_norm() const {
  Real s = 0;
  for (const auto& x : c_) s += abs(x);
  return s;
}

Real Taylor::l1_norm_nonconstant() const { return l1_norm() - abs(c_[0]); }

Taylor compose_poly(const std::vector<BigRational>& coeffs, const Taylor& x) {
  Taylor r(x.space_ptr());
  for (auto it = coeffs.rbegin(); it != coeffs.rend(); ++it) {
    r = r * x;
    r.coeff(0) += to_real(*it);
  }
  return r;
}

Taylor negative_power(const Taylor& x, int twice_kappa) {
  const Real x0 = x.value();
  if (!(x0 > 0)) throw PreconditionError("negative_power needs a positive base value");
  Taylor w = x;
  w.coeff(0) = 0;
  w *= Real(1) / x0;
  // sum_j binom(-kappa, j) w^j, truncated at the degree.
  const Real kappa = Real(twice_kappa) / 2;
  Taylor sum = Taylor::constant(x.space_ptr(), 1);
  Taylor pw = Taylor::constant(x.space_ptr(), 1);
  Real binom = 1;
  for (int j = 1; j <= x.space().degree(); ++j) {
    pw = pw * w;
    binom *= (-kappa - (j - 1)) / j;
    sum += pw * binom;
  }
  return sum * pow(x0, -kappa);
}

// ---------------------------------------------------------------- matrices

TaylorMatrix::TaylorMatrix(int n, std::shared_ptr<const TaylorSpace> space)
    : n_(n), e_(static_cast<size_t>(n * n), Taylor(std::move(space))) {}

TaylorMatrix TaylorMatrix::identity(int n, std::shared_ptr<const TaylorSpace> space) {
  TaylorMatrix m(n, space);
  for (int i = 0; i < n; ++i) m(i, i).coeff(0) = 1;
  return m;
}

TaylorMatrix TaylorMatrix::operator+(const TaylorMatrix& o) const {
  TaylorMatrix r = *this;
  for (size_t i = 0; i < e_.size(); ++i) r.e_[i] += o.e_[i];
  return r;
}

TaylorMatrix TaylorMatrix::operator-(const TaylorMatrix& o) const {
  TaylorMatrix r = *this;
  for (size_t i = 0; i < e_.size(); ++i) r.e_[i] -= o.e_[i];
  return r;
}

TaylorMatrix TaylorMatrix::operator*(const TaylorMatrix& o) const {
  TaylorMatrix r(n_, e_.front().space_ptr());
  for (int i = 0; i < n_; ++i)
    for (int k = 0; k < n_; ++k)
      for (int j = 0; j < n_; ++j) r(i, j).add_product((*this)(i, k), o(k, j));
  return r;
}

TaylorMatrix TaylorMatrix::operator*(const Real& s) const {
  TaylorMatrix r = *this;
  for (auto& x : r.e_) x *= s;
  return r;
}

TaylorMatrix TaylorMatrix::d(int v) const {
  TaylorMatrix r = *this;
  for (auto& x : r.e_) x = x.d(v);
  return r;
}

Taylor TaylorMatrix::trace() const {
  Taylor t(e_.front().space_ptr());
  for (int i = 0; i < n_; ++i) t += (*this)(i, i);
  return t;
}

TaylorMatrix TaylorMatrix::transpose() const {
  TaylorMatrix r = *this;
  for (int i = 0; i < n_; ++i)
    for (int j = 0; j < n_; ++j) r(i, j) = (*this)(j, i);
  return r;
}

Real TaylorMatrix::norm() const {
  Real best = 0;
  for (int i = 0; i < n_; ++i) {
    Real row = 0;
    for (int j = 0; j < n_; ++j) row += (*this)(i, j).l1_norm();
    best = std::max(best, row);
  }
  return best;
}

Real TaylorMatrix::norm_constant() const {
  Real best = 0;
  for (int i = 0; i < n_; ++i) {
    Real row = 0;
    for (int j = 0; j < n_; ++j) row += abs((*this)(i, j).value());
    best = std::max(best, row);
  }
  return best;
}

Real TaylorMatrix::norm_nonconstant() const {
  Real best = 0;
  for (int i = 0; i < n_; ++i) {
    Real row = 0;
    for (int j = 0; j < n_; ++j) row += (*this)(i, j).l1_norm_nonconstant();
    best = std::max(best, row);
  }
  return best;
}

namespace {

// Bound on sum_{k > K} |A^k| / k! when A = A0 + D with |A0| <= a, |D| <= d and
// D^{deg+1} = 0 in the truncated algebra: |A^k| <= sum_{j <= deg} C(k,j) a^{k-j} d^j.
double tail_bound(double a, double d, int deg, int K) {
  double total = 0;
  for (int k = K + 1; k < K + 400; ++k) {
    double term = 0, binom = 1;
    for (int j = 0; j <= std::min(k, deg); ++j) {
      if (j > 0) binom *= static_cast<double>(k - j + 1) / j;
      term += binom * std::pow(a, k - j) * std::pow(d, j);
    }
    term /= std::tgamma(k + 1.0);
    total += term;
    if (term < 1e-300 || !std::isfinite(term)) break;
  }
  return total;
}

}  // namespace

ExpResult matrix_exponential(const TaylorMatrix& a, double rel_tol) {
  const double a0 = a.norm_constant().convert_to<double>();
  const double d0 = a.norm_nonconstant().convert_to<double>();
  if (a0 > 1) throw AccuracyError("matrix exponential series: |h| exceeds 1");
  const int deg = a.n() > 0 ? a(0, 0).space().degree() : 0;
  const double target = rel_tol * std::max(a0 + d0, 1e-250);
  auto sp = a(0, 0).space_ptr();
  ExpResult r;
  r.exp_plus = TaylorMatrix::identity(a.n(), sp);
  r.exp_minus = TaylorMatrix::identity(a.n(), sp);
  TaylorMatrix term = TaylorMatrix::identity(a.n(), sp);
  int k = 0;
  while (true) {
    ++k;
    term = term * a * (Real(1) / k);
    r.exp_plus = r.exp_plus + term;
    r.exp_minus = k % 2 ? r.exp_minus - term : r.exp_minus + term;
    const double tb = tail_bound(a0, d0, deg, k);
    if (tb <= target) {
      r.remainder_bound = tb;
      break;
    }
    if (k > 400) throw AccuracyError("matrix exponential series did not converge");
  }
  r.terms = k;
  return r;
}

}  // namespace qcv
