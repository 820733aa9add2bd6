// SPDX-License-Identifier: MIT
// The metric field: radial profile with cutoff, exact derivatives of h and
// the matrix exponential at a point.
#include "qcv/curvature_lab.hpp"
#include "qcv/errors.hpp"
#include "qcv/taylor.hpp"

#include <Eigen/LU>

#include <algorithm>
#include <functional>

namespace qcv {

namespace {

using Poly = std::vector<BigRational>;

Poly poly_mul(const Poly& a, const Poly& b) {
  if (a.empty() || b.empty()) return {};
  Poly r(a.size() + b.size() - 1, BigRational(0));
  for (size_t i = 0; i < a.size(); ++i)
    for (size_t j = 0; j < b.size(); ++j) r[i + j] += a[i] * b[j];
  return r;
}

Poly poly_derivative(const Poly& a) {
  Poly r;
  for (size_t k = 1; k < a.size(); ++k) r.push_back(a[k] * static_cast<long>(k));
  return r;
}

template <class T>
T to_scalar(const BigRational& q);
template <>
BigRational to_scalar<BigRational>(const BigRational& q) {
  return q;
}
template <>
Real to_scalar<Real>(const BigRational& q) {
  return to_real(q);
}

template <class T>
T poly_eval(const Poly& a, const T& s) {
  T r = 0;
  for (auto it = a.rbegin(); it != a.rend(); ++it) r = r * s + to_scalar<T>(*it);
  return r;
}

// f in powers of s with tau as the constant term.
Poly f_coeffs(const FPoly& f, const BigRational& tau) { return {tau, f.c1, f.c2, f.c3, f.c4}; }

}  // namespace

std::vector<int> weyl_support(const WeylForm& w) {
  const int n = w.dim();
  std::vector<char> used(static_cast<size_t>(n), 0);
  for (int i = 0; i < n; ++i)
    for (int k = 0; k < n; ++k)
      for (int j = 0; j < n; ++j)
        for (int l = 0; l < n; ++l)
          if (w.numerator(i, k, j, l) != 0) used[static_cast<size_t>(i)] = 1;
  std::vector<int> s;
  for (int i = 0; i < n; ++i)
    if (used[static_cast<size_t>(i)]) s.push_back(i);
  return s;
}

namespace {

// d^beta phi(|x|^2) by splitting beta into singletons (factor 2 x_i) and
// equal pairs (factor 2), the number of blocks choosing phi^(m).
template <class T>
T phi_derivative(const std::vector<T>& dphi, const std::vector<T>& x, std::vector<int> beta) {
  std::function<T(std::vector<int>&, int)> rec = [&](std::vector<int>& rest, int blocks) -> T {
    if (rest.empty()) return dphi[static_cast<size_t>(blocks)];
    const int a = rest.front();
    std::vector<int> tail(rest.begin() + 1, rest.end());
    T total = 2 * x[static_cast<size_t>(a)] * rec(tail, blocks + 1);
    for (size_t e = 0; e < tail.size(); ++e) {
      if (tail[e] != a) continue;
      std::vector<int> t2 = tail;
      t2.erase(t2.begin() + static_cast<long>(e));
      total += 2 * rec(t2, blocks + 1);
    }
    return total;
  };
  return rec(beta, 0);
}

template <class T>
std::vector<std::vector<T>> h_derivative_impl(const MetricProfile& p, const std::vector<T>& x,
                                              const std::vector<int>& indices) {
  const int N = p.N();
  if (static_cast<int>(x.size()) != N) throw ShapeError("h_derivative: point has the wrong length");
  if (indices.size() > 4) throw JetOrderError("h_derivative: order above 4");
  for (int i : indices)
    if (i < 0 || i >= N) throw ShapeError("h_derivative: index out of range");
  std::vector<std::vector<T>> out(static_cast<size_t>(N), std::vector<T>(static_cast<size_t>(N), T(0)));
  T s = 0;
  for (const auto& v : x) s += v * v;
  const Poly& phi = p.branch(s);
  if (phi.empty()) return out;
  std::vector<T> dphi;
  Poly cur = phi;
  for (size_t m = 0; m <= indices.size(); ++m) {
    dphi.push_back(poly_eval(cur, s));
    cur = poly_derivative(cur);
  }
  const std::vector<int> sup = weyl_support(p.W);
  const int m = static_cast<int>(indices.size());
  auto W = [&](int i, int a, int j, int b) { return to_scalar<T>(p.W.entry(i, a, j, b)); };
  for (int i : sup)
    for (int j : sup) {
      if (j < i) continue;
      T total = 0;
      for (int mask = 0; mask < (1 << m); ++mask) {
        std::vector<int> beta, rest;
        for (int b = 0; b < m; ++b) (mask >> b & 1 ? beta : rest).push_back(indices[static_cast<size_t>(b)]);
        if (rest.size() > 2) continue;
        T hpart = 0;
        if (rest.empty()) {
          for (int a : sup)
            for (int b : sup) hpart += W(i, a, j, b) * x[static_cast<size_t>(a)] * x[static_cast<size_t>(b)];
        } else if (rest.size() == 1) {
          const int q = rest[0];
          for (int a : sup) hpart += (W(i, q, j, a) + W(i, a, j, q)) * x[static_cast<size_t>(a)];
        } else {
          hpart = W(i, rest[0], j, rest[1]) + W(i, rest[1], j, rest[0]);
        }
        if (hpart == 0) continue;
        total += phi_derivative<T>(dphi, x, beta) * hpart;
      }
      out[static_cast<size_t>(i)][static_cast<size_t>(j)] = total;
      out[static_cast<size_t>(j)][static_cast<size_t>(i)] = total;
    }
  return out;
}

}  // namespace

// ---------------------------------------------------------------- profile

const std::vector<BigRational>& MetricProfile::branch(const BigRational& s) const {
  static const Poly zero;
  if (s <= s_inner) return inner;
  if (s < s_outer) return blend;
  return zero;
}

const std::vector<BigRational>& MetricProfile::branch(const Real& s) const {
  static const Poly zero;
  if (s <= to_real(s_inner)) return inner;
  if (s < to_real(s_outer)) return blend;
  return zero;
}

void MetricField::validate() const {
  if (!(mu > 0 && mu <= 1)) throw InputError("metric field: mu must lie in (0, 1]");
  if (!(eps > 0 && eps <= rho && rho <= 1))
    throw InputError("metric field: need 0 < eps <= rho <= 1");
  if (!(alpha > 0)) throw InputError("metric field: alpha must be positive");
  if (!W.valid()) throw InputError("metric field: W is not in the Weyl class");
}

std::vector<BigRational> cutoff_polynomial(const BigRational& a, const BigRational& b) {
  if (!(b > a)) throw InputError("cutoff_polynomial: need a < b");
  // t = (s - a) / (b - a) as a polynomial in s.
  const BigRational w = b - a;
  const Poly t{-a / w, 1 / w};
  const std::vector<std::pair<int, long>> B{{5, 126}, {6, -420}, {7, 540}, {8, -315}, {9, 70}};
  Poly chi{1};
  Poly tp{1};
  int power = 0;
  for (const auto& [k, c] : B) {
    while (power < k) {
      tp = poly_mul(tp, t);
      ++power;
    }
    if (chi.size() < tp.size()) chi.resize(tp.size(), BigRational(0));
    for (size_t i = 0; i < tp.size(); ++i) chi[i] -= tp[i] * c;
  }
  return chi;
}

MetricProfile MetricField::x_profile() const {
  validate();
  MetricProfile p;
  p.W = W;
  const Poly fc = f_coeffs(f, tau);
  BigRational e2 = eps * eps, scale = mu * e2 * e2 * e2 * e2;
  for (const auto& c : fc) {
    p.inner.push_back(c * scale);
    scale /= e2;
  }
  p.s_inner = rho * rho;
  p.s_outer = 1;
  if (p.s_inner < p.s_outer) p.blend = poly_mul(cutoff_polynomial(p.s_inner, p.s_outer), p.inner);
  return p;
}

MetricProfile MetricField::y_profile() const {
  MetricProfile x = x_profile();
  // phi~(s) = eps^2 phi(eps^2 s).
  const BigRational e2 = eps * eps;
  auto rescale = [&](const Poly& a) {
    Poly r;
    BigRational sc = e2;
    for (const auto& c : a) {
      r.push_back(c * sc);
      sc *= e2;
    }
    return r;
  };
  MetricProfile y;
  y.W = W;
  y.inner = rescale(x.inner);
  y.blend = rescale(x.blend);
  y.s_inner = x.s_inner / e2;
  y.s_outer = x.s_outer / e2;
  return y;
}

// ---------------------------------------------------------------- jets

std::vector<std::vector<BigRational>> h_derivative(const MetricProfile& p,
                                                   const std::vector<BigRational>& x,
                                                   const std::vector<int>& indices) {
  return h_derivative_impl<BigRational>(p, x, indices);
}

RealMatrix h_derivative(const MetricProfile& p, const std::vector<Real>& x,
                        const std::vector<int>& indices) {
  const auto d = h_derivative_impl<Real>(p, x, indices);
  const int N = p.N();
  RealMatrix m(N, N);
  for (int i = 0; i < N; ++i)
    for (int j = 0; j < N; ++j) m(i, j) = d[static_cast<size_t>(i)][static_cast<size_t>(j)];
  return m;
}

const std::vector<std::vector<BigRational>>& HJet::at(std::vector<int> indices) const {
  if (static_cast<int>(indices.size()) > order) throw JetOrderError("h jet: order not stored");
  return d.at(Jet::key_of(std::move(indices)));
}

HJet h_jet(const MetricProfile& p, const std::vector<BigRational>& x, int order) {
  if (order < 0 || order > 4) throw JetOrderError("h_jet: order must be 0..4");
  HJet j;
  j.order = order;
  for (const auto& idx : multi_indices(p.N(), order)) j.d[Jet::key_of(idx)] = h_derivative(p, x, idx);
  return j;
}

Real alpha_norm(const MetricProfile& p, const std::vector<Real>& x) {
  Real total = 0;
  for (int k = 0; k <= 4; ++k) {
    Real best = 0;
    for (const auto& idx : multi_indices(p.N(), k)) {
      if (static_cast<int>(idx.size()) != k) continue;
      const auto d = h_derivative_impl<Real>(p, x, idx);
      for (const auto& row : d)
        for (const auto& v : row) best = std::max(best, Real(abs(v)));
    }
    total += best;
  }
  return total;
}

// ---------------------------------------------------------------- metric

MetricValue metric_at(const MetricProfile& p, const std::vector<Real>& x) {
  const int N = p.N();
  const RealMatrix h = h_derivative(p, x, {});
  // h vanishes off the support of W, so only that block is exponentiated.
  std::vector<int> sup = weyl_support(p.W);
  if (sup.empty()) sup.push_back(0);
  const int k = static_cast<int>(sup.size());
  auto sp = TaylorSpace::get(0, 0);
  TaylorMatrix hm(k, sp);
  for (int i = 0; i < k; ++i)
    for (int j = 0; j < k; ++j) hm(i, j).coeff(0) = h(sup[static_cast<size_t>(i)], sup[static_cast<size_t>(j)]);
  const ExpResult e = matrix_exponential(hm);
  MetricValue v;
  v.g = RealMatrix::Identity(N, N);
  v.g_inv = RealMatrix::Identity(N, N);
  for (int i = 0; i < k; ++i)
    for (int j = 0; j < k; ++j) {
      v.g(sup[static_cast<size_t>(i)], sup[static_cast<size_t>(j)]) = e.exp_plus(i, j).value();
      v.g_inv(sup[static_cast<size_t>(i)], sup[static_cast<size_t>(j)]) = e.exp_minus(i, j).value();
    }
  v.det = v.g.partialPivLu().determinant();
  const RealMatrix prod = v.g * v.g_inv;
  Real gap = 0;
  for (int i = 0; i < N; ++i)
    for (int j = 0; j < N; ++j) gap = std::max(gap, Real(abs(prod(i, j) - (i == j ? 1 : 0))));
  v.inverse_gap = gap;
  v.series_terms = e.terms;
  v.remainder_bound = e.remainder_bound;
  return v;
}

}  // namespace qcv
