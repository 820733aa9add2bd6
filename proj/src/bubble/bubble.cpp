// SPDX-License-Identifier: MIT
// Closed-form bubble derivatives by Faa di Bruno over the quadratic rho.
#include "qcv/bubble.hpp"
#include "qcv/errors.hpp"

#include <algorithm>
#include <cmath>
#include <random>

namespace qcv {

namespace {

BigRational int_power(const BigRational& b, long e) {
  BigRational r = 1;
  BigRational base = e >= 0 ? b : BigRational(1) / b;
  for (long i = 0; i < std::abs(e); ++i) r *= base;
  return r;
}

// c_m = (-kappa)(-kappa-1)...(-kappa-m+1), the m-th derivative of t^{-kappa}
// without the power of t.
BigRational falling(int twice_kappa, int m) {
  BigRational c = 1;
  for (int t = 0; t < m; ++t) c *= BigRational(-(twice_kappa + 2 * t), 2);
  return c;
}

// Shape (lambda / rho)^kappa at one point, rho = lambda^2 + |z|^2.  coef[m]
// holds scale * c_m * lambda^kappa * rho^{-kappa-m}, so a derivative is a sum
// over the ways of splitting its index list into singletons (factor 2 z_i)
// and equal pairs (factor 2), weighted by coef[number of blocks].
template <class T>
struct ShapeEval {
  std::vector<T> z;
  std::array<T, 5> coef;

  T derivative(const std::vector<int>& idx) const {
    if (idx.size() > 4) throw JetOrderError("bubble derivatives are available to order 4");
    T total = 0;
    split(idx, 0, 0, T(1), total);
    return total;
  }

 private:
  void split(const std::vector<int>& idx, unsigned used, int blocks, const T& factor,
             T& total) const {
    size_t i = 0;
    while (i < idx.size() && (used >> i & 1u)) ++i;
    if (i == idx.size()) {
      total += coef[static_cast<size_t>(blocks)] * factor;
      return;
    }
    unsigned u = used | 1u << i;
    split(idx, u, blocks + 1, factor * 2 * z[static_cast<size_t>(idx[i])], total);
    for (size_t j = i + 1; j < idx.size(); ++j)
      if (!(u >> j & 1u) && idx[i] == idx[j]) split(idx, u | 1u << j, blocks + 1, factor * 2, total);
  }
};

std::vector<BigRational> center(const BubbleParams& p) {
  if (p.xi.empty()) return std::vector<BigRational>(static_cast<size_t>(p.N), 0);
  if (static_cast<int>(p.xi.size()) != p.N) throw DimensionError("bubble centre has wrong dimension");
  return p.xi;
}

void check(const BubbleParams& p, size_t point_dim) {
  if (p.N < 5) throw DimensionError("the bubble needs N >= 5");
  if (p.lambda <= 0) throw PreconditionError("bubble scale must be positive");
  if (point_dim != static_cast<size_t>(p.N)) throw DimensionError("point has wrong dimension");
}

template <class T, class Conv>
ShapeEval<T> real_eval(const std::vector<T>& y, const BubbleParams& p, int twice_kappa,
                       const T& scale, Conv conv) {
  check(p, y.size());
  const auto xi = center(p);
  ShapeEval<T> e;
  e.z.resize(y.size());
  T lam = conv(p.lambda), rho = lam * lam;
  for (size_t i = 0; i < y.size(); ++i) {
    e.z[i] = y[i] - conv(xi[i]);
    rho += e.z[i] * e.z[i];
  }
  using std::pow;
  const T kappa = T(twice_kappa) / 2;
  const T base = scale * pow(lam / rho, kappa);
  T rinv = 1;
  for (int m = 0; m <= 4; ++m) {
    e.coef[static_cast<size_t>(m)] = conv(falling(twice_kappa, m)) * base * rinv;
    rinv = rinv / rho;
  }
  return e;
}

ShapeEval<Real> eval_real(const RealPoint& y, const BubbleParams& p, int twice_kappa,
                          const Real& scale) {
  return real_eval<Real>(y, p, twice_kappa, scale,
                         [](const BigRational& q) { return to_real(q); });
}

ShapeEval<double> eval_double(const std::vector<double>& y, const BubbleParams& p,
                              int twice_kappa, double scale) {
  return real_eval<double>(y, p, twice_kappa, scale,
                           [](const BigRational& q) { return q.get_d(); });
}

int twice_kappa_u0(int N) { return N - 4; }

}  // namespace

bool BubbleParams::operator==(const BubbleParams& o) const {
  return N == o.N && lambda == o.lambda && center(*this) == center(o) && epsilon == o.epsilon;
}

bool BubbleParams::in_configuration_set() const {
  BigRational r2 = 0;
  for (const auto& c : xi) r2 += c * c;
  return r2 <= 1 && lambda > BigRational(1, 2) && lambda < BigRational(3, 2);
}

GammaForm gamma_form(int N, GammaChoice choice) {
  if (N < 5) throw DimensionError("the bubble needs N >= 5");
  const BigInt n = N;
  if (choice == GammaChoice::Printed)
    return {rat(n * (n - 4) * (n - 4) * (n - 2) * (n + 2), 2), rat(-(n - 4), 8)};
  return {BigRational(2 * n * (n - 2) * (n + 2)), rat(n - 4, 8)};
}

Real gamma_N(int N, GammaChoice choice) {
  const GammaForm g = gamma_form(N, choice);
  return pow(to_real(g.base), to_real(g.exponent));
}

Real bubble_power_derivative(const RealPoint& y, const BubbleParams& p, int twice_kappa,
                             const std::vector<int>& indices) {
  return eval_real(y, p, twice_kappa, Real(1)).derivative(indices);
}

Real u0_derivative(const RealPoint& y, const BubbleParams& p, const std::vector<int>& indices,
                   GammaChoice choice) {
  return eval_real(y, p, twice_kappa_u0(p.N), gamma_N(p.N, choice)).derivative(indices);
}

BigRational profile_derivative_exact(const std::vector<BigRational>& y, const BubbleParams& p,
                                     const std::vector<int>& indices) {
  check(p, y.size());
  if (p.N % 2 != 0)
    throw PreconditionError("exact bubble derivatives need N even");
  const auto xi = center(p);
  ShapeEval<BigRational> e;
  e.z.resize(y.size());
  BigRational rho = p.lambda * p.lambda;
  for (size_t i = 0; i < y.size(); ++i) {
    e.z[i] = y[i] - xi[i];
    rho += e.z[i] * e.z[i];
  }
  const long kappa = (p.N - 4) / 2;
  const BigRational base = int_power(p.lambda / rho, kappa);
  for (int m = 0; m <= 4; ++m)
    e.coef[static_cast<size_t>(m)] = falling(p.N - 4, m) * base * int_power(rho, -m);
  return e.derivative(indices);
}

// ---------------------------------------------------------------- Jet

Jet::Key Jet::key_of(std::vector<int> indices) {
  if (indices.size() > 4) throw JetOrderError("jets are stored to order 4");
  std::sort(indices.begin(), indices.end());
  Key k{-1, -1, -1, -1};
  std::copy(indices.begin(), indices.end(), k.begin());
  return k;
}

const Real& Jet::at(std::vector<int> indices) const {
  if (static_cast<int>(indices.size()) > order_)
    throw JetOrderError("jet of order " + std::to_string(order_) + " asked for order " +
                        std::to_string(indices.size()));
  auto it = d_.find(key_of(std::move(indices)));
  if (it == d_.end()) throw JetOrderError("jet entry missing");
  return it->second;
}

void Jet::set(std::vector<int> indices, Real v) { d_[key_of(std::move(indices))] = std::move(v); }

std::vector<std::vector<int>> multi_indices(int N, int order) {
  std::vector<std::vector<int>> out{{}};
  std::vector<std::vector<int>> layer{{}};
  for (int k = 1; k <= order; ++k) {
    std::vector<std::vector<int>> next;
    for (const auto& m : layer)
      for (int i = m.empty() ? 0 : m.back(); i < N; ++i) {
        auto n = m;
        n.push_back(i);
        next.push_back(std::move(n));
      }
    out.insert(out.end(), next.begin(), next.end());
    layer = std::move(next);
  }
  return out;
}

Jet u0_jet(const RealPoint& y, const BubbleParams& p, int order, GammaChoice choice) {
  if (order < 0 || order > 4) throw JetOrderError("u0_jet order must lie in 0..4");
  const auto e = eval_real(y, p, twice_kappa_u0(p.N), gamma_N(p.N, choice));
  Jet jet(p.N, order);
  for (const auto& m : multi_indices(p.N, order)) jet.set(m, e.derivative(m));
  return jet;
}

// ---------------------------------------------------------------- residual

FlatResidual flat_residual(const RealPoint& y, const BubbleParams& p, GammaChoice choice) {
  const auto e = eval_real(y, p, twice_kappa_u0(p.N), gamma_N(p.N, choice));
  FlatResidual r;
  r.bilaplacian = 0;
  for (int i = 0; i < p.N; ++i)
    for (int j = 0; j < p.N; ++j) r.bilaplacian += e.derivative({i, i, j, j});
  const Real u = e.derivative({});
  r.nonlinear = Real(p.N - 4) / 2 * pow(u, Real(p.N + 4) / (p.N - 4));
  r.residual = r.bilaplacian - r.nonlinear;
  r.relative = abs(r.residual) / abs(r.nonlinear);
  return r;
}

BubbleParams to_y_scale(const BubbleParams& x_params, const BigRational& eps) {
  if (eps <= 0) throw PreconditionError("rescaling needs eps > 0");
  BubbleParams y = x_params;
  y.lambda = x_params.lambda / eps;
  y.xi = center(x_params);
  for (auto& c : y.xi) c /= eps;
  y.epsilon = x_params.epsilon * eps;
  return y;
}

BubbleParams to_x_scale(const BubbleParams& y_params) {
  const BigRational eps = y_params.epsilon;
  BubbleParams x = y_params;
  x.lambda = y_params.lambda * eps;
  x.xi = center(y_params);
  for (auto& c : x.xi) c *= eps;
  x.epsilon = 1;
  return x;
}

// ---------------------------------------------------------------- oracles

Real u0_finite_difference(const RealPoint& y, const BubbleParams& p,
                          const std::vector<int>& indices, const Real& h, GammaChoice choice) {
  if (indices.empty()) throw JetOrderError("finite differences need at least one index");
  std::vector<int> lower(indices.begin(), indices.end() - 1);
  const size_t c = static_cast<size_t>(indices.back());
  auto central = [&](const Real& step) {
    RealPoint a = y, b = y;
    a[c] += step;
    b[c] -= step;
    return (u0_derivative(a, p, lower, choice) - u0_derivative(b, p, lower, choice)) / (2 * step);
  };
  return (4 * central(h / 2) - central(h)) / 3;
}

std::vector<Real> derivative_fd_gaps(const RealPoint& y, const BubbleParams& p, int order) {
  // The closed forms are taken at working precision.  The difference
  // quotients run in double, which is ample for a coarse 1e-6 check and keeps
  // the fourth-order sweep over every multi-index cheap.
  const double g = gamma_N(p.N).convert_to<double>();
  const auto exact = eval_real(y, p, twice_kappa_u0(p.N), gamma_N(p.N));
  std::vector<double> yd(y.size());
  for (size_t i = 0; i < y.size(); ++i) yd[i] = y[i].convert_to<double>();
  const double h = 1e-3;
  // Shifted evaluators: plus/minus h and h/2 along each axis.
  std::vector<std::array<ShapeEval<double>, 4>> shifted(y.size());
  for (size_t c = 0; c < y.size(); ++c) {
    const double steps[4] = {h, -h, h / 2, -h / 2};
    for (int s = 0; s < 4; ++s) {
      auto ys = yd;
      ys[c] += steps[s];
      shifted[c][static_cast<size_t>(s)] = eval_double(ys, p, twice_kappa_u0(p.N), g);
    }
  }
  std::vector<Real> gaps;
  std::vector<std::vector<int>> all = multi_indices(p.N, order);
  for (int k = 1; k <= order; ++k) {
    Real worst = 0, scale = 0;
    std::vector<std::pair<Real, double>> pairs;
    for (const auto& m : all) {
      if (static_cast<int>(m.size()) != k) continue;
      // Every sorted multi-index is reached by differencing in its last index;
      // the remaining indices give a lower-order closed form.
      std::vector<int> lower(m.begin(), m.end() - 1);
      const auto& sh = shifted[static_cast<size_t>(m.back())];
      const double d1 = (sh[0].derivative(lower) - sh[1].derivative(lower)) / (2 * h);
      const double d2 = (sh[2].derivative(lower) - sh[3].derivative(lower)) / h;
      const Real closed = exact.derivative(m);
      scale = std::max(scale, Real(abs(closed)));
      pairs.emplace_back(closed, (4 * d2 - d1) / 3);
    }
    for (const auto& [closed, fd] : pairs) worst = std::max(worst, Real(abs(closed - fd)));
    gaps.push_back(scale > 0 ? Real(worst / scale) : worst);
  }
  return gaps;
}

std::vector<RealPoint> random_points(int N, int count, std::uint64_t seed, double radius,
                                     const BubbleParams& p) {
  std::mt19937_64 rng(seed);
  std::normal_distribution<double> normal;
  std::uniform_real_distribution<double> unit(0.0, 1.0);
  const auto xi = center(p);
  std::vector<RealPoint> out;
  for (int n = 0; n < count; ++n) {
    std::vector<double> d(static_cast<size_t>(N));
    double norm = 0;
    for (auto& v : d) {
      v = normal(rng);
      norm += v * v;
    }
    norm = std::sqrt(norm);
    const double r = radius * unit(rng);
    RealPoint y(static_cast<size_t>(N));
    for (size_t i = 0; i < y.size(); ++i) y[i] = to_real(xi[i]) + Real(d[i] / norm * r);
    out.push_back(std::move(y));
  }
  return out;
}

IjkkCheck ijkk_identity(const RealPoint& y, const BubbleParams& p, int i, int j,
                        const std::optional<BigRational>& scale) {
  const int N = p.N;
  const Real g = gamma_N(N);
  const auto u = eval_real(y, p, N - 4, g);
  const auto u2 = eval_real(y, p, 2 * (N - 4), g * g);
  const Real s = to_real(scale.value_or(p.lambda));
  Real z2 = 0;
  for (const auto& c : u.z) z2 += c * c;
  const Real u0 = u.derivative({});
  Real lhs = 0, d4sq = 0, dkk = 0;
  for (int k = 0; k < N; ++k) {
    lhs += u0 * u.derivative({i, j, k, k});
    d4sq += u2.derivative({i, j, k, k});
    dkk += u.derivative({k, k});
  }
  const Real n = N, q = n * n - 4 * n + 8;
  const Real delta = i == j ? 1 : 0;
  const Real w = s * s + z2;
  Real rhs = n / ((n - 3) * q) * d4sq + (n * n + 4 * n) / q * u.derivative({i, j}) * dkk +
             4 * (n - 4) * (n - 4) * (n - 2) * n / q * u0 * u0 * z2 * delta / (w * w * w) -
             4 * (n - 4) * (n - 4) * (n * n - 2) / q * u0 * u0 * delta / (w * w);
  IjkkCheck c{lhs, rhs, 0};
  const Real big = std::max(abs(lhs), abs(rhs));
  c.relative_gap = big > 0 ? Real(abs(lhs - rhs) / big) : Real(0);
  return c;
}

}  // namespace qcv
