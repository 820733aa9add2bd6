// SPDX-License-Identifier: MIT
// Singular convolution integrals by importance sampling and their log-log fits.
#include "qcv/cross_check.hpp"
#include "qcv/errors.hpp"

#include "batches.hpp"

#include <cmath>
#include <random>

namespace qcv {

namespace {

// Index of the heavy-tailed radial law about the origin in R^N.
constexpr double kTailIndex = 1.0;

}  // namespace

McEstimate convolution_integral(int N, double s, double t, double x_norm,
                                std::optional<double> radius, std::uint64_t samples,
                                std::uint64_t seed) {
  if (N < 2) throw InputError("convolution_integral: N must be at least 2");
  if (!(s > 0 && s < N)) throw InputError("convolution_integral: need 0 < s < N");
  if (!radius && !(t > s)) throw InputError("convolution_integral: need t > s on R^N");
  if (radius && !(*radius > 0)) throw InputError("convolution_integral: radius must be positive");
  if (samples < 1000) throw InputError("convolution_integral: at least 1000 samples");
  const double area = detail::sphere_area_double(N);
  // Component A: |z - x| = RA U^{1/s} in a ball around x, density
  // proportional to |x - z|^{s-N}.
  const double RA = std::max(1.0, x_norm / 2);
  // It never reaches a ball that lies farther than RA from x.
  const bool use_a = !radius || x_norm - *radius < RA;
  const double wA = use_a ? 0.5 : 0.0, wB = 1 - wA;
  // Component B: radial about 0.  On a ball the radius law is m rho^{m-1} / R^m
  // with m = N - t (the integrand's own power) when positive; on R^N a Lomax
  // law with density a (1 + rho)^{-a-1}.
  const double m = radius ? std::max(N - t, 0.5) : 0;
  auto qA = [&](double dist) {
    if (!use_a || dist >= RA) return 0.0;
    return s / (area * std::pow(RA, s)) * std::pow(dist, s - N);
  };
  auto qB = [&](double rho) {
    double p;
    if (radius) {
      if (rho > *radius) return 0.0;
      p = m * std::pow(rho, m - 1) / std::pow(*radius, m);
    } else {
      p = kTailIndex * std::pow(1 + rho, -kTailIndex - 1);
    }
    return p / (area * std::pow(rho, N - 1));
  };
  const size_t n = static_cast<size_t>(N);
  std::vector<double> z(n), dir(n);
  auto draw = [&](std::mt19937_64& eng, double* out) {
    std::uniform_real_distribution<double> uni(0.0, 1.0);
    std::normal_distribution<double> g;
    double r2 = 0;
    for (auto& v : dir) {
      v = g(eng);
      r2 += v * v;
    }
    const double inv = 1 / std::sqrt(r2);
    const double pick = uni(eng);
    // 1 - U lies in (0, 1], which keeps every power finite.
    const double u = 1 - uni(eng);
    if (pick < wA) {
      const double rho = RA * std::pow(u, 1 / s);
      for (size_t i = 0; i < n; ++i) z[i] = rho * dir[i] * inv + (i == 0 ? x_norm : 0);
    } else {
      const double rho = radius ? *radius * std::pow(u, 1 / m) : std::pow(u, -1 / kTailIndex) - 1;
      for (size_t i = 0; i < n; ++i) z[i] = rho * dir[i] * inv;
    }
    double zz = 0, dd = 0;
    for (size_t i = 0; i < n; ++i) {
      zz += z[i] * z[i];
      const double d = z[i] - (i == 0 ? x_norm : 0);
      dd += d * d;
    }
    const double rho = std::sqrt(zz), dist = std::sqrt(dd);
    if ((radius && rho > *radius) || dist == 0 || rho == 0) {
      out[0] = 0;
      return;
    }
    const double f = std::pow(dist, s - N) * std::pow(1 + rho, -t);
    out[0] = f / (wA * qA(dist) + wB * qB(rho));
  };
  return detail::run_batches(samples, seed, 1, 1.0, draw)[0];
}

namespace {

ScalingFit fit_logs(const std::vector<double>& lx, const std::vector<double>& ly) {
  ScalingFit f;
  const size_t n = lx.size();
  std::vector<double> w(n, 1.0);
  w[n - 1] = w[n - 2] = 2.0;
  double sw = 0, sx = 0, sy = 0, sxx = 0, sxy = 0;
  for (size_t i = 0; i < n; ++i) {
    sw += w[i];
    sx += w[i] * lx[i];
    sy += w[i] * ly[i];
    sxx += w[i] * lx[i] * lx[i];
    sxy += w[i] * lx[i] * ly[i];
  }
  f.exponent = (sw * sxy - sx * sy) / (sw * sxx - sx * sx);
  f.intercept = (sy - f.exponent * sx) / sw;
  double rss = 0;
  for (size_t i = 0; i < n; ++i) {
    const double e = ly[i] - f.intercept - f.exponent * lx[i];
    rss += w[i] * e * e;
  }
  f.residual = std::sqrt(rss / sw);
  return f;
}

void check_grid(const std::vector<double>& a) {
  if (a.size() < 4) throw InputError("scaling fit: need at least 4 points");
  for (size_t i = 0; i < a.size(); ++i) {
    if (!(a[i] > 0)) throw InputError("scaling fit: abscissae must be positive");
    if (i > 0 && !(a[i] > a[i - 1])) throw InputError("scaling fit: abscissae must increase strictly");
  }
  if (a.back() < 100 * a.front()) throw InputError("scaling fit: grid spans less than two decades");
}

std::vector<double> logs(const std::vector<double>& v, double shift = 0) {
  std::vector<double> r;
  for (double x : v) {
    if (!(x + shift > 0)) throw InputError("scaling fit: values must be positive");
    r.push_back(std::log(x + shift));
  }
  return r;
}

}  // namespace

ScalingFit fit_scaling(std::vector<double> abscissae, std::vector<double> values) {
  check_grid(abscissae);
  if (values.size() != abscissae.size()) throw ShapeError("scaling fit: length mismatch");
  ScalingFit f = fit_logs(logs(abscissae), logs(values));
  f.abscissae = std::move(abscissae);
  f.values = std::move(values);
  return f;
}

ScalingFit convolution_scaling(int N, double s, double t, const std::vector<double>& x_grid,
                               std::uint64_t samples, std::uint64_t seed) {
  check_grid(x_grid);
  std::vector<double> values, errs;
  for (size_t i = 0; i < x_grid.size(); ++i) {
    const McEstimate e = convolution_integral(N, s, t, x_grid[i], std::nullopt, samples, seed + i);
    values.push_back(e.mean);
    errs.push_back(e.stderr_);
  }
  ScalingFit f = fit_logs(logs(x_grid, 1), logs(values));
  f.abscissae = x_grid;
  f.values = values;
  f.stderrs = errs;
  return f;
}

ScalingFit ball_scaling(int N, double s, double k, double y_norm, const std::vector<double>& r_grid,
                        std::uint64_t samples, std::uint64_t seed) {
  check_grid(r_grid);
  if (!(k > 0 && s + k < N)) throw InputError("ball_scaling: need 0 < k and s + k < N");
  if (y_norm < 4 * r_grid.back()) throw InputError("ball_scaling: |y| must be at least 4 max r");
  std::vector<double> values, errs;
  for (size_t i = 0; i < r_grid.size(); ++i) {
    const McEstimate e = convolution_integral(N, s, N - k, y_norm, r_grid[i], samples, seed + i);
    values.push_back(e.mean);
    errs.push_back(e.stderr_);
  }
  ScalingFit f = fit_scaling(r_grid, values);
  f.stderrs = errs;
  return f;
}

double predicted_convolution_exponent(int N, double s, double t) { return t < N ? s - t : s - N; }

LogCaseCheck log_case_check(int N, double s, const ScalingFit& fit) {
  std::vector<double> ratio;
  for (size_t i = 0; i < fit.abscissae.size(); ++i) {
    const double x = fit.abscissae[i];
    ratio.push_back(fit.values[i] / (std::pow(1 + x, s - N) * (1 + std::log1p(x))));
  }
  LogCaseCheck c;
  const auto [lo, hi] = std::minmax_element(ratio.begin(), ratio.end());
  c.spread = *hi / *lo;
  c.ratio_exponent = fit_logs(logs(fit.abscissae, 1), logs(ratio)).exponent;
  return c;
}

}  // namespace qcv
