// SPDX-License-Identifier: MIT
// Seeded, batch-deterministic Monte Carlo on the unit sphere.
#include "qcv/cross_check.hpp"
#include "qcv/errors.hpp"

#include "batches.hpp"

#include <cmath>
#include <random>

namespace qcv {

namespace {

void unit_vector(std::mt19937_64& eng, int N, double* y) {
  std::normal_distribution<double> g;
  double r2 = 0;
  for (int i = 0; i < N; ++i) {
    y[i] = g(eng);
    r2 += y[i] * y[i];
  }
  const double inv = 1 / std::sqrt(r2);
  for (int i = 0; i < N; ++i) y[i] *= inv;
}

void check_sphere_args(int N, std::uint64_t samples) {
  if (N < 2) throw InputError("mc_sphere: N must be at least 2");
  if (samples < 1000) throw InputError("mc_sphere: at least 1000 samples");
}

}  // namespace

McEstimate mc_sphere(int N, std::uint64_t samples,
                     const std::function<double(const double*)>& integrand, std::uint64_t seed) {
  check_sphere_args(N, samples);
  std::vector<double> y(static_cast<size_t>(N));
  return detail::run_batches(samples, seed, 1, detail::sphere_area_double(N),
                             [&](std::mt19937_64& eng, double* out) {
                               unit_vector(eng, N, y.data());
                               out[0] = integrand(y.data());
                             })[0];
}

McEstimate mc_sphere_identity(const WeylForm& w, SphereKind kind, int p, int q,
                              std::uint64_t samples, std::uint64_t seed) {
  return mc_sphere_identities(w, {{kind, p, q}}, samples, seed)[0].mc;
}

std::vector<SphereCheck> mc_sphere_identities(const WeylForm& w,
                                              const std::vector<SphereTarget>& targets,
                                              std::uint64_t samples, std::uint64_t seed) {
  const int N = w.dim();
  check_sphere_args(N, samples);
  const size_t n = static_cast<size_t>(N);
  const std::vector<double> wd = w.to_double();
  auto W = [&](size_t a, size_t b, size_t c, size_t d) { return wd[((a * n + b) * n + c) * n + d]; };
  // Second derivatives do not depend on y.
  double ddh2 = 0;
  for (size_t i = 0; i < n; ++i)
    for (size_t j = 0; j < n; ++j)
      for (size_t k = 0; k < n; ++k)
        for (size_t l = 0; l < n; ++l) {
          const double v = W(i, k, j, l) + W(i, l, j, k);
          ddh2 += v * v;
        }
  // Symmetrised kernel D(i,j,k,b) = W_ikjb + W_ibjk gives dH and, with y_k, 2H.
  std::vector<double> D(n * n * n * n);
  for (size_t i = 0; i < n; ++i)
    for (size_t j = 0; j < n; ++j)
      for (size_t k = 0; k < n; ++k)
        for (size_t b = 0; b < n; ++b) D[((i * n + j) * n + k) * n + b] = W(i, k, j, b) + W(i, b, j, k);
  std::vector<double> y(n), H(n * n), dH(n * n * n);
  auto draw = [&](std::mt19937_64& eng, double* out) {
    unit_vector(eng, N, y.data());
    for (size_t ijk = 0; ijk < n * n * n; ++ijk) {
      const double* row = &D[ijk * n];
      double s = 0;
      for (size_t b = 0; b < n; ++b) s += row[b] * y[b];
      dH[ijk] = s;
    }
    double h2 = 0, dh2 = 0;
    for (size_t ij = 0; ij < n * n; ++ij) {
      double s = 0;
      for (size_t k = 0; k < n; ++k) s += dH[ij * n + k] * y[k];
      H[ij] = s / 2;
      h2 += H[ij] * H[ij];
    }
    for (const double v : dH) dh2 += v * v;
    for (size_t t = 0; t < targets.size(); ++t) {
      const size_t P = static_cast<size_t>(targets[t].p), Q = static_cast<size_t>(targets[t].q);
      double v = 0;
      switch (targets[t].kind) {
        case SphereKind::H2: v = h2; break;
        case SphereKind::DH2: v = dh2; break;
        case SphereKind::DDH2: v = ddh2; break;
        case SphereKind::H2_YPYQ: v = h2 * y[P] * y[Q]; break;
        case SphereKind::DH2_YPYQ: v = dh2 * y[P] * y[Q]; break;
        case SphereKind::DDH2_YPYQ: v = ddh2 * y[P] * y[Q]; break;
        case SphereKind::HPT_HQT:
          for (size_t k = 0; k < n; ++k) v += H[P * n + k] * H[Q * n + k];
          break;
        case SphereKind::DPH_DQH:
          for (size_t ij = 0; ij < n * n; ++ij) v += dH[ij * n + P] * dH[ij * n + Q];
          break;
        case SphereKind::H_DQH_YP:
          for (size_t ij = 0; ij < n * n; ++ij) v += H[ij] * dH[ij * n + Q];
          v *= y[P];
          break;
      }
      out[t] = v;
    }
  };
  const auto est = detail::run_batches(samples, seed, targets.size(), detail::sphere_area_double(N), draw);
  std::vector<SphereCheck> out;
  for (size_t t = 0; t < targets.size(); ++t) {
    SphereCheck c;
    c.target = targets[t];
    const SphereIdentity id = sphere_quadratic_integral(w, targets[t].kind, targets[t].p, targets[t].q);
    c.exact = id.lhs;
    c.identity_holds = id.holds();
    c.exact_value = c.exact.expand_sphere().to_real().convert_to<double>();
    c.mc = est[t];
    const double gap = std::abs(c.mc.mean - c.exact_value);
    // A y-independent integrand has zero spread; allow for rounding only.
    c.agrees = gap <= 3 * c.mc.stderr_ + 1e-12 * std::abs(c.exact_value) + 1e-300;
    out.push_back(c);
  }
  return out;
}

}  // namespace qcv
