// SPDX-License-Identifier: MIT
// Batch runner shared by the Monte Carlo oracles.
#pragma once

#include "qcv/cross_check.hpp"

#include <algorithm>
#include <cmath>
#include <random>
#include <vector>

namespace qcv {

namespace detail {

inline std::mt19937_64 batch_engine(std::uint64_t seed, std::uint64_t batch) {
  std::seed_seq seq{static_cast<std::uint32_t>(seed), static_cast<std::uint32_t>(seed >> 32),
                    static_cast<std::uint32_t>(batch), static_cast<std::uint32_t>(batch >> 32)};
  return std::mt19937_64(seq);
}

inline double sphere_area_double(int N) { return 2 * std::pow(M_PI, N / 2.0) / std::tgamma(N / 2.0); }

// Runs `dim` integrands over `samples` draws, batch by batch; `draw` fills
// the outputs for one sample from the given engine.
template <class Draw>
std::vector<McEstimate> run_batches(std::uint64_t samples, std::uint64_t seed, size_t dim,
                                    double scale, const Draw& draw) {
  // Extended accumulators keep a constant integrand exact to about 1e-15.
  std::vector<long double> sum(dim, 0), sum2(dim, 0);
  std::vector<double> out(dim);
  for (std::uint64_t b = 0; b * kMcBatch < samples; ++b) {
    auto eng = batch_engine(seed, b);
    const std::uint64_t n = std::min<std::uint64_t>(kMcBatch, samples - b * kMcBatch);
    std::vector<long double> bs(dim, 0), bs2(dim, 0);
    for (std::uint64_t i = 0; i < n; ++i) {
      draw(eng, out.data());
      for (size_t d = 0; d < dim; ++d) {
        bs[d] += out[d];
        bs2[d] += static_cast<long double>(out[d]) * out[d];
      }
    }
    for (size_t d = 0; d < dim; ++d) {
      sum[d] += bs[d];
      sum2[d] += bs2[d];
    }
  }
  std::vector<McEstimate> r(dim);
  const double n = static_cast<double>(samples);
  for (size_t d = 0; d < dim; ++d) {
    const long double mean = sum[d] / n;
    const long double var = std::max(0.0L, (sum2[d] / n - mean * mean) * n / (n - 1));
    r[d].mean = scale * static_cast<double>(mean);
    r[d].stderr_ = scale * static_cast<double>(std::sqrt(var / n));
    r[d].samples = samples;
    r[d].seed = seed;
  }
  return r;
}

}  // namespace detail

}  // namespace qcv
