// SPDX-License-Identifier: MIT
#include "qcv/errors.hpp"
#include "qcv/exact_scalars.hpp"
#include "qcv/radial_integrals.hpp"

namespace qcv {

BigRational paneitz_a(int N) { return rat((N - 2) * (N - 2) + 4, 2 * (N - 1) * (N - 2)); }

BigRational paneitz_b(int N) { return rat(-4, N - 2); }

DimConstants dim_constants(int N) {
  if (N < 5) throw DimensionError("dim_constants requires N >= 5");
  DimConstants c;
  c.N = N;
  c.a_N = paneitz_a(N);
  c.b_N = paneitz_b(N);
  c.gammaN_base = BigRational(BigInt(N) * (N - 4) * (N - 4) * (N - 2) * (N + 2), 2);
  c.gammaN_base.canonicalize();
  c.E = energy_constant(N);
  return c;
}

}  // namespace qcv
