// SPDX-License-Identifier: MIT
// Normalisations shared by the closed-form and first-principles routes.
#pragma once

#include "qcv/reduced_energy.hpp"

namespace qcv::detail {

// Gamma parts of energy_prefactor and hessian_prefactor, without |S^{N-1}|.
SymScalar energy_gamma(int N);
SymScalar hessian_gamma(int N);

// lambda'^shift * series / norm, which must come out rational.
TauPoly normalized(const LambdaSeries& ls, int shift, const SymScalar& norm, int N);

}  // namespace qcv::detail
