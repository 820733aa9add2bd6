// SPDX-License-Identifier: MIT
// Eigen traits for the working-precision Real.  The adaptor shipped with
// Boost 1.74 predates Eigen 3.4 and lacks infinity() and quiet_NaN().
#pragma once

#include "qcv/exact_scalars.hpp"

#include <Eigen/Core>

#include <limits>

namespace Eigen {

template <>
struct NumTraits<qcv::Real> : GenericNumTraits<qcv::Real> {
  using Real = qcv::Real;
  using NonInteger = qcv::Real;
  using Nested = qcv::Real;
  using Literal = qcv::Real;
  enum {
    IsComplex = 0,
    IsInteger = 0,
    IsSigned = 1,
    RequireInitialization = 1,
    ReadCost = 1,
    AddCost = 4,
    MulCost = 8,
  };
  static Real epsilon() { return std::numeric_limits<Real>::epsilon(); }
  static Real dummy_precision() { return 1000 * epsilon(); }
  static Real highest() { return (std::numeric_limits<Real>::max)(); }
  static Real lowest() { return std::numeric_limits<Real>::lowest(); }
  static Real infinity() { return std::numeric_limits<Real>::infinity(); }
  static Real quiet_NaN() { return std::numeric_limits<Real>::quiet_NaN(); }
  static int digits10() { return std::numeric_limits<Real>::digits10; }
};

}  // namespace Eigen
