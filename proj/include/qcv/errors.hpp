// SPDX-License-Identifier: MIT
// Exception types shared by all verification modules.
#pragma once

#include <stdexcept>
#include <string>

namespace qcv {

struct DimensionError : std::invalid_argument {
  using std::invalid_argument::invalid_argument;
};
struct ShapeError : std::invalid_argument {
  using std::invalid_argument::invalid_argument;
};
struct PoleError : std::domain_error {
  using std::domain_error::domain_error;
};
struct DivergenceError : std::domain_error {
  using std::domain_error::domain_error;
};
struct DenominatorZeroError : std::domain_error {
  using std::domain_error::domain_error;
};
struct UnlikeTermsError : std::domain_error {
  using std::domain_error::domain_error;
};
struct UnsupportedIdentityError : std::invalid_argument {
  using std::invalid_argument::invalid_argument;
};
struct JetOrderError : std::invalid_argument {
  using std::invalid_argument::invalid_argument;
};
struct InputError : std::invalid_argument {
  using std::invalid_argument::invalid_argument;
};
struct AccuracyError : std::runtime_error {
  using std::runtime_error::runtime_error;
};
struct PreconditionError : std::invalid_argument {
  using std::invalid_argument::invalid_argument;
};
struct ParseError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

}  // namespace qcv
