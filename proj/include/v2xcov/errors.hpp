// Copyright 2026 The v2xcov Authors
// SPDX-License-Identifier: Apache-2.0

#pragma once

#include <stdexcept>
#include <string>

namespace v2xcov {

// Invalid model parameter or violated precondition.
class ParameterError : public std::invalid_argument
{
  public:
    using std::invalid_argument::invalid_argument;
};

// Quadrature or series evaluation that did not converge, or a sampling loop
// that ran out of attempts.
class NumericError : public std::runtime_error
{
  public:
    using std::runtime_error::runtime_error;
};

} // namespace v2xcov
