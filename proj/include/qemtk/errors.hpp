// Copyright 2026 The qemtk authors.
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//     http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#ifndef QEMTK_ERRORS_HPP
#define QEMTK_ERRORS_HPP

#include <stdexcept>
#include <string>

namespace qemtk {

/// Base class for all qemtk exceptions.
class Error : public std::runtime_error {
public:
  explicit Error(const std::string &msg) : std::runtime_error(msg) {}
};

// Input / contract violations.
class InvalidMatrix : public Error {
public:
  using Error::Error;
};
class ShapeMismatch : public Error {
public:
  using Error::Error;
};
class DimensionMismatch : public Error {
public:
  using Error::Error;
};
class LengthMismatch : public Error {
public:
  using Error::Error;
};
class NonHermitianInput : public Error {
public:
  using Error::Error;
};
class NonUnitaryInput : public Error {
public:
  using Error::Error;
};
class ParamOutOfRange : public Error {
public:
  using Error::Error;
};
class UnknownFixture : public Error {
public:
  using Error::Error;
};

// Invertibility.
class NonInvertibleChannel : public Error {
public:
  using Error::Error;
};
class NonInvertibleEstimate : public NonInvertibleChannel {
public:
  using NonInvertibleChannel::NonInvertibleChannel;
};
class NonInvertibleNoise : public NonInvertibleChannel {
public:
  using NonInvertibleChannel::NonInvertibleChannel;
};
class SingularReadoutMatrix : public Error {
public:
  using Error::Error;
};
class SingularChannel : public Error {
public:
  using Error::Error;
};

// Numerical failures (CLI exit code 3).
class NumericalError : public Error {
public:
  using Error::Error;
};
class IllConditionedBasis : public NumericalError {
public:
  using NumericalError::NumericalError;
};
class ClusterAmbiguity : public NumericalError {
public:
  using NumericalError::NumericalError;
};
class BackendDisagreement : public NumericalError {
public:
  using NumericalError::NumericalError;
};
class InvalidFirstOrderState : public NumericalError {
public:
  using NumericalError::NumericalError;
};

// Protocol-specific.
class DegenerateScales : public Error {
public:
  using Error::Error;
};
class TargetOutsideSpan : public Error {
public:
  using Error::Error;
};
class DegenerateInput : public Error {
public:
  using Error::Error;
};
class LengthNotMultipleOf3 : public Error {
public:
  using Error::Error;
};

} // namespace qemtk

#endif // QEMTK_ERRORS_HPP
