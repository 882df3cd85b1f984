#pragma once

#include <stdexcept>
#include <string>

namespace qtsvm {

// Base class for every failure raised by the library. The CLI maps the
// subclasses onto process exit codes.
class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

// Numerical failures (CLI exit code 3).
class NumericalError : public Error {
 public:
  using Error::Error;
};

class NonHermitianInput : public NumericalError {
 public:
  using NumericalError::NumericalError;
};

class SingularSystem : public NumericalError {
 public:
  using NumericalError::NumericalError;
};

class ZeroVector : public NumericalError {
 public:
  using NumericalError::NumericalError;
};

class NonUnitaryOperator : public NumericalError {
 public:
  using NumericalError::NumericalError;
};

class InvalidProjectorSet : public NumericalError {
 public:
  using NumericalError::NumericalError;
};

class ZeroColumnSum : public NumericalError {
 public:
  using NumericalError::NumericalError;
};

class PhaseWraparound : public NumericalError {
 public:
  using NumericalError::NumericalError;
};

class SingularOnSupport : public NumericalError {
 public:
  using NumericalError::NumericalError;
};

class DegenerateHyperplane : public NumericalError {
 public:
  using NumericalError::NumericalError;
};

class PaddingLeakage : public NumericalError {
 public:
  using NumericalError::NumericalError;
};

// Invalid arguments.
class InvalidPenalty : public Error {
 public:
  using Error::Error;
};

class InvalidSpec : public Error {
 public:
  using Error::Error;
};

class EmptyMatrix : public Error {
 public:
  using Error::Error;
};

class UnknownRegister : public Error {
 public:
  using Error::Error;
};

class DimensionMismatch : public Error {
 public:
  using Error::Error;
};

class QubitCapExceeded : public Error {
 public:
  using Error::Error;
};

class ParseError : public Error {
 public:
  using Error::Error;
};

}  // namespace qtsvm
