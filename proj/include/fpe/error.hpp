#pragma once

#include <stdexcept>
#include <string>

namespace fpe {

/// Base class for every failure raised by the library.
class Error : public std::runtime_error {
public:
  using std::runtime_error::runtime_error;
};

/// A precondition on an argument was violated (bad dimensions, bad parameter).
class InvalidArgument : public Error {
public:
  using Error::Error;
};

/// A real-valued input contained NaN or infinity.
class NonFiniteValue : public Error {
public:
  using Error::Error;
};

/// The histogram has fewer than two occupied levels, so no two-class split exists.
class NoDichotomy : public Error {
public:
  NoDichotomy() : Error("histogram has a single occupied level; no two-class split exists") {}
};

/// One-sided Jacobi did not reach the orthogonality tolerance within the sweep budget.
class SvdNotConverged : public Error {
public:
  using Error::Error;
};

/// The approximation subband is identically zero, so the illumination ratio is undefined.
class ZeroSubband : public Error {
public:
  ZeroSubband() : Error("approximation subband is zero; illumination ratio undefined") {}
};

}  // namespace fpe
