#pragma once

#include <stdexcept>
#include <string>

namespace hks {

/// Base of every error raised by the toolkit.
class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// An argument violates an operation's precondition (bad grid size, block
/// index out of range, mismatched grids, ...).
class PreconditionError : public Error {
 public:
  using Error::Error;
};

/// A computation produced a non-finite value or left its validity regime.
class NumericalError : public Error {
 public:
  using Error::Error;
};

/// File-system or format failure while reading/writing artifacts.
class IoError : public Error {
 public:
  using Error::Error;
};

}  // namespace hks
