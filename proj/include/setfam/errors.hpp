// SPDX-License-Identifier: Apache-2.0
#pragma once

#include <stdexcept>
#include <string>

namespace setfam {

/// Base class for every error raised by the library.
class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// A precondition on an argument does not hold (bad eps, arity mismatch, ...).
class InvalidArgument : public Error {
 public:
  using Error::Error;
};

/// A configured cap (enumeration size, one-input count, search budget) would
/// be exceeded. Raised instead of returning a partial answer.
class ResourceLimit : public Error {
 public:
  using Error::Error;
};

/// Malformed input file or text.
class ParseError : public Error {
 public:
  using Error::Error;
};

/// A file could not be opened, read or written.
class IoError : public Error {
 public:
  using Error::Error;
};

}  // namespace setfam
