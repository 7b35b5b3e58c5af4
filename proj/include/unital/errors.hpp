#pragma once

#include <stdexcept>

namespace unital {

/// Base class for every error raised by the library.
class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

class DimensionMismatch : public Error {
 public:
  using Error::Error;
};

class NotSquare : public Error {
 public:
  using Error::Error;
};

class NotHermitian : public Error {
 public:
  using Error::Error;
};

class NotUnitary : public Error {
 public:
  using Error::Error;
};

/// A matrix failed the density-matrix admission checks.
class InvalidState : public Error {
 public:
  using Error::Error;
};

class NotCptp : public Error {
 public:
  using Error::Error;
};

/// Bad labels, unknown names, out-of-range configuration values.
class InvalidArgument : public Error {
 public:
  using Error::Error;
};

/// Malformed JSON input or a document that violates the repo encoding.
class ParseError : public Error {
 public:
  using Error::Error;
};

}  // namespace unital
