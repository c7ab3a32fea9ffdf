#pragma once

#include <stdexcept>
#include <string>

namespace lcpir {

/// Base class for all errors raised by this library.
class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

class NotPrime : public Error {
 public:
  using Error::Error;
};

class DivisionByZero : public Error {
 public:
  using Error::Error;
};

class DuplicateNode : public Error {
 public:
  using Error::Error;
};

class DegreeTooHigh : public Error {
 public:
  using Error::Error;
};

class InfeasibleParams : public Error {
 public:
  using Error::Error;
};

class FieldTooSmall : public Error {
 public:
  using Error::Error;
};

class ShapeMismatch : public Error {
 public:
  using Error::Error;
};

/// No polynomial of the requested dimension is consistent with the
/// surviving symbols; the corruption budget was exceeded.
class DecodeFailure : public Error {
 public:
  using Error::Error;
};

class NotEnoughShares : public Error {
 public:
  using Error::Error;
};

class MissingRound : public Error {
 public:
  using Error::Error;
};

class MissingQuery : public Error {
 public:
  using Error::Error;
};

/// Raised when an operation needs a feature that the current
/// configuration has switched off (e.g. answer masking).
class ModeOff : public Error {
 public:
  using Error::Error;
};

class ParseError : public Error {
 public:
  using Error::Error;
};

}  // namespace lcpir
