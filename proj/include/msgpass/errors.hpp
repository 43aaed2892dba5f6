#pragma once

#include <stdexcept>
#include <string>

namespace msgpass {

// Base class for all library errors.
class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

// Caller misuse: bad arguments, protocol/instance mismatch, self-send, ...
class UsageError : public Error {
 public:
  using Error::Error;
};

// A payload value lies outside its declared range.
class RangeError : public Error {
 public:
  using Error::Error;
};

// Malformed instance file or JSON document.
class ParseError : public Error {
 public:
  using Error::Error;
};

// A protocol exceeded its configured round limit.
class DivergenceError : public Error {
 public:
  using Error::Error;
};

// A site read an inbox slot it declared required but that is empty,
// or an equally fatal protocol-internal inconsistency.
class ProtocolLogicError : public Error {
 public:
  using Error::Error;
};

// The protocol's answer is undefined on empty input (e.g. max-frequency
// of an empty union).
class EmptyInputError : public Error {
 public:
  using Error::Error;
};

}  // namespace msgpass
