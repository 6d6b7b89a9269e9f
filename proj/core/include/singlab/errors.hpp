#pragma once

#include <cstddef>
#include <stdexcept>
#include <string>

namespace singlab {

// Base class for every error singlab raises on purpose.
class Error : public std::runtime_error {
public:
  using std::runtime_error::runtime_error;
};

// Text did not conform to a grammar. `offset` is the byte position of the
// first offending character.
class ParseError : public Error {
public:
  ParseError(const std::string& msg, std::size_t offset)
      : Error(msg + " (at byte " + std::to_string(offset) + ")"), offset(offset) {}
  std::size_t offset;
};

class DimensionMismatch : public Error {
public:
  using Error::Error;
};

class IndexOutOfRange : public Error {
public:
  using Error::Error;
};

class ZeroField : public Error {
public:
  using Error::Error;
};

class NotZeroDimensional : public Error {
public:
  using Error::Error;
};

class ResourceLimitExceeded : public Error {
public:
  using Error::Error;
};

class IllConditioned : public Error {
public:
  using Error::Error;
};

class WNotInSingularLocus : public Error {
public:
  using Error::Error;
};

class WNotCoordinate : public Error {
public:
  using Error::Error;
};

class NotGraphForm : public Error {
public:
  using Error::Error;
};

class NotTotallySimple : public Error {
public:
  using Error::Error;
};

class InconsistentBalance : public Error {
public:
  using Error::Error;
};

class MissingTableEntry : public Error {
public:
  using Error::Error;
};

class AmbiguousMatching : public Error {
public:
  using Error::Error;
};

class NonCoprimeAB : public Error {
public:
  using Error::Error;
};

class RepeatedRootsInPm : public Error {
public:
  using Error::Error;
};

class UnknownGenerator : public Error {
public:
  using Error::Error;
};

}  // namespace singlab
