#pragma once

#include <stdexcept>
#include <string>

namespace hyperq {

/// Base class of every error raised by the library.
class Error : public std::runtime_error {
public:
  using std::runtime_error::runtime_error;
};

/// Exhaustive enumeration requested beyond the configured size bound.
class BoundExceeded : public Error {
public:
  using Error::Error;
};

/// Group enumeration exceeded the configured order bound.
class OrderBoundExceeded : public Error {
public:
  using Error::Error;
};

/// An atom table whose units cannot be resolved uniquely.
class NotModular : public Error {
public:
  using Error::Error;
};

/// A hypergroupoid with an arrow lacking a simple factorization.
class NotSemisimple : public Error {
public:
  using Error::Error;
};

/// A structure constant or weight needed as a finite number was infinite.
class InfiniteCoefficient : public Error {
public:
  using Error::Error;
};

/// A weight that must be inverted is zero.
class ZeroWeight : public Error {
public:
  using Error::Error;
};

class DimensionMismatch : public Error {
public:
  using Error::Error;
};

/// Malformed input document or element literal.
class ParseError : public Error {
public:
  using Error::Error;
};

}  // namespace hyperq
