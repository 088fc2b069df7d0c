#pragma once

#include <stdexcept>
#include <string>

namespace ckh {

// Base of every error the library throws on a violated contract.
class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

// Operands live in incompatible variable spaces.
class SpaceError : public Error {
 public:
  using Error::Error;
};

// A documented precondition of an operation does not hold.
class PreconditionError : public Error {
 public:
  using Error::Error;
};

// A count or index does not fit, or exceeds a configured size limit.
class SizeError : public Error {
 public:
  using Error::Error;
};

// Composition would need infinitely many terms per output degree.
class FormalConvergenceError : public Error {
 public:
  using Error::Error;
};

// Term budget of an iterative construction exhausted.
class BudgetError : public Error {
 public:
  using Error::Error;
};

// Malformed input document.
class ParseError : public Error {
 public:
  using Error::Error;
};

// A tail sum has no finite analytic bound.
class TailError : public Error {
 public:
  using Error::Error;
};

// A point lies outside the domain of a chart or region.
class DomainError : public Error {
 public:
  using Error::Error;
};

}  // namespace ckh
