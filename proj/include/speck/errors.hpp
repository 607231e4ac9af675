#pragma once

#include <stdexcept>
#include <string>

namespace speck {

// Operands from different algebras, or inputs violating a type invariant.
class StructuralError : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

// Requested object would exceed the supported size.
class ResourceError : public std::length_error {
 public:
  using std::length_error::length_error;
};

// Well-formed request for something this library does not model.
class UnsupportedError : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

// Argument outside the mathematical domain of the operation.
class DomainError : public std::domain_error {
 public:
  using std::domain_error::domain_error;
};

// A documented precondition on an operator or taming does not hold.
class PreconditionError : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

// Inhomogeneous input where the operation needs a homogeneous one.
class DecomposeFirstError : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

// Malformed JSON input.
class ParseError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

}  // namespace speck
