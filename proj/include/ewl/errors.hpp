#pragma once

#include <stdexcept>
#include <string>

namespace ewl {

/// An angle or parameter lies outside the domain an operation accepts.
class DomainError : public std::domain_error {
  public:
    using std::domain_error::domain_error;
};

/// An exact (rational) result was requested but the value is irrational or
/// was supplied as a floating-point number.
class InexactValue : public std::domain_error {
  public:
    using std::domain_error::domain_error;
};

/// Class parameters violate one of the defining congruences of their class.
class InvalidClassParams : public std::invalid_argument {
  public:
    using std::invalid_argument::invalid_argument;
};

/// Class A is a continuous family and has no discrete solution list.
class NotDiscrete : public std::invalid_argument {
  public:
    using std::invalid_argument::invalid_argument;
};

class DimensionMismatch : public std::invalid_argument {
  public:
    using std::invalid_argument::invalid_argument;
};

class ParseError : public std::invalid_argument {
  public:
    using std::invalid_argument::invalid_argument;
};

}  // namespace ewl
