#pragma once

#include <stdexcept>
#include <string>

namespace clusterdouble {

class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

// A birational map or coordinate was evaluated outside its domain of
// definition: a pole, a vanishing determinant, coincident flags.
class DomainError : public Error {
 public:
  using Error::Error;
};

// Arguments violate a precondition: unknown or frozen index, mismatched
// variable sets, malformed triangulation for the requested operation.
class ArgumentError : public Error {
 public:
  using Error::Error;
};

// Text input (JSON files, rational literals) could not be decoded.
class ParseError : public Error {
 public:
  using Error::Error;
};

}  // namespace clusterdouble
