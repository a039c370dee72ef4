#pragma once

#include <stdexcept>
#include <string>

namespace unate {

class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// Invalid argument or parameter combination (bad epsilon, shape mismatch, ...).
class ParameterError : public Error {
 public:
  using Error::Error;
};

/// An exact oracle was asked to process an instance beyond its scan budget.
class CapacityError : public Error {
 public:
  using Error::Error;
};

/// Malformed JSON document or record.
class FormatError : public Error {
 public:
  using Error::Error;
};

}  // namespace unate
