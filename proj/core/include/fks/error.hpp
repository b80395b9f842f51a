// SPDX-License-Identifier: Apache-2.0
#pragma once

#include <cstddef>
#include <stdexcept>
#include <string>

namespace fks {

class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

// Argument outside the documented domain of an operation.
class DomainError : public Error {
 public:
  using Error::Error;
};

// A numerical estimate failed its own accuracy check.
class AccuracyError : public Error {
 public:
  using Error::Error;
};

// A postcondition that the implementation asserts internally did not hold.
class ContractViolation : public Error {
 public:
  using Error::Error;
};

class SingularityError : public DomainError {
 public:
  using DomainError::DomainError;
};

class CollisionError : public Error {
 public:
  CollisionError(std::size_t i, std::size_t j)
      : Error("particles " + std::to_string(i) + " and " + std::to_string(j) + " coincide"),
        first(i),
        second(j) {}
  std::size_t first;
  std::size_t second;
};

class BlowUpError : public Error {
 public:
  explicit BlowUpError(double t)
      : Error("blow-up detected at t=" + std::to_string(t)), time(t) {}
  double time;
};

class ConfigError : public Error {
 public:
  using Error::Error;
};

class ResolutionError : public Error {
 public:
  using Error::Error;
};

class CflError : public Error {
 public:
  using Error::Error;
};

class MassDriftError : public Error {
 public:
  using Error::Error;
};

class SizeError : public Error {
 public:
  using Error::Error;
};

class NoSignChangeError : public Error {
 public:
  using Error::Error;
};

}  // namespace fks
