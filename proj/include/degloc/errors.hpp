#pragma once

#include <cstddef>
#include <stdexcept>
#include <string>

namespace degloc {

/// Base class of every error raised by the library.
class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// A scalar divisor of the circuit (or an integer 1/k) vanishes modulo the
/// active prime. The caller should switch to another prime.
class DivisorNotInvertible : public Error {
 public:
  using Error::Error;
};

/// An element of a residue ring has no inverse.
class NotInvertible : public Error {
 public:
  using Error::Error;
};

/// The random choices (coordinates, lifting point, primitive element,
/// prime, ...) were not generic enough. Retrying with fresh randomness is
/// expected to succeed.
class RandomnessFailure : public Error {
 public:
  using Error::Error;
};

class SingularJacobian : public RandomnessFailure {
 public:
  using RandomnessFailure::RandomnessFailure;
};

class NotPrimitive : public RandomnessFailure {
 public:
  using RandomnessFailure::RandomnessFailure;
};

class BadLiftingPoint : public RandomnessFailure {
 public:
  using RandomnessFailure::RandomnessFailure;
};

class CoverageFailure : public RandomnessFailure {
 public:
  using RandomnessFailure::RandomnessFailure;
};

class NonMonicInput : public Error {
 public:
  using Error::Error;
};

/// Not enough primes to reconstruct rational coefficients.
class InsufficientPrecision : public Error {
 public:
  using Error::Error;
};

/// Residues modulo different primes do not describe the same object.
class InconsistentResidues : public Error {
 public:
  using Error::Error;
};

/// The solution set is empty where a nonempty variety was required.
class EmptyVariety : public Error {
 public:
  using Error::Error;
};

/// A post-check of the output failed; the input promises (reduced regular
/// sequence, smoothness) are most likely violated.
class PromiseViolationDetected : public Error {
 public:
  using Error::Error;
};

class NotOnVariety : public Error {
 public:
  using Error::Error;
};

class ParseError : public Error {
 public:
  ParseError(const std::string& what, std::size_t line, std::size_t column)
      : Error(std::to_string(line) + ":" + std::to_string(column) + ": " + what),
        line_(line),
        column_(column) {}

  std::size_t line() const { return line_; }
  std::size_t column() const { return column_; }

 private:
  std::size_t line_;
  std::size_t column_;
};

}  // namespace degloc
