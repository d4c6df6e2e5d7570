#pragma once

#include <stdexcept>
#include <string>

namespace stacknash {

class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

class NonpositivePremium : public Error {
 public:
  using Error::Error;
};

class NonpositiveInput : public Error {
 public:
  using Error::Error;
};

class InvalidParams : public Error {
 public:
  using Error::Error;
};

class NoEquilibrium : public Error {
 public:
  using Error::Error;
};

class SolverFailure : public Error {
 public:
  using Error::Error;
};

// Implicit-function denominator 1 - phi1'*phi2' too close to zero.
class DegenerateDenominator : public Error {
 public:
  using Error::Error;
};

}  // namespace stacknash
