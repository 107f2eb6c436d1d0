#pragma once

#include <stdexcept>
#include <string>

namespace epr {

// Base class for every error thrown by this library.
class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

// A state failed a physicality invariant.  The message names the invariant
// that was violated (hermiticity, unit trace, positivity, uncertainty bound).
class PhysicalityError : public Error {
 public:
  using Error::Error;
};

// A Fock-space cutoff is too small for the requested tail tolerance.
class TruncationError : public Error {
 public:
  TruncationError(const std::string& what, double tail_mass)
      : Error(what), tail_mass_(tail_mass) {}
  double tail_mass() const noexcept { return tail_mass_; }

 private:
  double tail_mass_;
};

// A quadrature grid failed to capture the required probability mass, or was
// otherwise unusable (empty, inverted bounds, non-uniform request).
class GridError : public Error {
 public:
  explicit GridError(const std::string& what, double mass_deficit = 0.0)
      : Error(what), mass_deficit_(mass_deficit) {}
  double mass_deficit() const noexcept { return mass_deficit_; }

 private:
  double mass_deficit_;
};

// A state-spec file could not be parsed or referred to an unknown kind.
class SpecError : public Error {
 public:
  using Error::Error;
};

}  // namespace epr
