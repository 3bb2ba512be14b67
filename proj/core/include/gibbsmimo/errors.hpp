#pragma once

#include <stdexcept>
#include <string>

namespace gibbsmimo {

// Base for every error thrown by the library.
class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

// A precondition on an argument was violated (bad n, non-positive snr, ...).
class InvalidArgument : public Error {
 public:
  using Error::Error;
};

// Sizes of vectors/matrices do not agree.
class DimensionMismatch : public Error {
 public:
  using Error::Error;
};

// A validity guard of an algorithm or formula failed: exhaustive search too
// large, Gaussian-integral convergence condition violated, infeasible
// temperature regime, singular channel, empty sphere.
class GuardViolation : public Error {
 public:
  using Error::Error;
};

class SingularChannel : public GuardViolation {
 public:
  using GuardViolation::GuardViolation;
};

class EmptySphere : public GuardViolation {
 public:
  using GuardViolation::GuardViolation;
};

}  // namespace gibbsmimo
