#ifndef COHTORUS_ERRORS_HPP_
#define COHTORUS_ERRORS_HPP_

#include <stdexcept>
#include <string>

namespace cohtorus {

class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

// Violated precondition on an argument.
class InvalidArgument : public Error {
 public:
  using Error::Error;
};

// Collinear or zero lattice generators.
class DegenerateLattice : public Error {
 public:
  using Error::Error;
};

class NotIntegerMultiple : public Error {
 public:
  using Error::Error;
};

class NotHermitian : public Error {
 public:
  using Error::Error;
};

class EmptyLattice : public Error {
 public:
  using Error::Error;
};

class TruncationOverflow : public Error {
 public:
  using Error::Error;
};

class NonConvergent : public Error {
 public:
  using Error::Error;
};

class FluxNotInteger : public Error {
 public:
  using Error::Error;
};

// Magnetic lattice configuration that is not a uniform-flux torus.
class InvalidConfig : public Error {
 public:
  using Error::Error;
};

class NoClearGap : public Error {
 public:
  using Error::Error;
};

class NegativeDegeneracy : public Error {
 public:
  using Error::Error;
};

}  // namespace cohtorus

#endif  // COHTORUS_ERRORS_HPP_
