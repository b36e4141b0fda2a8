#pragma once

#include <stdexcept>
#include <string>

namespace nvdressed {

// Input matrix failed the Hermiticity check of the eigensolver.
class NonHermitianInput : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

// Perturbative series requested outside its validity range (zeta >= 0.2).
class SeriesOutOfRange : public std::domain_error {
 public:
  using std::domain_error::domain_error;
};

class UnnormalizedInput : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

class InvalidDensityMatrix : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

class ZeroDrive : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

class MissingNoiseParameter : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

class InsufficientTrials : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

class SingularJacobian : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

class NonFiniteResidual : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

// Malformed configuration file or unknown key.
class ConfigError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

}  // namespace nvdressed
