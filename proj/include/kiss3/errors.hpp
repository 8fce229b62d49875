#pragma once

#include <stdexcept>
#include <string>

namespace kiss3 {

// Base for every failure raised by the verification engine.
class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

class DomainError : public Error {
 public:
  using Error::Error;
};

// Sturm counting could not move an endpoint off a root.
class DegenerateEndpoint : public Error {
 public:
  using Error::Error;
};

class NoRoot : public Error {
 public:
  using Error::Error;
};

class MultipleRoots : public Error {
 public:
  using Error::Error;
};

class TooFewPoints : public Error {
 public:
  using Error::Error;
};

class SaturationError : public Error {
 public:
  using Error::Error;
};

class CertificateInvalid : public Error {
 public:
  using Error::Error;
};

class SeparationViolation : public Error {
 public:
  using Error::Error;
};

// Invalid run configuration (exit code 2 at the CLI).
class ConfigError : public Error {
 public:
  using Error::Error;
};

// A bound that must stay strictly below its threshold did not.
class BoundFailure : public Error {
 public:
  BoundFailure(std::string quantity, double upper, const std::string& what)
      : Error(what), quantity_(std::move(quantity)), upper_(upper) {}

  const std::string& quantity() const { return quantity_; }
  double upper() const { return upper_; }

 private:
  std::string quantity_;
  double upper_;
};

}  // namespace kiss3
