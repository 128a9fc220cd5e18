#pragma once

#include <stdexcept>
#include <string>

namespace alesolve {

// Invalid configuration or construction parameters.
class ConfigError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

// Misuse of an API, e.g. mismatched array lengths.
class UsageError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

// Inadmissible physical state (nonpositive density, height or pressure).
class StateError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

// Degenerate or inverted geometry.
class GeometryError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

// Time step produced a nonpositive stage Jacobian.
class TimeStepError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

}  // namespace alesolve
