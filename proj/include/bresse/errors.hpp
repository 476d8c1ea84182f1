#pragma once

#include <stdexcept>
#include <string>
#include <vector>

namespace bresse {

/// Base class for all library errors.
class error : public std::runtime_error {
 public:
  explicit error(const std::string& msg) : std::runtime_error(msg) {}
};

/// Mismatched array lengths or incompatible sample lattices.
class dimension_error : public error {
 public:
  using error::error;
};

/// Argument outside its admissible range (positions, windows, flags).
class parameter_error : public error {
 public:
  using error::error;
};

/// Position outside the beam.
class domain_error : public error {
 public:
  using error::error;
};

/// Invalid or inconsistent configuration (bad coefficients, bad file keys).
class config_error : public error {
 public:
  using error::error;
};

/// Requested probe or series does not exist.
class lookup_error : public error {
 public:
  using error::error;
};

/// No admissible grid exists under the requested constraints.
class construction_error : public error {
 public:
  using error::error;
};

/// A field left the representable range during time integration.
class blow_up_error : public error {
 public:
  blow_up_error(const std::string& msg, double last_valid_time)
      : error(msg), last_valid_time(last_valid_time) {}
  double last_valid_time;
};

/// Newton iteration at the interface failed to converge.
class interface_error : public error {
 public:
  interface_error(const std::string& msg, std::vector<double> residual_history)
      : error(msg), residual_history(std::move(residual_history)) {}
  std::vector<double> residual_history;
};

}  // namespace bresse
