// Exception types raised by the solver. The CLI maps each family onto an
// exit code, so keep the hierarchy shallow.

#pragma once

#include <cstddef>
#include <stdexcept>
#include <string>
#include <vector>

namespace impulse_game {

class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

// Input problems (bad parameters, bad config). Exit code 1.
class InputError : public Error {
 public:
  using Error::Error;
};

class InvalidParameters : public InputError {
 public:
  explicit InvalidParameters(std::vector<std::string> fields);
  const std::vector<std::string>& fields() const { return fields_; }

 private:
  std::vector<std::string> fields_;
};

class ConfigError : public InputError {
 public:
  ConfigError(std::size_t line, const std::string& message);
  // line == 0 when the problem is not tied to a single line.
  std::size_t line() const { return line_; }

 private:
  std::size_t line_;
};

// Numeric or model violations. Exit code 2.
class ModelError : public Error {
 public:
  using Error::Error;
};

class DegenerateParameter : public ModelError {
 public:
  using ModelError::ModelError;
};

class NonFinite : public ModelError {
 public:
  NonFinite(std::size_t node, const std::string& what);
  std::size_t node() const { return node_; }

 private:
  std::size_t node_;
};

class ConvexityViolation : public ModelError {
 public:
  ConvexityViolation(std::size_t node, double t, double p2);
  std::size_t node() const { return node_; }

 private:
  std::size_t node_;
};

class OrderingViolation : public ModelError {
 public:
  OrderingViolation(std::size_t node, double t);
  std::size_t node() const { return node_; }

 private:
  std::size_t node_;
};

class ImpulseBudgetExceeded : public ModelError {
 public:
  using ModelError::ModelError;
};

class RegionError : public ModelError {
 public:
  using ModelError::ModelError;
};

}  // namespace impulse_game
