#pragma once

#include <cstddef>
#include <stdexcept>
#include <string>

namespace swarm {

/// Base for every error raised by the library.
class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// Raised when an integrator step produces non-finite coordinates.
class NumericalBlowUp : public Error {
 public:
  NumericalBlowUp(std::size_t step, const std::string& what)
      : Error("numerical blow-up at step " + std::to_string(step) + ": " + what), step_(step) {}

  std::size_t step() const { return step_; }

 private:
  std::size_t step_;
};

}  // namespace swarm
