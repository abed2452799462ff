#pragma once

#include <stdexcept>
#include <string>
#include <vector>

namespace attlab {

/// A caller broke a documented precondition (dimension mismatch, t < t0, ...).
class ContractViolation : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

/// An operation that needs a nonempty set received an empty one.
class EmptySetError : public std::domain_error {
 public:
  using std::domain_error::domain_error;
};

/// The model has no implementation for the requested object (e.g. no
/// autonomous limit for a periodic forcing).
class UnsupportedModel : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

/// A time march produced a non-finite state or left the blow-up guard.
class NumericalFailure : public std::runtime_error {
 public:
  NumericalFailure(const std::string& what, double last_good_time)
      : std::runtime_error(what), last_good_time_(last_good_time) {}

  double last_good_time() const noexcept { return last_good_time_; }

 private:
  double last_good_time_;
};

/// evolve_set could not evolve some points of its input set.
class EvolveSetError : public std::runtime_error {
 public:
  EvolveSetError(const std::string& what, std::vector<std::size_t> failed)
      : std::runtime_error(what), failed_(std::move(failed)) {}

  const std::vector<std::size_t>& failed_points() const noexcept { return failed_; }

 private:
  std::vector<std::size_t> failed_;
};

}  // namespace attlab
