#pragma once

#include <stdexcept>
#include <string>

namespace mottscope {

// Out-of-range configuration field. field() names the offender.
class RangeError : public std::out_of_range {
 public:
  RangeError(std::string field, const std::string& what)
      : std::out_of_range(field + ": " + what), field_(std::move(field)) {}
  const std::string& field() const noexcept { return field_; }

 private:
  std::string field_;
};

class OverflowError : public std::overflow_error {
 public:
  using std::overflow_error::overflow_error;
};

class NotInBasis : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

class ConvergenceError : public std::runtime_error {
 public:
  ConvergenceError(const std::string& what, long iterations)
      : std::runtime_error(what), iterations_(iterations) {}
  long iterations() const noexcept { return iterations_; }

 private:
  long iterations_;
};

class DomainError : public std::domain_error {
 public:
  using std::domain_error::domain_error;
};

class NoRoot : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

class ValidationError : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

}  // namespace mottscope
