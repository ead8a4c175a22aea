#pragma once

#include <stdexcept>
#include <string>

namespace frontal {

// Base of everything the library throws on purpose.
class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

// Bad user input: syntax, missing keys, unknown names, malformed numbers.
class InputError : public Error {
 public:
  using Error::Error;
};

// A numerical precondition failed (domain, deflation, degeneracy, ...).
class NumericalError : public Error {
 public:
  using Error::Error;
};

class DomainError : public NumericalError {
 public:
  explicit DomainError(const std::string& what, bool located = false)
      : NumericalError(what), located_(located) {}
  bool located() const { return located_; }

 private:
  bool located_;
};

// deflate_v could not divide by v^k: the chart is not pre-adapted, or the
// point is not pure-frontal.
class DeflationError : public NumericalError {
 public:
  DeflationError(const std::string& what, double offending)
      : NumericalError(what), offending_(offending) {}
  double offending() const { return offending_; }

 private:
  double offending_;
};

}  // namespace frontal
