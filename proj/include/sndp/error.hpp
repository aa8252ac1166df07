#pragma once

#include <stdexcept>
#include <string>
#include <utility>

namespace sndp {

// Rejected input: malformed instance, invalid cut, parameter out of range.
class InputError : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

// A solver invariant failed. Carries the name of the violated invariant so
// the CLI can report it.
class InvariantError : public std::logic_error {
 public:
  InvariantError(std::string invariant, const std::string& detail)
      : std::logic_error(invariant + ": " + detail),
        invariant_(std::move(invariant)) {}

  const std::string& invariant() const noexcept { return invariant_; }

 private:
  std::string invariant_;
};

}  // namespace sndp
