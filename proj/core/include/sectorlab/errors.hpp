#pragma once

#include <stdexcept>
#include <string>

namespace sectorlab {

// Three failure classes, mapped one-to-one onto CLI exit codes 2, 3 and 4.

/// Input rejected before any work was done (bad text, bad dimension, ...).
class ValidationError : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

/// A configured size cap was hit (expansion size, closure size, ...).
class ResourceError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// An internal consistency check failed; indicates a bug, not bad input.
class InvariantError : public std::logic_error {
 public:
  using std::logic_error::logic_error;
};

/// Parse failure carrying the 0-based byte offset of the offending character.
class SyntaxError : public ValidationError {
 public:
  SyntaxError(const std::string& what, std::size_t position)
      : ValidationError(what + " at position " + std::to_string(position)),
        position_(position) {}

  std::size_t position() const noexcept { return position_; }

 private:
  std::size_t position_;
};

}  // namespace sectorlab
