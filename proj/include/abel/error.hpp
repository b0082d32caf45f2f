#pragma once

#include <cstddef>
#include <stdexcept>
#include <string>

namespace abel {

/// Kind or dimension mismatch, or an argument outside the operation's domain.
class DomainError : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

/// A theorem hypothesis failed on the supplied instance. `index()` is the
/// 1-based position of the first offending element (0 when not applicable).
class PreconditionError : public std::invalid_argument {
 public:
  PreconditionError(const std::string& what, std::size_t index)
      : std::invalid_argument(what), index_(index) {}

  std::size_t index() const noexcept { return index_; }

 private:
  std::size_t index_;
};

/// The operation is not defined for this element kind (for example lattice
/// parts of a symmetric matrix).
class UnsupportedError : public std::logic_error {
 public:
  using std::logic_error::logic_error;
};

/// An iterative kernel failed to reach its stopping criterion.
class ConvergenceError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

}  // namespace abel
