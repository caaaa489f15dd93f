#pragma once

#include <cstddef>
#include <stdexcept>
#include <string>

namespace kricci {

/// Precondition on an argument was not met (zero vector, k out of range, ...).
class DomainError : public std::domain_error {
 public:
  using std::domain_error::domain_error;
};

/// A numerical routine could not produce a trustworthy answer.
class NumericError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// Request exceeds what the routine is willing to enumerate.
class ResourceError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// A stated hypothesis of a check could not be certified.
class PreconditionError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// Malformed input file.
class ParseError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// A metric lost positive definiteness.  Carries the flat grid index of the
/// worst point and the (non-positive) smallest eigenvalue found there.
class DegeneracyError : public std::runtime_error {
 public:
  DegeneracyError(const std::string& what, std::size_t worst_point,
                  double margin)
      : std::runtime_error(what), worst_point_(worst_point), margin_(margin) {}

  std::size_t worst_point() const noexcept { return worst_point_; }
  double margin() const noexcept { return margin_; }

 private:
  std::size_t worst_point_;
  double margin_;
};

}  // namespace kricci
