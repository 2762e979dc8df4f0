#ifndef HANKEL_ERRORS_HPP
#define HANKEL_ERRORS_HPP

#include <cstddef>
#include <stdexcept>
#include <string>
#include <utility>

namespace hankel {

class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// A family parameter or argument outside its admissible range.
class DomainError : public Error {
 public:
  using Error::Error;
};

/// An explicit moment requested beyond the stored data.
class MissingDataError : public Error {
 public:
  using Error::Error;
};

/// The backend cannot represent the requested values (overflow, irrational
/// moments under the rational backend). `required` names a backend that can.
class PrecisionError : public Error {
 public:
  PrecisionError(const std::string& what, std::string required)
      : Error(what + " (requires backend " + required + ")"), required_(std::move(required)) {}
  const std::string& required_backend() const noexcept { return required_; }

 private:
  std::string required_;
};

class UnsupportedBackendError : public Error {
 public:
  using Error::Error;
};

/// A non-positive pivot in a Hankel factorization. `dimension` is the
/// leading dimension whose minor failed (1-based).
class PositivityError : public Error {
 public:
  PositivityError(const std::string& what, std::size_t dimension, bool precision_suspected)
      : Error(what), dimension_(dimension), precision_suspected_(precision_suspected) {}
  std::size_t dimension() const noexcept { return dimension_; }
  bool precision_suspected() const noexcept { return precision_suspected_; }

 private:
  std::size_t dimension_;
  bool precision_suspected_;
};

/// A theorem hypothesis that the finite computation relies on is violated.
class HypothesisError : public Error {
 public:
  using Error::Error;
};

class EmptyMeasureError : public Error {
 public:
  using Error::Error;
};

}  // namespace hankel

#endif  // HANKEL_ERRORS_HPP
