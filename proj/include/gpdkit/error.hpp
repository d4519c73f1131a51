#pragma once

#include <cstddef>
#include <stdexcept>
#include <string>

namespace gpdkit {

// Base of every error raised by the library. Anything else escaping a call is
// a bug.
class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

class IndexOutOfRange : public Error {
 public:
  using Error::Error;
};

class InvalidGroupoid : public Error {
 public:
  using Error::Error;
};

class DuplicateLabel : public Error {
 public:
  using Error::Error;
};

class NotComposable : public Error {
 public:
  NotComposable(std::size_t left, std::size_t right)
      : Error("morphisms " + std::to_string(left) + " and " +
              std::to_string(right) + " are not composable"),
        left_(left),
        right_(right) {}

  std::size_t left() const noexcept { return left_; }
  std::size_t right() const noexcept { return right_; }

 private:
  std::size_t left_;
  std::size_t right_;
};

class ParentMismatch : public Error {
 public:
  using Error::Error;
};

class EmptyRestriction : public Error {
 public:
  using Error::Error;
};

class InvalidGroupTable : public Error {
 public:
  using Error::Error;
};

class InvalidAction : public Error {
 public:
  using Error::Error;
};

class ShapeMismatch : public Error {
 public:
  using Error::Error;
};

class ConvergenceFailure : public Error {
 public:
  using Error::Error;
};

class NotFunctorial : public Error {
 public:
  using Error::Error;
};

class UnknownEvent : public Error {
 public:
  using Error::Error;
};

class IntraFrameIdentification : public Error {
 public:
  using Error::Error;
};

class NotVerticallyComposable : public Error {
 public:
  using Error::Error;
};

class NotHorizontallyComposable : public Error {
 public:
  using Error::Error;
};

}  // namespace gpdkit
