#pragma once

#include <cstddef>
#include <stdexcept>
#include <string>

namespace mdcutfem {

/// Base class of every error raised by the library.
class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

class GeometryError : public Error {
 public:
  using Error::Error;
};

/// An interior boundary piece that coincides with no lower-dimensional component.
class HierarchyViolation : public Error {
 public:
  using Error::Error;
};

class ParseError : public Error {
 public:
  ParseError(const std::string& message, std::size_t position)
      : Error(message + " at position " + std::to_string(position)), position_(position) {}
  std::size_t position() const { return position_; }

 private:
  std::size_t position_;
};

class ConfigError : public Error {
 public:
  using Error::Error;
};

class PointOutsideElement : public Error {
 public:
  using Error::Error;
};

class PointNotInActiveMesh : public Error {
 public:
  using Error::Error;
};

class BothScalesZero : public Error {
 public:
  using Error::Error;
};

class InternalError : public Error {
 public:
  using Error::Error;
};

class SingularMatrix : public Error {
 public:
  using Error::Error;
};

class ResidualTooLarge : public Error {
 public:
  using Error::Error;
};

class ExactSolutionMissing : public Error {
 public:
  using Error::Error;
};

class ResidualExceeded : public Error {
 public:
  using Error::Error;
};

class IdentityViolation : public Error {
 public:
  using Error::Error;
};

class UnknownCase : public Error {
 public:
  using Error::Error;
};

}  // namespace mdcutfem
