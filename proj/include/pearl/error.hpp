#pragma once

#include <stdexcept>
#include <string>

namespace pearl {

enum class ErrorKind {
  center_input,
  half_space,
  dimension_mismatch,
  unsupported_dimension,
  non_finite,
  inconsistent_dimension,
  not_face_closed,
  unknown_name,
  audit_failed,
  explosion_guard,
  insufficient_data,
  trivial_descriptor,
  invalid_monodromy,
  input,
  overflow,
};

const char* to_string(ErrorKind kind);

class Error : public std::runtime_error {
 public:
  Error(ErrorKind kind, const std::string& what)
      : std::runtime_error(what), kind_(kind) {}
  ErrorKind kind() const noexcept { return kind_; }

 private:
  ErrorKind kind_;
};

class GeometryError : public Error {
 public:
  using Error::Error;
};

/// Malformed files or arguments; the CLI maps these to exit code 2.
class InputError : public Error {
 public:
  explicit InputError(const std::string& what) : Error(ErrorKind::input, what) {}
  InputError(ErrorKind kind, const std::string& what) : Error(kind, what) {}
};

}  // namespace pearl
