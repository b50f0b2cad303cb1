#pragma once

#include <stdexcept>
#include <string>

namespace quadric {

enum class ErrorKind {
  invalid_dimension,
  not_unit,
  not_self_adjoint,
  not_tangent,
  hopf_required,
  invalid_radius,
  vanishing_reeb_curvature,
  invalid_input,
};

const char* to_string(ErrorKind kind);

/// Raised by every operation whose preconditions fail. The message carries
/// the measured defect where one exists (e.g. "|N| = 1.2").
class GeometryError : public std::runtime_error {
 public:
  GeometryError(ErrorKind kind, const std::string& what)
      : std::runtime_error(what), kind_(kind) {}

  ErrorKind kind() const noexcept { return kind_; }

 private:
  ErrorKind kind_;
};

}  // namespace quadric
