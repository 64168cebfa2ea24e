#pragma once

#include <stdexcept>
#include <string>
#include <string_view>

namespace cylinders {

enum class ErrorKind {
  degenerate_simplex,      // affinely dependent vertices, |det M| below tolerance
  dimension_mismatch,
  dimension_too_large,
  no_critical_point_found,
  empty_input,
  not_equifacial,
  empty_family,
  schema_error,
  shape_error,
  invalid_argument,
};

constexpr std::string_view to_string(ErrorKind kind) {
  switch (kind) {
    case ErrorKind::degenerate_simplex: return "degenerate_simplex";
    case ErrorKind::dimension_mismatch: return "dimension_mismatch";
    case ErrorKind::dimension_too_large: return "dimension_too_large";
    case ErrorKind::no_critical_point_found: return "no_critical_point_found";
    case ErrorKind::empty_input: return "empty_input";
    case ErrorKind::not_equifacial: return "not_equifacial";
    case ErrorKind::empty_family: return "empty_family";
    case ErrorKind::schema_error: return "schema_error";
    case ErrorKind::shape_error: return "shape_error";
    case ErrorKind::invalid_argument: return "invalid_argument";
  }
  return "unknown";
}

class Error : public std::runtime_error {
 public:
  Error(ErrorKind kind, const std::string& message)
      : std::runtime_error(message), kind_(kind) {}

  ErrorKind kind() const noexcept { return kind_; }

  // Input problems (bad documents, degenerate simplices, unsupported sizes)
  // as opposed to numerical failures inside a solver.
  bool is_input_error() const noexcept {
    switch (kind_) {
      case ErrorKind::no_critical_point_found:
      case ErrorKind::empty_family:
        return false;
      default:
        return true;
    }
  }

 private:
  ErrorKind kind_;
};

}  // namespace cylinders
