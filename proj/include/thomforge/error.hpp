#pragma once

#include <stdexcept>
#include <string>

namespace thomforge {

enum class ErrorKind {
  parse,
  degree_mismatch,
  d2_nonzero,
  weight_violation,
  unknown_generator,
  invalid_generator,
  mixed_presentations,
  cutoff_exceeded,
  euler_not_closed,
  odd_rank_unsupported,
  euler_inhomogeneous,
  not_cohomologous,
  not_simply_connected,
  euler_not_pure,
  bigrading_violation,
  non_quadratic,
  invalid_morphism,
  invalid_massey_system,
  undefined_product,
  invalid_dgl,
  invalid_argument,
};

inline const char* error_code(ErrorKind kind) {
  switch (kind) {
    case ErrorKind::parse: return "parse_error";
    case ErrorKind::degree_mismatch: return "degree_mismatch";
    case ErrorKind::d2_nonzero: return "d2_nonzero";
    case ErrorKind::weight_violation: return "weight_violation";
    case ErrorKind::unknown_generator: return "unknown_generator";
    case ErrorKind::invalid_generator: return "invalid_generator";
    case ErrorKind::mixed_presentations: return "mixed_presentations";
    case ErrorKind::cutoff_exceeded: return "cutoff_exceeded";
    case ErrorKind::euler_not_closed: return "euler_not_closed";
    case ErrorKind::odd_rank_unsupported: return "odd_rank_unsupported";
    case ErrorKind::euler_inhomogeneous: return "euler_inhomogeneous";
    case ErrorKind::not_cohomologous: return "not_cohomologous";
    case ErrorKind::not_simply_connected: return "not_simply_connected";
    case ErrorKind::euler_not_pure: return "euler_not_pure";
    case ErrorKind::bigrading_violation: return "bigrading_violation";
    case ErrorKind::non_quadratic: return "non_quadratic";
    case ErrorKind::invalid_morphism: return "invalid_morphism";
    case ErrorKind::invalid_massey_system: return "invalid_massey_system";
    case ErrorKind::undefined_product: return "undefined_product";
    case ErrorKind::invalid_dgl: return "invalid_dgl";
    case ErrorKind::invalid_argument: return "invalid_argument";
  }
  return "error";
}

/// Every failure raised by the library. `code()` is the stable machine-readable
/// tag (e.g. "d2_nonzero"); `what()` carries the human-readable detail.
class Error : public std::runtime_error {
 public:
  Error(ErrorKind kind, const std::string& message)
      : std::runtime_error(std::string(error_code(kind)) + ": " + message), kind_(kind) {}

  ErrorKind kind() const noexcept { return kind_; }
  const char* code() const noexcept { return error_code(kind_); }

 private:
  ErrorKind kind_;
};

}  // namespace thomforge
