#pragma once

#include <stdexcept>
#include <string>

namespace unicrit {

/// Failure classes used across the toolkit. The CLI maps each kind to a
/// documented exit code; library callers dispatch on kind().
enum class ErrorKind {
  bad_argument,            // precondition on arguments violated
  not_escaping,            // orbit stayed bounded within the configured maxit
  branch_ambiguity,        // log-branch selection impossible (orbit near 0, or
                           // inside the critical equipotential margin)
  newton_stall,            // ray continuation failed after damping + substeps
  resolution_insufficient, // raster too coarse for the requested scales
  non_convergent,          // series shows no decay (interior/parabolic c)
  no_convergence,          // landing extrapolation unsupported by the data
  overflow,                // intermediate left the safe floating-point range
  zero_derivative,         // orbit derivative vanished
  precision_floor,         // requested potential below the configured floor
  log_domain,              // iterated log undefined for the given tail
};

class Error : public std::runtime_error {
public:
  Error(ErrorKind kind, const std::string& msg)
      : std::runtime_error(msg), kind_(kind) {}

  ErrorKind kind() const noexcept { return kind_; }

private:
  ErrorKind kind_;
};

inline const char* error_kind_name(ErrorKind k) {
  switch (k) {
    case ErrorKind::bad_argument: return "BadArgument";
    case ErrorKind::not_escaping: return "NotEscaping";
    case ErrorKind::branch_ambiguity: return "BranchAmbiguity";
    case ErrorKind::newton_stall: return "NewtonStall";
    case ErrorKind::resolution_insufficient: return "ResolutionInsufficient";
    case ErrorKind::non_convergent: return "NonConvergent";
    case ErrorKind::no_convergence: return "NoConvergence";
    case ErrorKind::overflow: return "Overflow";
    case ErrorKind::zero_derivative: return "ZeroDerivative";
    case ErrorKind::precision_floor: return "PrecisionFloor";
    case ErrorKind::log_domain: return "LogDomain";
  }
  return "Unknown";
}

} // namespace unicrit
