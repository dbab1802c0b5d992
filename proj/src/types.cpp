#include "humbert/types.hpp"

#include <algorithm>
#include <cmath>

namespace humbert {

const char* to_string(ErrorCode code) noexcept {
  switch (code) {
    case ErrorCode::InvalidParameter: return "InvalidParameter";
    case ErrorCode::DomainError: return "DomainError";
    case ErrorCode::NotConverged: return "NotConverged";
    case ErrorCode::ConfigError: return "ConfigError";
    case ErrorCode::CapExceeded: return "CapExceeded";
  }
  return "Unknown";
}

void SeriesControl::validate() const {
  if (!(rel_tol > 0.0) || !std::isfinite(rel_tol)) {
    throw Error(ErrorCode::ConfigError, "rel_tol must be a positive finite number");
  }
  if (max_terms < 1) {
    throw Error(ErrorCode::ConfigError, "max_terms must be at least 1");
  }
  if (small_run < 1) {
    throw Error(ErrorCode::ConfigError, "small_run must be at least 1");
  }
}

const EvalOutcome& require_converged(const EvalOutcome& outcome) {
  if (!outcome.converged) {
    throw Error(ErrorCode::NotConverged,
                "series did not converge within " + std::to_string(outcome.terms) + " terms");
  }
  return outcome;
}

bool is_nonpositive_integer(Scalar z) noexcept {
  return z.imag() == 0.0 && z.real() <= 0.0 && z.real() == std::floor(z.real());
}

double relative_error(Scalar u, Scalar v) noexcept {
  const double scale = std::max({std::abs(u), std::abs(v), 1e-300});
  return std::abs(u - v) / scale;
}

}  // namespace humbert
