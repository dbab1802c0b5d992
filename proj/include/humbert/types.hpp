#pragma once

#include <cmath>
#include <complex>
#include <cstdint>
#include <stdexcept>
#include <string>

namespace humbert {

/// All arguments, parameters and values are double-precision complex numbers.
using Scalar = std::complex<double>;

enum class ErrorCode {
  InvalidParameter,
  DomainError,
  NotConverged,
  ConfigError,
  CapExceeded,
};

const char* to_string(ErrorCode code) noexcept;

class Error : public std::runtime_error {
 public:
  Error(ErrorCode code, const std::string& what)
      : std::runtime_error(what), code_(code) {}

  ErrorCode code() const noexcept { return code_; }

 private:
  ErrorCode code_;
};

/// Truncation policy shared by every series evaluator.
///
/// A non-terminating series stops once `small_run` consecutive terms (or
/// anti-diagonals, for double series) are no larger than `rel_tol` times the
/// running partial sum. `max_terms` caps the number of terms/diagonals.
struct SeriesControl {
  double rel_tol = 1e-14;
  std::uint32_t max_terms = 5000;
  std::uint32_t small_run = 3;

  /// Throws ConfigError unless rel_tol > 0, max_terms >= 1, small_run >= 1.
  void validate() const;
};

/// Result of any series evaluation.
///
/// `terms` counts outer terms: single-series terms, anti-diagonals of a
/// double series, or outer-index terms of a representation.
/// `est_error` is a heuristic absolute error: the neglected-tail estimate,
/// plus (for representations) the rounding error implied by cancellation.
/// `condition` is max |intermediate term| / |value|; large values flag
/// digit loss in alternating sums. It is 1 for sums of one sign.
struct EvalOutcome {
  Scalar value{0.0, 0.0};
  std::uint32_t terms = 0;
  double est_error = 0.0;
  double condition = 1.0;
  bool converged = false;
};

/// Throws NotConverged if the outcome did not meet its tolerance.
const EvalOutcome& require_converged(const EvalOutcome& outcome);

/// Neumaier-compensated accumulator, applied separately to the real and
/// imaginary parts.
template <class Real>
class BasicCompensatedSum {
 public:
  using value_type = std::complex<Real>;

  void add(value_type term) noexcept {
    step(sum_re_, comp_re_, term.real());
    step(sum_im_, comp_im_, term.imag());
  }

  value_type value() const noexcept {
    return {sum_re_ + comp_re_, sum_im_ + comp_im_};
  }

 private:
  static void step(Real& sum, Real& comp, Real x) noexcept {
    const Real t = sum + x;
    if (std::abs(sum) >= std::abs(x)) {
      comp += (sum - t) + x;
    } else {
      comp += (x - t) + sum;
    }
    sum = t;
  }

  Real sum_re_ = 0;
  Real comp_re_ = 0;
  Real sum_im_ = 0;
  Real comp_im_ = 0;
};

using CompensatedSum = BasicCompensatedSum<double>;

/// True when z is exactly one of 0, -1, -2, ...
bool is_nonpositive_integer(Scalar z) noexcept;

/// Symmetric relative difference |u - v| / max(|u|, |v|, 1e-300).
double relative_error(Scalar u, Scalar v) noexcept;

}  // namespace humbert
