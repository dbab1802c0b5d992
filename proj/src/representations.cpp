#include "humbert/representations.hpp"

#include <algorithm>
#include <array>
#include <cmath>
#include <limits>
#include <string>

#include "humbert/kernels.hpp"

namespace humbert {

namespace {

void require_not_pole(Scalar v, const char* what) {
  if (is_nonpositive_integer(v)) {
    throw Error(ErrorCode::InvalidParameter, std::string(what) + " is a nonpositive integer");
  }
}

void require_divisor(Scalar v, const char* name) {
  if (std::abs(v) < kMinDivisorArgument) {
    throw Error(ErrorCode::DomainError,
                std::string("|") + name + "| is below the representation's domain guard");
  }
}

// Attaches rounding-from-cancellation to a tail estimate.
void finish(EvalOutcome& out, Scalar prefactor, double max_abs, Scalar raw_sum) {
  out.condition = max_abs / std::max(std::abs(raw_sum), 1e-300);
  out.value = prefactor * raw_sum;
  out.est_error = std::abs(prefactor) * out.est_error +
                  std::abs(out.value) * out.condition * std::numeric_limits<double>::epsilon();
}

// Outer series sum_k term(k), called with k = 0, 1, 2, ... in order, then
// multiplied by `prefactor`.
template <class TermAt>
EvalOutcome sum_outer(TermAt term_at, Scalar prefactor, const SeriesControl& ctrl) {
  ctrl.validate();
  EvalOutcome out;
  CompensatedSum sum;
  double max_abs = 0.0;
  std::uint32_t run = 0;
  for (std::uint32_t k = 0; k < ctrl.max_terms; ++k) {
    const Scalar term = term_at(k);
    const double magnitude = std::abs(term);
    if (!std::isfinite(magnitude)) {
      throw Error(ErrorCode::NotConverged, "outer series term overflow");
    }
    sum.add(term);
    max_abs = std::max(max_abs, magnitude);
    out.terms = k + 1;
    if (magnitude <= ctrl.rel_tol * std::abs(sum.value())) {
      if (++run >= ctrl.small_run) {
        out.converged = true;
        out.est_error = magnitude * ctrl.small_run;
        break;
      }
    } else {
      run = 0;
    }
  }
  finish(out, prefactor, max_abs, sum.value());
  return out;
}

EvalOutcome phi3_outer_series(const Phi3Params& p, Scalar x, Scalar y, bool corrected,
                              const SeriesControl& ctrl) {
  require_not_pole(p.c, "c");
  require_divisor(x, "x");
  require_divisor(y, "y");
  const Scalar ratio = -y / x;
  const Scalar inner_arg = x * x / y;
  Scalar coef{1.0, 0.0};  // (-y/x)^k / k!
  auto term_at = [&](std::uint32_t k) {
    if (k > 0) coef *= ratio / double(k);
    const double kd = double(k);
    const Scalar beta = corrected ? -kd - p.c + p.b + 1.0 : -kd - p.b + 1.0;
    return coef * hyp2f1_terminating(k, beta, p.c, inner_arg);
  };
  return sum_outer(term_at, std::exp(x + y / x), ctrl);
}

}  // namespace

EvalOutcome phi3_via_2f1_series(const Phi3Params& p, Scalar x, Scalar y,
                                const SeriesControl& ctrl) {
  return phi3_outer_series(p, x, y, true, ctrl);
}

EvalOutcome phi3_via_2f1_series_uncorrected(const Phi3Params& p, Scalar x, Scalar y,
                                            const SeriesControl& ctrl) {
  return phi3_outer_series(p, x, y, false, ctrl);
}

EvalOutcome psi2_via_2f1_series(const Psi2Params& p, Scalar x, Scalar y,
                                const SeriesControl& ctrl) {
  require_not_pole(p.b, "b");
  require_not_pole(p.c, "c");
  require_divisor(x, "x");
  const Scalar inner_arg = y / x;
  Scalar coef{1.0, 0.0};  // (a)_k / (b)_k x^k / k!
  auto term_at = [&](std::uint32_t k) {
    const double kd = double(k);
    if (k > 0) coef *= (p.a + kd - 1.0) / (p.b + kd - 1.0) * x / kd;
    return coef * hyp2f1_terminating(k, -kd - p.b + 1.0, p.c, inner_arg);
  };
  return sum_outer(term_at, Scalar{1.0, 0.0}, ctrl);
}

EvalOutcome phi2_via_2f1_series(const Phi2Params& p, Scalar x, Scalar y,
                                const SeriesControl& ctrl) {
  require_not_pole(p.c, "c");
  require_not_pole(p.a, "a");
  require_divisor(x, "x");
  const Scalar inner_arg = y / x;
  Scalar coef{1.0, 0.0};  // (a)_m / (c)_m x^m / m!
  auto term_at = [&](std::uint32_t m) {
    const double md = double(m);
    if (m > 0) coef *= (p.a + md - 1.0) / (p.c + md - 1.0) * x / md;
    return coef * hyp2f1_terminating(m, p.b, 1.0 - p.a - md, inner_arg);
  };
  return sum_outer(term_at, Scalar{1.0, 0.0}, ctrl);
}

EvalOutcome psi2_via_phi3(const Psi2Params& p, Scalar x, Scalar y, const SeriesControl& ctrl) {
  if (p.a != p.b) {
    throw Error(ErrorCode::InvalidParameter, "exponential-shift form requires a == b");
  }
  require_not_pole(p.b, "b");
  require_not_pole(p.c, "c");
  EvalOutcome inner = phi3_direct(Phi3Params{p.c - p.b, p.c}, -y, x * y, ctrl);
  const Scalar scale = std::exp(x + y);
  inner.value *= scale;
  inner.est_error *= std::abs(scale);
  return inner;
}

EvalOutcome phi3_diagonal_2f2(const Phi3Params& p, Scalar x, const SeriesControl& ctrl) {
  const Scalar lower2 = 2.0 * p.c - p.b - 1.0;
  require_not_pole(p.c, "c");
  require_not_pole(lower2, "2c-b-1");
  const std::array<Scalar, 2> upper{p.c - 0.5 * p.b, p.c - 0.5 * p.b - 0.5};
  const std::array<Scalar, 2> lower{p.c, lower2};
  EvalOutcome out = pfq(upper, lower, -4.0 * x, ctrl);
  const Scalar scale = std::exp(2.0 * x);
  out.value *= scale;
  out.est_error *= std::abs(scale);
  return out;
}

EvalOutcome psi2_equal_args_3f3(const Psi2Params& p, Scalar x, const SeriesControl& ctrl) {
  const Scalar sum_bc = p.b + p.c;
  require_not_pole(p.b, "b");
  require_not_pole(p.c, "c");
  require_not_pole(sum_bc - 1.0, "b+c-1");
  const std::array<Scalar, 3> upper{p.a, 0.5 * sum_bc, 0.5 * (sum_bc - 1.0)};
  const std::array<Scalar, 3> lower{p.b, p.c, sum_bc - 1.0};
  return pfq(upper, lower, 4.0 * x, ctrl);
}

EvalOutcome psi2_equal_args_2f2(Scalar b, Scalar x, const SeriesControl& ctrl) {
  require_not_pole(b, "b");
  require_not_pole(2.0 * b, "2b");
  require_not_pole(3.0 * b - 1.0, "3b-1");
  const std::array<Scalar, 2> upper{1.5 * b, 0.5 * (3.0 * b - 1.0)};
  const std::array<Scalar, 2> lower{2.0 * b, 3.0 * b - 1.0};
  return pfq(upper, lower, 4.0 * x, ctrl);
}

EvalOutcome phi3_gauss_terms(const Phi3Params& p, Scalar x, const SeriesControl& ctrl) {
  require_not_pole(p.c, "c");
  require_not_pole(2.0 * p.c - p.b - 1.0, "2c-b-1");
  Scalar coef{1.0, 0.0};  // (-x)^k / k!
  auto term_at = [&](std::uint32_t k) {
    const double kd = double(k);
    if (k > 0) coef *= -x / kd;
    return coef * gauss_2f1_unit(Scalar{-kd, 0.0}, -kd - p.c + p.b + 1.0, p.c);
  };
  return sum_outer(term_at, std::exp(2.0 * x), ctrl);
}

}  // namespace humbert
