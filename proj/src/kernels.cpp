#include "humbert/kernels.hpp"

#include <algorithm>
#include <array>
#include <cmath>
#include <limits>
#include <numbers>
#include <string>

namespace humbert {

namespace {

// Lanczos approximation, g = 7, n = 9.
constexpr double kLanczosG = 7.0;
constexpr std::array<double, 9> kLanczos = {
    0.99999999999980993,     676.5203681218851,     -1259.1392167224028,
    771.32342877765313,      -176.61502916214059,   12.507343278686905,
    -0.13857109526572012,    9.9843695780195716e-6, 1.5056327351493116e-7};

Scalar lanczos_log_gamma(Scalar z) {
  // Valid for Re(z) >= 0.5.
  z -= 1.0;
  Scalar acc = kLanczos[0];
  for (std::size_t i = 1; i < kLanczos.size(); ++i) {
    acc += kLanczos[i] / (z + static_cast<double>(i));
  }
  const Scalar t = z + kLanczosG + 0.5;
  return 0.5 * std::log(2.0 * std::numbers::pi) + (z + 0.5) * std::log(t) - t + std::log(acc);
}

double safe_condition(double max_abs, Scalar value) {
  return max_abs / std::max(std::abs(value), 1e-300);
}

// Double-double arithmetic built from error-free transformations.
struct DD {
  double hi = 0.0;
  double lo = 0.0;
  DD() = default;
  explicit DD(double x) : hi(x) {}
  DD(double h, double l) : hi(h), lo(l) {}
};

DD quick_two_sum(double a, double b) {
  const double s = a + b;
  return {s, b - (s - a)};
}

DD two_sum(double a, double b) {
  const double s = a + b;
  const double bb = s - a;
  return {s, (a - (s - bb)) + (b - bb)};
}

DD operator+(DD a, DD b) {
  DD s = two_sum(a.hi, b.hi);
  const DD t = two_sum(a.lo, b.lo);
  s.lo += t.hi;
  s = quick_two_sum(s.hi, s.lo);
  s.lo += t.lo;
  return quick_two_sum(s.hi, s.lo);
}

DD operator-(DD a) { return {-a.hi, -a.lo}; }
DD operator-(DD a, DD b) { return a + (-b); }

DD operator*(DD a, DD b) {
  const double p = a.hi * b.hi;
  const double e = std::fma(a.hi, b.hi, -p) + (a.hi * b.lo + a.lo * b.hi);
  return quick_two_sum(p, e);
}

DD operator/(DD a, DD b) {
  const double q1 = a.hi / b.hi;
  DD r = a - b * DD{q1};
  const double q2 = r.hi / b.hi;
  r = r - b * DD{q2};
  const double q3 = r.hi / b.hi;
  return quick_two_sum(q1, q2) + DD{q3};
}

struct CDD {
  DD re;
  DD im;
};

CDD operator+(CDD a, CDD b) { return {a.re + b.re, a.im + b.im}; }
CDD operator+(CDD a, double x) { return {a.re + DD{x}, a.im}; }
CDD operator*(CDD a, DD x) { return {a.re * x, a.im * x}; }

CDD operator*(CDD a, CDD b) {
  return {a.re * b.re - a.im * b.im, a.re * b.im + a.im * b.re};
}

CDD operator/(CDD a, CDD b) {
  if (b.im.hi == 0.0) return {a.re / b.re, a.im / b.re};
  const DD norm = b.re * b.re + b.im * b.im;
  const CDD num = a * CDD{b.re, -b.im};
  return {num.re / norm, num.im / norm};
}

}  // namespace

Scalar pochhammer(Scalar a, std::uint32_t n) noexcept {
  Scalar prod{1.0, 0.0};
  for (std::uint32_t i = 0; i < n; ++i) {
    const Scalar factor = a + static_cast<double>(i);
    if (factor == 0.0) return {0.0, 0.0};
    prod *= factor;
  }
  return prod;
}

Scalar log_gamma(Scalar z) {
  if (is_nonpositive_integer(z)) {
    throw Error(ErrorCode::InvalidParameter, "Gamma pole at nonpositive integer");
  }
  if (z.imag() == 0.0) {
    // Real axis: std::lgamma is accurate to a few ulp; the sign of Gamma on
    // the negative axis alternates between consecutive integers.
    const double x = z.real();
    const double magnitude = std::lgamma(x);
    const bool negative = x < 0.0 && static_cast<long long>(std::floor(x)) % 2 != 0;
    return {magnitude, negative ? std::numbers::pi : 0.0};
  }
  if (z.real() < 0.5) {
    // Reflection: Gamma(z) Gamma(1-z) = pi / sin(pi z).
    return std::log(std::numbers::pi) - std::log(std::sin(std::numbers::pi * z)) -
           lanczos_log_gamma(1.0 - z);
  }
  return lanczos_log_gamma(z);
}

EvalOutcome pfq(std::span<const Scalar> upper, std::span<const Scalar> lower, Scalar z,
                const SeriesControl& ctrl) {
  ctrl.validate();
  for (const Scalar& l : lower) {
    if (!is_nonpositive_integer(l)) continue;
    const double pole_at = -l.real();
    const bool terminates_first = std::any_of(upper.begin(), upper.end(), [&](const Scalar& u) {
      return is_nonpositive_integer(u) && -u.real() < pole_at;
    });
    if (!terminates_first) {
      throw Error(ErrorCode::InvalidParameter,
                  "lower parameter " + std::to_string(l.real()) +
                      " is a nonpositive integer and the series does not terminate before it");
    }
  }

  EvalOutcome out;
  CompensatedSum sum;
  Scalar term{1.0, 0.0};
  double max_abs = 0.0;
  std::uint32_t run = 0;
  for (std::uint32_t n = 0; n < ctrl.max_terms; ++n) {
    sum.add(term);
    max_abs = std::max(max_abs, std::abs(term));
    out.terms = n + 1;

    const double magnitude = std::abs(term);
    if (magnitude <= ctrl.rel_tol * std::abs(sum.value())) {
      if (++run >= ctrl.small_run) {
        out.converged = true;
        out.est_error = magnitude * ctrl.small_run;
        break;
      }
    } else {
      run = 0;
    }

    const double nd = static_cast<double>(n);
    Scalar ratio = z / (nd + 1.0);
    for (const Scalar& u : upper) ratio *= (u + nd);
    for (const Scalar& l : lower) ratio /= (l + nd);
    term *= ratio;
    if (term == 0.0) {
      out.converged = true;
      out.est_error = 0.0;
      break;
    }
    if (!std::isfinite(term.real()) || !std::isfinite(term.imag())) {
      throw Error(ErrorCode::NotConverged, "pFq term overflow");
    }
  }
  out.value = sum.value();
  out.condition = safe_condition(max_abs, out.value);
  return out;
}

Scalar hyp2f1_terminating(std::uint32_t k, Scalar beta, Scalar gamma, Scalar z) {
  if (is_nonpositive_integer(gamma) && -gamma.real() < static_cast<double>(k)) {
    throw Error(ErrorCode::InvalidParameter,
                "terminating 2F1: (gamma)_j vanishes for some j <= k");
  }
  // Terms are carried in double-double: at z = 1 the alternating sum can
  // cancel by 10 or more digits.
  const CDD wbeta{DD{beta.real()}, DD{beta.imag()}};
  const CDD wgamma{DD{gamma.real()}, DD{gamma.imag()}};
  const CDD wz{DD{z.real()}, DD{z.imag()}};
  CDD term{DD{1.0}, DD{0.0}};
  CDD sum = term;
  for (std::uint32_t j = 0; j < k; ++j) {
    const double jd = j;
    const CDD num = (wbeta + jd) * DD{jd - static_cast<double>(k)};
    const CDD den = (wgamma + jd) * DD{jd + 1.0};
    term = term * (num / den) * wz;
    sum = sum + term;
  }
  return {sum.re.hi + sum.re.lo, sum.im.hi + sum.im.lo};
}

Scalar gauss_2f1_unit(Scalar a, Scalar b, Scalar c) {
  if (!is_nonpositive_integer(a) && is_nonpositive_integer(b)) std::swap(a, b);

  if (is_nonpositive_integer(a)) {
    const auto k = static_cast<std::uint32_t>(-a.real());
    if (is_nonpositive_integer(c) && -c.real() < static_cast<double>(k)) {
      throw Error(ErrorCode::InvalidParameter, "Gauss sum: (c)_j vanishes before termination");
    }
    // Chu-Vandermonde: (c-b)_k / (c)_k, accumulated factor by factor.
    Scalar ratio{1.0, 0.0};
    for (std::uint32_t i = 0; i < k; ++i) {
      const double id = static_cast<double>(i);
      ratio *= (c - b + id) / (c + id);
    }
    return ratio;
  }

  if (!((c - a - b).real() > 0.0)) {
    throw Error(ErrorCode::InvalidParameter, "Gauss sum requires Re(c - a - b) > 0");
  }
  if (is_nonpositive_integer(c)) {
    throw Error(ErrorCode::InvalidParameter, "Gauss sum: Gamma(c) pole");
  }
  // 1/Gamma vanishes at its poles.
  if (is_nonpositive_integer(c - a) || is_nonpositive_integer(c - b)) return {0.0, 0.0};
  return std::exp(log_gamma(c) + log_gamma(c - a - b) - log_gamma(c - a) - log_gamma(c - b));
}

}  // namespace humbert
