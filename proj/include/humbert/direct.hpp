#pragma once

#include "humbert/types.hpp"

namespace humbert {

/// Parameters of Phi3(b; c; x, y). c must not be a nonpositive integer.
struct Phi3Params {
  Scalar b;
  Scalar c;
};

/// Parameters of Psi2(a; b, c; x, y). Neither b nor c may be a nonpositive
/// integer.
struct Psi2Params {
  Scalar a;
  Scalar b;
  Scalar c;
};

/// Parameters of the two-upper-parameter Phi2(a, b; c; x, y). c must not be
/// a nonpositive integer.
struct Phi2Params {
  Scalar a;
  Scalar b;
  Scalar c;
};

// Reference evaluators. Each sums its double series by anti-diagonals
// N = n + k and stops once `small_run` consecutive diagonals have
// sum |term| <= rel_tol * |partial|. `terms` counts diagonals.

/// Phi3 = sum (b)_n / (c)_{n+k} x^n y^k / (n! k!)
EvalOutcome phi3_direct(const Phi3Params& p, Scalar x, Scalar y, const SeriesControl& ctrl = {});

/// Psi2 = sum (a)_{n+k} / ((b)_n (c)_k) x^n y^k / (n! k!)
EvalOutcome psi2_direct(const Psi2Params& p, Scalar x, Scalar y, const SeriesControl& ctrl = {});

/// Phi2 = sum (a)_m (b)_n / (c)_{m+n} x^m y^n / (m! n!)
EvalOutcome phi2_direct(const Phi2Params& p, Scalar x, Scalar y, const SeriesControl& ctrl = {});

}  // namespace humbert
