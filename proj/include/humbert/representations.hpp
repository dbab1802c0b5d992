#pragma once

#include "humbert/direct.hpp"
#include "humbert/types.hpp"

namespace humbert {

/// Arguments smaller than this in modulus are refused by representations
/// that divide by them.
inline constexpr double kMinDivisorArgument = 1e-8;

// Alternative representations of Phi2, Phi3 and Psi2. Each outer series is
// truncated with the same run rule as pfq; `terms` counts outer terms.
// `est_error` adds the rounding error implied by `condition` to the tail
// estimate, so heavy cancellation is visible to callers.

/// Phi3(b;c;x,y) = exp(x + y/x) sum_k (-y/x)^k / k!
///                 * 2F1(-k, -k-c+b+1; c; x^2/y).
/// DomainError if |x| or |y| < kMinDivisorArgument.
EvalOutcome phi3_via_2f1_series(const Phi3Params& p, Scalar x, Scalar y,
                                const SeriesControl& ctrl = {});

/// Same outer series with the upper parameter -k-b+1 in place of -k-c+b+1.
/// This variant is not an identity for Phi3 in general; it exists so the
/// comparison tooling can demonstrate the mismatch numerically.
EvalOutcome phi3_via_2f1_series_uncorrected(const Phi3Params& p, Scalar x, Scalar y,
                                            const SeriesControl& ctrl = {});

/// Psi2(a;b,c;x,y) = sum_k (a)_k/(b)_k 2F1(-k, -k-b+1; c; y/x) x^k / k!.
/// DomainError if |x| < kMinDivisorArgument.
EvalOutcome psi2_via_2f1_series(const Psi2Params& p, Scalar x, Scalar y,
                                const SeriesControl& ctrl = {});

/// Phi2(a,b;c;x,y) = sum_m (a)_m/(c)_m 2F1(-m, b; 1-a-m; y/x) x^m / m!.
/// DomainError if |x| < kMinDivisorArgument; InvalidParameter if a is a
/// nonpositive integer.
EvalOutcome phi2_via_2f1_series(const Phi2Params& p, Scalar x, Scalar y,
                                const SeriesControl& ctrl = {});

/// Psi2(b;b,c;x,y) = exp(x+y) Phi3(c-b; c; -y, x y). Requires p.a == p.b.
EvalOutcome psi2_via_phi3(const Psi2Params& p, Scalar x, Scalar y,
                          const SeriesControl& ctrl = {});

/// Phi3(b;c;x,x^2) = exp(2x) 2F2(c-b/2, c-b/2-1/2; c, 2c-b-1; -4x).
EvalOutcome phi3_diagonal_2f2(const Phi3Params& p, Scalar x, const SeriesControl& ctrl = {});

/// Psi2(a;b,c;x,x) = 3F3(a, (c+b)/2, (c+b-1)/2; b, c, c+b-1; 4x).
EvalOutcome psi2_equal_args_3f3(const Psi2Params& p, Scalar x, const SeriesControl& ctrl = {});

/// Psi2(b;b,2b;x,x) = 2F2(3b/2, (3b-1)/2; 2b, 3b-1; 4x).
EvalOutcome psi2_equal_args_2f2(Scalar b, Scalar x, const SeriesControl& ctrl = {});

/// Phi3(b;c;x,x^2) = exp(2x) sum_k (-x)^k / k! 2F1(-k, -k-c+b+1; c; 1), each
/// unit-argument 2F1 closed by Gauss's theorem.
EvalOutcome phi3_gauss_terms(const Phi3Params& p, Scalar x, const SeriesControl& ctrl = {});

}  // namespace humbert
