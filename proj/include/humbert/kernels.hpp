#pragma once

#include <cstdint>
#include <span>

#include "humbert/types.hpp"

namespace humbert {

/// Rising factorial a (a+1) ... (a+n-1); 1 for n = 0. Exactly zero when a is
/// a nonpositive integer with -a < n.
Scalar pochhammer(Scalar a, std::uint32_t n) noexcept;

/// Principal branch of log Gamma(z). Throws InvalidParameter at the poles.
Scalar log_gamma(Scalar z);

/// Generalized hypergeometric series pFq(upper; lower; z).
///
/// Terminating series (some upper parameter -k) are summed exactly and
/// reported as converged. A lower parameter -m is rejected with
/// InvalidParameter unless an upper parameter -k with k < m terminates the
/// series first. Running out of `ctrl.max_terms` yields converged = false.
EvalOutcome pfq(std::span<const Scalar> upper, std::span<const Scalar> lower,
                Scalar z, const SeriesControl& ctrl = {});

/// Terminating 2F1(-k, beta; gamma; z) as a (k+1)-term polynomial.
/// Throws InvalidParameter if (gamma)_j = 0 for some j <= k.
Scalar hyp2f1_terminating(std::uint32_t k, Scalar beta, Scalar gamma, Scalar z);

/// 2F1(a, b; c; 1) by Gauss's theorem.
///
/// When a (or b) is a nonpositive integer -k the value is the Pochhammer
/// ratio (c-b)_k / (c)_k. Otherwise Re(c-a-b) > 0 is required and the Gamma
/// ratio is formed from log-Gamma differences.
Scalar gauss_2f1_unit(Scalar a, Scalar b, Scalar c);

}  // namespace humbert
