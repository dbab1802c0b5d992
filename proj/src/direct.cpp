#include "humbert/direct.hpp"

#include <algorithm>
#include <cmath>
#include <vector>

namespace humbert {

namespace {

// Sums t(n, k) over anti-diagonals. `next_k(n, k, N)` is t(n, k+1) / t(n, k)
// and `next_n(n, N)` is t(n+1, 0) / t(n, 0), where N = n + k. t(0, 0) = 1.
template <class NextK, class NextN>
EvalOutcome sum_by_diagonals(NextK next_k, NextN next_n, const SeriesControl& ctrl) {
  ctrl.validate();
  EvalOutcome out;
  CompensatedSum total;
  std::vector<Scalar> diag{Scalar{1.0, 0.0}};  // diag[n] = t(n, N - n)
  std::vector<Scalar> next;
  double max_abs = 0.0;
  std::uint32_t run = 0;

  for (std::uint32_t N = 0; N < ctrl.max_terms; ++N) {
    double abs_sum = 0.0;
    for (const Scalar& t : diag) {
      total.add(t);
      const double m = std::abs(t);
      abs_sum += m;
      max_abs = std::max(max_abs, m);
    }
    out.terms = N + 1;
    if (!std::isfinite(abs_sum)) {
      throw Error(ErrorCode::NotConverged, "double series term overflow");
    }
    // Every later diagonal is built from this one by multiplication.
    if (abs_sum == 0.0) {
      out.converged = true;
      out.est_error = 0.0;
      break;
    }
    if (abs_sum <= ctrl.rel_tol * std::abs(total.value())) {
      if (++run >= ctrl.small_run) {
        out.converged = true;
        out.est_error = abs_sum * ctrl.small_run;
        break;
      }
    } else {
      run = 0;
    }

    next.resize(diag.size() + 1);
    for (std::uint32_t n = 0; n <= N; ++n) {
      next[n] = diag[n] * next_k(n, N - n, N);
    }
    next[N + 1] = diag[N] * next_n(N, N);
    diag.swap(next);
  }
  out.value = total.value();
  out.condition = max_abs / std::max(std::abs(out.value), 1e-300);
  return out;
}

// Sums t(m, n) = A(m) B(n) C(m + n) over anti-diagonals, where the three
// factors are built from their successive ratios (A(0) = B(0) = C(0) = 1).
// Each diagonal is added in pairs t(i, N-i) + t(N-i, i), so exchanging the
// roles of A and B gives a bitwise identical result.
template <class RatioA, class RatioB, class RatioC>
EvalOutcome sum_separable(RatioA ratio_a, RatioB ratio_b, RatioC ratio_c,
                          const SeriesControl& ctrl) {
  ctrl.validate();
  EvalOutcome out;
  CompensatedSum total;
  std::vector<Scalar> A{Scalar{1.0, 0.0}}, B{Scalar{1.0, 0.0}}, diag;
  Scalar C{1.0, 0.0};
  double max_abs = 0.0;
  std::uint32_t run = 0;

  for (std::uint32_t N = 0; N < ctrl.max_terms; ++N) {
    if (N > 0) {
      A.push_back(A.back() * ratio_a(N - 1));
      B.push_back(B.back() * ratio_b(N - 1));
      C *= ratio_c(N - 1);
    }
    diag.resize(N + 1);
    for (std::uint32_t m = 0; m <= N; ++m) diag[m] = A[m] * B[N - m] * C;

    double abs_sum = 0.0;
    for (std::uint32_t i = 0, j = N; i <= j; ++i, --j) {
      const double m = i == j ? std::abs(diag[i]) : std::abs(diag[i]) + std::abs(diag[j]);
      total.add(i == j ? diag[i] : diag[i] + diag[j]);
      abs_sum += m;
      max_abs = std::max({max_abs, std::abs(diag[i]), std::abs(diag[j])});
      if (j == 0) break;
    }
    out.terms = N + 1;
    if (!std::isfinite(abs_sum)) {
      throw Error(ErrorCode::NotConverged, "double series term overflow");
    }
    // A and B vanish from their first zero on, so later diagonals stay zero.
    if (abs_sum == 0.0) {
      out.converged = true;
      out.est_error = 0.0;
      break;
    }
    if (abs_sum <= ctrl.rel_tol * std::abs(total.value())) {
      if (++run >= ctrl.small_run) {
        out.converged = true;
        out.est_error = abs_sum * ctrl.small_run;
        break;
      }
    } else {
      run = 0;
    }
  }
  out.value = total.value();
  out.condition = max_abs / std::max(std::abs(out.value), 1e-300);
  return out;
}

void require_not_pole(Scalar v, const char* name) {
  if (is_nonpositive_integer(v)) {
    throw Error(ErrorCode::InvalidParameter,
                std::string("parameter ") + name + " is a nonpositive integer");
  }
}

}  // namespace

EvalOutcome phi3_direct(const Phi3Params& p, Scalar x, Scalar y, const SeriesControl& ctrl) {
  require_not_pole(p.c, "c");
  return sum_separable(
      [&](std::uint32_t n) { return (p.b + double(n)) * x / (double(n) + 1.0); },
      [&](std::uint32_t k) { return y / (double(k) + 1.0); },
      [&](std::uint32_t N) { return 1.0 / (p.c + double(N)); }, ctrl);
}

EvalOutcome psi2_direct(const Psi2Params& p, Scalar x, Scalar y, const SeriesControl& ctrl) {
  require_not_pole(p.b, "b");
  require_not_pole(p.c, "c");
  const auto next_k = [&](std::uint32_t, std::uint32_t k, std::uint32_t N) {
    return (p.a + double(N)) * y / ((p.c + double(k)) * (double(k) + 1.0));
  };
  const auto next_n = [&](std::uint32_t n, std::uint32_t N) {
    return (p.a + double(N)) * x / ((p.b + double(n)) * (double(n) + 1.0));
  };
  return sum_by_diagonals(next_k, next_n, ctrl);
}

EvalOutcome phi2_direct(const Phi2Params& p, Scalar x, Scalar y, const SeriesControl& ctrl) {
  require_not_pole(p.c, "c");
  return sum_separable(
      [&](std::uint32_t m) { return (p.a + double(m)) * x / (double(m) + 1.0); },
      [&](std::uint32_t n) { return (p.b + double(n)) * y / (double(n) + 1.0); },
      [&](std::uint32_t N) { return 1.0 / (p.c + double(N)); }, ctrl);
}

}  // namespace humbert
