#include <gtest/gtest.h>

#include <array>
#include <cmath>
#include <numbers>
#include <random>

#include "humbert/direct.hpp"
#include "humbert/formal.hpp"
#include "humbert/kernels.hpp"

using namespace humbert;
using humbert::formal::Rational;

namespace {

constexpr double kE = std::numbers::e;

double rel(Scalar u, Scalar v) { return relative_error(u, v); }

Scalar hyp1f1(Scalar a, Scalar b, Scalar z) {
  const std::array<Scalar, 1> u{a}, l{b};
  return require_converged(pfq(u, l, z, SeriesControl{1e-16, 5000, 3})).value;
}

Scalar hyp0f1(Scalar b, Scalar z) {
  const std::array<Scalar, 1> l{b};
  return require_converged(pfq({}, l, z, SeriesControl{1e-16, 5000, 3})).value;
}

// Phi3 summand (b)_n / (c)_{n+k} x^n y^k / (n! k!) in exact arithmetic.
Rational phi3_term(const Rational& b, const Rational& c, const Rational& x, const Rational& y,
                   std::uint32_t n, std::uint32_t k) {
  Rational t = formal::pochhammer(b, n) / formal::pochhammer(c, n + k);
  for (std::uint32_t i = 1; i <= n; ++i) t *= x / i;
  for (std::uint32_t i = 1; i <= k; ++i) t *= y / i;
  return t;
}

const std::array<double, 5> kArgs{-3.0, -1.25, 0.5, 2.0, 3.0};

}  // namespace

TEST(Phi3Direct, Examples) {
  EXPECT_LE(rel(phi3_direct({1.0, 2.0}, 1.0, 0.0).value, kE - 1.0), 1e-15);
  const EvalOutcome origin = phi3_direct({3.7, 1.2}, 0.0, 0.0);
  EXPECT_EQ(origin.value, Scalar(1.0));
  EXPECT_TRUE(origin.converged);
}

TEST(Phi3Direct, BesselCaseMatchesRationalPartialSum) {
  // Phi3(1;1;0,1) = sum 1/(k!)^2; 30 terms settle every double digit.
  Rational partial = 0;
  Rational fact = 1;
  for (int k = 0; k < 30; ++k) {
    if (k > 0) fact *= k;
    partial += 1 / (fact * fact);
  }
  const double expected = static_cast<double>(partial);
  EXPECT_NEAR(expected, 2.2795853023360673, 1e-15);
  const EvalOutcome got = phi3_direct({1.0, 1.0}, 0.0, 1.0);
  EXPECT_TRUE(got.converged);
  EXPECT_LE(rel(got.value, expected), 1e-15);
}

TEST(Psi2Direct, Examples) {
  EXPECT_EQ(psi2_direct({2.5, 1.5, 3.0}, 0.0, 0.0).value, Scalar(1.0));
  const EvalOutcome e = psi2_direct({1.0, 1.0, 2.0}, 0.7, 0.0);
  EXPECT_LE(rel(e.value, std::exp(0.7)), 1e-15);
  EXPECT_NEAR(e.value.real(), 2.013752707, 1e-9);
}

TEST(Phi2Direct, Examples) {
  EXPECT_EQ(phi2_direct({1.1, 2.2, 3.3}, 0.0, 0.0).value, Scalar(1.0));
  EXPECT_LE(rel(phi2_direct({1.0, 5.0, 2.0}, 1.0, 0.0).value, kE - 1.0), 1e-15);
}

TEST(Direct, PolesAreRejected) {
  EXPECT_THROW(phi3_direct({1.0, -2.0}, 0.5, 0.5), Error);
  EXPECT_THROW(phi3_direct({1.0, 0.0}, 0.5, 0.5), Error);
  EXPECT_THROW(psi2_direct({1.0, -1.0, 2.0}, 0.5, 0.5), Error);
  EXPECT_THROW(psi2_direct({1.0, 2.0, -3.0}, 0.5, 0.5), Error);
  EXPECT_THROW(phi2_direct({1.0, 2.0, 0.0}, 0.5, 0.5), Error);
  try {
    phi3_direct({1.0, -2.0}, 0.5, 0.5);
  } catch (const Error& e) {
    EXPECT_EQ(e.code(), ErrorCode::InvalidParameter);
  }
}

TEST(Direct, InvalidControlIsConfigError) {
  try {
    phi3_direct({1.0, 2.0}, 0.5, 0.5, SeriesControl{0.0, 10, 3});
    FAIL();
  } catch (const Error& e) {
    EXPECT_EQ(e.code(), ErrorCode::ConfigError);
  }
}

TEST(Direct, CapReachedReportsNotConverged) {
  const EvalOutcome out = psi2_direct({1.0, 1.0, 2.0}, 4.0, 4.0, SeriesControl{1e-14, 5, 3});
  EXPECT_FALSE(out.converged);
  EXPECT_EQ(out.terms, 5u);
  EXPECT_THROW(require_converged(out), Error);
}

TEST(BoundaryReductions, Phi3) {
  for (double b : {-1.5, 0.5, 1.0, 2.7}) {
    for (double c : {0.5, 1.0, 2.5, 4.0}) {
      for (double t : kArgs) {
        EXPECT_LE(rel(phi3_direct({b, c}, t, 0.0).value, hyp1f1(b, c, t)), 1e-12) << b << c << t;
        EXPECT_LE(rel(phi3_direct({b, c}, 0.0, t).value, hyp0f1(c, t)), 1e-12) << b << c << t;
      }
    }
  }
}

TEST(BoundaryReductions, Psi2AndPhi2) {
  for (double a : {-1.5, 0.5, 1.0, 2.7}) {
    for (double b : {0.5, 1.0, 2.5}) {
      for (double c : {0.5, 1.5, 4.0}) {
        for (double t : kArgs) {
          EXPECT_LE(rel(psi2_direct({a, b, c}, t, 0.0).value, hyp1f1(a, b, t)), 1e-12);
          EXPECT_LE(rel(psi2_direct({a, b, c}, 0.0, t).value, hyp1f1(a, c, t)), 1e-12);
          EXPECT_LE(rel(phi2_direct({a, b, c}, t, 0.0).value, hyp1f1(a, c, t)), 1e-12);
        }
      }
    }
  }
}

TEST(Phi2Direct, SymmetryUnderSwap) {
  std::mt19937_64 rng(7);
  std::uniform_real_distribution<double> par(0.2, 4.0), arg(-3.0, 3.0);
  for (int i = 0; i < 300; ++i) {
    const double a = par(rng), b = par(rng), c = par(rng), x = arg(rng), y = arg(rng);
    EXPECT_LE(rel(phi2_direct({a, b, c}, x, y).value, phi2_direct({b, a, c}, y, x).value), 1e-13)
        << a << " " << b << " " << c << " " << x << " " << y;
  }
}

TEST(Rearrangement, RowsAndDiagonalsAgreeExactly) {
  // Rows n = 0..N with k = m - n, against diagonals m = 0..N with n <= m:
  // the k -> k + m reindexing, checked in exact arithmetic.
  const Rational b(3, 2), c(5, 2), x(-2, 3), y(7, 5);
  for (std::uint32_t N = 0; N <= 12; ++N) {
    Rational by_rows = 0, by_diagonals = 0;
    for (std::uint32_t n = 0; n <= N; ++n) {
      for (std::uint32_t k = 0; k + n <= N; ++k) by_rows += phi3_term(b, c, x, y, n, k);
    }
    for (std::uint32_t m = 0; m <= N; ++m) {
      for (std::uint32_t n = 0; n <= m; ++n) by_diagonals += phi3_term(b, c, x, y, n, m - n);
    }
    ASSERT_EQ(by_rows, by_diagonals) << N;

    // The floating evaluator capped at N+1 diagonals sums the same triangle.
    const EvalOutcome capped =
        phi3_direct({1.5, 2.5}, -2.0 / 3.0, 1.4, SeriesControl{1e-300, N + 1, 3});
    EXPECT_LE(rel(capped.value, static_cast<double>(by_diagonals)), 1e-14) << N;
  }
}

TEST(Convergence, DefaultControlConvergesOnBoundedBox) {
  std::mt19937_64 rng(2024);
  std::uniform_real_distribution<double> par(-10.0, 10.0), arg(-5.0, 5.0);
  auto away_from_pole = [&]() {
    for (;;) {
      const double v = par(rng);
      if (v > 0.0 || std::abs(v - std::round(v)) > 0.05) return v;
    }
  };
  for (int i = 0; i < 200; ++i) {
    const double a = par(rng), b = away_from_pole(), c = away_from_pole();
    const Scalar x(arg(rng), arg(rng) * 0.3), y(arg(rng), 0.0);
    if (std::abs(x) > 5.0) continue;
    EXPECT_TRUE(phi3_direct({a, c}, x, y).converged) << a << " " << c << " " << x << " " << y;
    EXPECT_TRUE(psi2_direct({a, b, c}, x, y).converged) << a << " " << b << " " << c;
    EXPECT_TRUE(phi2_direct({a, b, c}, x, y).converged) << a << " " << b << " " << c;
  }
}
