#include "humbert/formal.hpp"

#include <algorithm>
#include <array>
#include <cctype>
#include <functional>

#include <json.hpp>

namespace humbert::formal {

namespace {

using boost::multiprecision::cpp_int;

constexpr std::array<IdentityInfo, 8> kIdentities = {{
    {IdentityId::Eq13, "eq13", "(1.3)", "Psi2(b;b,c;x,y) = exp(x+y) Phi3(c-b;c;-y,xy)",
     "right-hand function read as Phi3 (one upper parameter)", "bc"},
    {IdentityId::Eq14, "eq14", "(1.4)",
     "Psi2(a;b,c;x,y) = sum_k (a)_k/(b)_k 2F1(-k,-k-b+1;c;y/x) x^k/k!", "none", "abc"},
    {IdentityId::Eq15, "eq15", "(1.5)",
     "Phi3(b;c;x,y) = exp(x+y/x) sum_k (-y/x)^k/k! 2F1(-k,-k-c+b+1;c;x^2/y)",
     "second upper parameter -k-c+b+1 (printed as -k-b+1)", "bc"},
    {IdentityId::Eq15Uncorrected, "eq15-printed", "(1.5)",
     "Phi3(b;c;x,y) = exp(x+y/x) sum_k (-y/x)^k/k! 2F1(-k,-k-b+1;c;x^2/y)",
     "as printed; kept to exhibit the mismatch", "bc"},
    {IdentityId::Eq16, "eq16", "(1.6)",
     "Phi2(a,b;c;x,y) = sum_m (a)_m/(c)_m 2F1(-m,b;1-a-m;y/x) x^m/m!", "none", "abc"},
    {IdentityId::Eq33, "eq33", "(3.3)",
     "Phi3(b;c;x,x^2) = exp(2x) 2F2(c-b/2,c-b/2-1/2;c,2c-b-1;-4x)",
     "derived from (3.1) with a single (-x)^k/k! factor", "bc"},
    {IdentityId::Eq34, "eq34", "(3.4)", "Psi2(b;b,2b;x,x) = 2F2(3b/2,(3b-1)/2;2b,3b-1;4x)",
     "none", "b"},
    {IdentityId::BC3F3, "bc3f3", "(Burchnall-Chaundy)",
     "Psi2(a;b,c;x,x) = 3F3(a,(c+b)/2,(c+b-1)/2;b,c,c+b-1;4x)",
     "left side read as Psi2(a;b,c;x,x)", "abc"},
}};

Rational checked_div(const Rational& num, const Rational& den, const char* what) {
  if (den == 0) {
    throw Error(ErrorCode::InvalidParameter, std::string("pole: ") + what + " vanishes");
  }
  return num / den;
}

Rational factorial(std::uint32_t n) {
  cpp_int f = 1;
  for (std::uint32_t i = 2; i <= n; ++i) f *= i;
  return Rational(f);
}

Rational power(const Rational& base, std::uint32_t n) {
  Rational r = 1;
  for (std::uint32_t i = 0; i < n; ++i) r *= base;
  return r;
}

const Rational& require(const std::optional<Rational>& v, const char* name) {
  if (!v) {
    throw Error(ErrorCode::InvalidParameter, std::string("missing parameter ") + name);
  }
  return *v;
}

// coef * x^xp * t^tp
struct Monomial {
  Rational coef;
  std::uint32_t xp;
  std::uint32_t tp;
};

RationalCoeffTable multiply(const RationalCoeffTable& lhs, const RationalCoeffTable& rhs) {
  RationalCoeffTable out(lhs.max_deg_x(), lhs.max_deg_t());
  for (std::uint32_t i1 = 0; i1 <= lhs.max_deg_x(); ++i1) {
    for (std::uint32_t j1 = 0; j1 <= lhs.max_deg_t(); ++j1) {
      const Rational& u = lhs.coeff(i1, j1);
      if (u == 0) continue;
      for (std::uint32_t i2 = 0; i1 + i2 <= lhs.max_deg_x(); ++i2) {
        for (std::uint32_t j2 = 0; j1 + j2 <= lhs.max_deg_t(); ++j2) {
          const Rational& v = rhs.coeff(i2, j2);
          if (v != 0) out.coeff(i1 + i2, j1 + j2) += u * v;
        }
      }
    }
  }
  return out;
}

// exp(m) for a monomial m of positive total degree.
RationalCoeffTable exp_monomial(const Monomial& m, std::uint32_t dx, std::uint32_t dt) {
  RationalCoeffTable out(dx, dt);
  for (std::uint32_t n = 0;; ++n) {
    const std::uint32_t i = n * m.xp;
    const std::uint32_t j = n * m.tp;
    if (i > dx || j > dt) break;
    out.coeff(i, j) += power(m.coef, n) / factorial(n);
    if (m.xp == 0 && m.tp == 0) break;
  }
  return out;
}

// sum_{n,k} weight(n, k) X^n Y^k / (n! k!), X and Y monomials with positive
// x-degree so only finitely many (n, k) reach the table.
RationalCoeffTable double_series(const std::function<Rational(std::uint32_t, std::uint32_t)>& weight,
                                 const Monomial& X, const Monomial& Y, std::uint32_t dx,
                                 std::uint32_t dt) {
  RationalCoeffTable out(dx, dt);
  for (std::uint32_t n = 0; n * X.xp <= dx; ++n) {
    for (std::uint32_t k = 0; n * X.xp + k * Y.xp <= dx; ++k) {
      const std::uint32_t i = n * X.xp + k * Y.xp;
      const std::uint32_t j = n * X.tp + k * Y.tp;
      if (j > dt) continue;
      out.coeff(i, j) += weight(n, k) * power(X.coef, n) * power(Y.coef, k) /
                         (factorial(n) * factorial(k));
    }
  }
  return out;
}

// sum_n prod (u)_n / prod (l)_n (s x)^n / n!
RationalCoeffTable single_series(std::span<const Rational> upper, std::span<const Rational> lower,
                                 const Rational& s, std::uint32_t dx, std::uint32_t dt) {
  RationalCoeffTable out(dx, dt);
  for (std::uint32_t n = 0; n <= dx; ++n) {
    Rational num = power(s, n);
    Rational den = factorial(n);
    for (const Rational& u : upper) num *= pochhammer(u, n);
    for (const Rational& l : lower) den *= pochhammer(l, n);
    out.coeff(n, 0) = checked_div(num, den, "lower Pochhammer product");
  }
  return out;
}

// Psi2(a;b,c;x,Y) with Y = t x (tx = true) or Y = x.
RationalCoeffTable psi2_series(const Rational& a, const Rational& b, const Rational& c, bool tx,
                               std::uint32_t dx, std::uint32_t dt) {
  auto weight = [&](std::uint32_t n, std::uint32_t k) {
    return checked_div(pochhammer(a, n + k), pochhammer(b, n) * pochhammer(c, k), "(b)_n (c)_k");
  };
  return double_series(weight, {1, 1, 0}, {1, 1, tx ? 1u : 0u}, dx, dt);
}

RationalCoeffTable phi3_series(const Rational& b, const Rational& c, const Monomial& X,
                               const Monomial& Y, std::uint32_t dx, std::uint32_t dt) {
  auto weight = [&](std::uint32_t n, std::uint32_t k) {
    return checked_div(pochhammer(b, n), pochhammer(c, n + k), "(c)_{n+k}");
  };
  return double_series(weight, X, Y, dx, dt);
}

RationalCoeffTable phi2_series(const Rational& a, const Rational& b, const Rational& c,
                               std::uint32_t dx, std::uint32_t dt) {
  auto weight = [&](std::uint32_t m, std::uint32_t n) {
    return checked_div(pochhammer(a, m) * pochhammer(b, n), pochhammer(c, m + n), "(c)_{m+n}");
  };
  return double_series(weight, {1, 1, 0}, {1, 1, 1}, dx, dt);
}

// Terminating 2F1(-k, beta; gamma; .) coefficient of the j-th power.
Rational terminating_2f1_coeff(std::uint32_t k, const Rational& beta, const Rational& gamma,
                               std::uint32_t j) {
  return checked_div(pochhammer(Rational(-static_cast<long long>(k)), j) * pochhammer(beta, j),
                     pochhammer(gamma, j) * factorial(j), "(gamma)_j");
}

// Phi3 outer series with y = t x: y/x = t, x^2/y = x/t, and
// (-t)^k (x/t)^m = (-1)^k x^m t^(k-m). Only m <= dx and k - m <= dt
// contribute, so k <= dx + dt.
RationalCoeffTable eq15_rhs(const Rational& b, const Rational& c, bool corrected,
                            std::uint32_t dx, std::uint32_t dt) {
  RationalCoeffTable inner(dx, dt);
  for (std::uint32_t k = 0; k <= dx + dt; ++k) {
    const Rational kr = k;
    const Rational beta = corrected ? Rational(-kr - c + b + 1) : Rational(-kr - b + 1);
    const Rational sign = (k % 2 == 0) ? Rational(1) : Rational(-1);
    const Rational outer = sign / factorial(k);
    for (std::uint32_t m = 0; m <= std::min(k, dx); ++m) {
      if (k - m > dt) continue;
      inner.coeff(m, k - m) += outer * terminating_2f1_coeff(k, beta, c, m);
    }
  }
  // exp(x + y/x) = exp(x) exp(t)
  return multiply(multiply(exp_monomial({1, 1, 0}, dx, dt), exp_monomial({1, 0, 1}, dx, dt)),
                  inner);
}

// sum_k (a)_k/(b)_k x^k/k! 2F1(-k, -k-b+1; c; t); the x-degree is k.
RationalCoeffTable eq14_rhs(const Rational& a, const Rational& b, const Rational& c,
                            std::uint32_t dx, std::uint32_t dt) {
  RationalCoeffTable out(dx, dt);
  for (std::uint32_t k = 0; k <= dx; ++k) {
    const Rational outer =
        checked_div(pochhammer(a, k), pochhammer(b, k) * factorial(k), "(b)_k");
    const Rational beta = -Rational(k) - b + 1;
    for (std::uint32_t m = 0; m <= std::min(k, dt); ++m) {
      out.coeff(k, m) += outer * terminating_2f1_coeff(k, beta, c, m);
    }
  }
  return out;
}

// sum_m (a)_m/(c)_m x^m/m! 2F1(-m, b; 1-a-m; t); the x-degree is m.
RationalCoeffTable eq16_rhs(const Rational& a, const Rational& b, const Rational& c,
                            std::uint32_t dx, std::uint32_t dt) {
  RationalCoeffTable out(dx, dt);
  for (std::uint32_t m = 0; m <= dx; ++m) {
    const Rational outer =
        checked_div(pochhammer(a, m), pochhammer(c, m) * factorial(m), "(c)_m");
    const Rational gamma = 1 - a - Rational(m);
    for (std::uint32_t q = 0; q <= std::min(m, dt); ++q) {
      out.coeff(m, q) += outer * terminating_2f1_coeff(m, b, gamma, q);
    }
  }
  return out;
}

RationalCoeffTable expand_lhs(IdentityId id, const FormalParams& p, std::uint32_t dx,
                              std::uint32_t dt) {
  switch (id) {
    case IdentityId::Eq13: {
      const Rational& b = require(p.b, "b");
      return psi2_series(b, b, require(p.c, "c"), true, dx, dt);
    }
    case IdentityId::Eq14:
      return psi2_series(require(p.a, "a"), require(p.b, "b"), require(p.c, "c"), true, dx, dt);
    case IdentityId::Eq15:
    case IdentityId::Eq15Uncorrected:
      return phi3_series(require(p.b, "b"), require(p.c, "c"), {1, 1, 0}, {1, 1, 1}, dx, dt);
    case IdentityId::Eq16:
      return phi2_series(require(p.a, "a"), require(p.b, "b"), require(p.c, "c"), dx, dt);
    case IdentityId::Eq33:
      return phi3_series(require(p.b, "b"), require(p.c, "c"), {1, 1, 0}, {1, 2, 0}, dx, dt);
    case IdentityId::Eq34: {
      const Rational& b = require(p.b, "b");
      return psi2_series(b, b, 2 * b, false, dx, dt);
    }
    case IdentityId::BC3F3:
      return psi2_series(require(p.a, "a"), require(p.b, "b"), require(p.c, "c"), false, dx, dt);
  }
  throw Error(ErrorCode::ConfigError, "unknown identity");
}

RationalCoeffTable expand_rhs(IdentityId id, const FormalParams& p, std::uint32_t dx,
                              std::uint32_t dt) {
  switch (id) {
    case IdentityId::Eq13: {
      const Rational& b = require(p.b, "b");
      const Rational& c = require(p.c, "c");
      // exp(x + t x) Phi3(c-b; c; -t x, t x^2)
      const RationalCoeffTable shift =
          multiply(exp_monomial({1, 1, 0}, dx, dt), exp_monomial({1, 1, 1}, dx, dt));
      return multiply(shift, phi3_series(c - b, c, {-1, 1, 1}, {1, 2, 1}, dx, dt));
    }
    case IdentityId::Eq14:
      return eq14_rhs(require(p.a, "a"), require(p.b, "b"), require(p.c, "c"), dx, dt);
    case IdentityId::Eq15:
      return eq15_rhs(require(p.b, "b"), require(p.c, "c"), true, dx, dt);
    case IdentityId::Eq15Uncorrected:
      return eq15_rhs(require(p.b, "b"), require(p.c, "c"), false, dx, dt);
    case IdentityId::Eq16:
      return eq16_rhs(require(p.a, "a"), require(p.b, "b"), require(p.c, "c"), dx, dt);
    case IdentityId::Eq33: {
      const Rational& b = require(p.b, "b");
      const Rational& c = require(p.c, "c");
      const std::array<Rational, 2> upper{c - b / 2, c - b / 2 - Rational(1, 2)};
      const std::array<Rational, 2> lower{c, 2 * c - b - 1};
      return multiply(exp_monomial({2, 1, 0}, dx, dt),
                      single_series(upper, lower, Rational(-4), dx, dt));
    }
    case IdentityId::Eq34: {
      const Rational& b = require(p.b, "b");
      const std::array<Rational, 2> upper{3 * b / 2, (3 * b - 1) / 2};
      const std::array<Rational, 2> lower{2 * b, 3 * b - 1};
      return single_series(upper, lower, Rational(4), dx, dt);
    }
    case IdentityId::BC3F3: {
      const Rational& a = require(p.a, "a");
      const Rational& b = require(p.b, "b");
      const Rational& c = require(p.c, "c");
      const std::array<Rational, 3> upper{a, (c + b) / 2, (c + b - 1) / 2};
      const std::array<Rational, 3> lower{b, c, c + b - 1};
      return single_series(upper, lower, Rational(4), dx, dt);
    }
  }
  throw Error(ErrorCode::ConfigError, "unknown identity");
}

nlohmann::json params_json(const FormalParams& p) {
  nlohmann::json j = nlohmann::json::object();
  if (p.a) j["a"] = to_string(*p.a);
  if (p.b) j["b"] = to_string(*p.b);
  if (p.c) j["c"] = to_string(*p.c);
  return j;
}

}  // namespace

std::span<const IdentityInfo> identities() { return kIdentities; }

const IdentityInfo& identity_info(IdentityId id) {
  for (const auto& info : kIdentities) {
    if (info.id == id) return info;
  }
  throw Error(ErrorCode::ConfigError, "unknown identity");
}

IdentityId identity_from_key(std::string_view key) {
  for (const auto& info : kIdentities) {
    if (key == info.key) return info.id;
  }
  throw Error(ErrorCode::ConfigError, "unknown identity '" + std::string(key) + "'");
}

Rational parse_rational(std::string_view text) {
  const auto fail = [&]() -> Rational {
    throw Error(ErrorCode::ConfigError, "malformed rational '" + std::string(text) + "'");
  };
  const auto parse_decimal = [&](std::string_view s) -> Rational {
    std::size_t pos = 0;
    bool negative = false;
    if (pos < s.size() && (s[pos] == '+' || s[pos] == '-')) negative = s[pos++] == '-';
    cpp_int digits = 0;
    cpp_int scale = 1;
    bool seen_digit = false;
    bool seen_point = false;
    for (; pos < s.size(); ++pos) {
      const char ch = s[pos];
      if (ch == '.' && !seen_point) {
        seen_point = true;
      } else if (std::isdigit(static_cast<unsigned char>(ch))) {
        digits = digits * 10 + (ch - '0');
        if (seen_point) scale *= 10;
        seen_digit = true;
      } else {
        return fail();
      }
    }
    if (!seen_digit) return fail();
    Rational r(digits, scale);
    return negative ? Rational(-r) : r;
  };

  const auto slash = text.find('/');
  if (slash == std::string_view::npos) return parse_decimal(text);
  const Rational num = parse_decimal(text.substr(0, slash));
  const Rational den = parse_decimal(text.substr(slash + 1));
  if (den == 0) return fail();
  return num / den;
}

std::string to_string(const Rational& r) {
  const cpp_int num = boost::multiprecision::numerator(r);
  const cpp_int den = boost::multiprecision::denominator(r);
  if (den == 1) return num.str();
  return num.str() + "/" + den.str();
}

FormalParams parse_params(std::string_view text) {
  FormalParams out;
  while (!text.empty()) {
    const auto comma = text.find(',');
    const std::string_view item = text.substr(0, comma);
    text = comma == std::string_view::npos ? std::string_view{} : text.substr(comma + 1);
    const auto eq = item.find('=');
    if (eq == std::string_view::npos) {
      throw Error(ErrorCode::ConfigError, "expected name=value, got '" + std::string(item) + "'");
    }
    const std::string_view name = item.substr(0, eq);
    const Rational value = parse_rational(item.substr(eq + 1));
    if (name == "a") {
      out.a = value;
    } else if (name == "b") {
      out.b = value;
    } else if (name == "c") {
      out.c = value;
    } else {
      throw Error(ErrorCode::ConfigError, "unknown parameter '" + std::string(name) + "'");
    }
  }
  return out;
}

Rational pochhammer(const Rational& a, std::uint32_t n) {
  Rational prod = 1;
  for (std::uint32_t i = 0; i < n; ++i) prod *= a + i;
  return prod;
}

RationalCoeffTable::RationalCoeffTable(std::uint32_t max_deg_x, std::uint32_t max_deg_t)
    : max_deg_x_(max_deg_x),
      max_deg_t_(max_deg_t),
      coeffs_(std::size_t(max_deg_x + 1) * (max_deg_t + 1), Rational(0)) {}

const Rational& RationalCoeffTable::coeff(std::uint32_t i, std::uint32_t j) const {
  if (i > max_deg_x_ || j > max_deg_t_) {
    throw Error(ErrorCode::CapExceeded, "coefficient index outside the table");
  }
  return coeffs_[std::size_t(i) * (max_deg_t_ + 1) + j];
}

Rational& RationalCoeffTable::coeff(std::uint32_t i, std::uint32_t j) {
  return const_cast<Rational&>(std::as_const(*this).coeff(i, j));
}

Rational RationalCoeffTable::evaluate(const Rational& x, const Rational& t) const {
  Rational total = 0;
  Rational xp = 1;
  for (std::uint32_t i = 0; i <= max_deg_x_; ++i) {
    Rational tp = 1;
    for (std::uint32_t j = 0; j <= max_deg_t_; ++j) {
      total += coeff(i, j) * xp * tp;
      tp *= t;
    }
    xp *= x;
  }
  return total;
}

RationalCoeffTable expand_formal(IdentityId id, Side side, const FormalParams& params,
                                 std::uint32_t max_deg_x, std::uint32_t max_deg_t) {
  if (max_deg_x > kMaxFormalDegree || max_deg_t > kMaxFormalDegree) {
    throw Error(ErrorCode::CapExceeded,
                "formal degree caps are limited to " + std::to_string(kMaxFormalDegree));
  }
  return side == Side::Lhs ? expand_lhs(id, params, max_deg_x, max_deg_t)
                           : expand_rhs(id, params, max_deg_x, max_deg_t);
}

Certificate compare_formal(IdentityId id, const FormalParams& params, std::uint32_t max_deg_x,
                           std::uint32_t max_deg_t) {
  const RationalCoeffTable lhs = expand_formal(id, Side::Lhs, params, max_deg_x, max_deg_t);
  const RationalCoeffTable rhs = expand_formal(id, Side::Rhs, params, max_deg_x, max_deg_t);
  Certificate cert{id, params, max_deg_x, max_deg_t, true, std::nullopt};
  for (std::uint32_t total = 0; total <= max_deg_x + max_deg_t && cert.equal; ++total) {
    for (std::uint32_t i = 0; i <= std::min(total, max_deg_x); ++i) {
      const std::uint32_t j = total - i;
      if (j > max_deg_t) continue;
      if (lhs.coeff(i, j) != rhs.coeff(i, j)) {
        cert.equal = false;
        cert.first_mismatch = Mismatch{i, j, lhs.coeff(i, j), rhs.coeff(i, j)};
        break;
      }
    }
  }
  return cert;
}

std::string certificate_to_json(const Certificate& cert) {
  nlohmann::json j;
  j["identity"] = identity_info(cert.id).key;
  j["params"] = params_json(cert.params);
  j["max_deg_x"] = cert.max_deg_x;
  j["max_deg_t"] = cert.max_deg_t;
  j["equal"] = cert.equal;
  if (cert.first_mismatch) {
    const Mismatch& m = *cert.first_mismatch;
    j["first_mismatch"] = {
        {"i", m.i}, {"j", m.j}, {"lhs", to_string(m.lhs)}, {"rhs", to_string(m.rhs)}};
  } else {
    j["first_mismatch"] = nullptr;
  }
  return j.dump();
}

std::string table_to_json(const RationalCoeffTable& table) {
  nlohmann::json coeffs = nlohmann::json::array();
  for (std::uint32_t i = 0; i <= table.max_deg_x(); ++i) {
    for (std::uint32_t j = 0; j <= table.max_deg_t(); ++j) {
      if (table.coeff(i, j) != 0) {
        coeffs.push_back({{"i", i}, {"j", j}, {"value", to_string(table.coeff(i, j))}});
      }
    }
  }
  nlohmann::json out;
  out["max_deg_x"] = table.max_deg_x();
  out["max_deg_t"] = table.max_deg_t();
  out["coeffs"] = std::move(coeffs);
  return out.dump();
}

}  // namespace humbert::formal
