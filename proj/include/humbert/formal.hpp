#pragma once

#include <cstdint>
#include <optional>
#include <span>
#include <string>
#include <string_view>
#include <vector>

#include <boost/multiprecision/cpp_int.hpp>

#include "humbert/types.hpp"

namespace humbert::formal {

/// Exact rational, always in lowest terms with a positive denominator.
using Rational = boost::multiprecision::cpp_rational;

/// Largest degree accepted by expand_formal / compare_formal.
inline constexpr std::uint32_t kMaxFormalDegree = 12;

enum class IdentityId {
  Eq13,             // Psi2(b;b,c;x,y) = exp(x+y) Phi3(c-b;c;-y,xy)
  Eq14,             // Psi2 as a series of terminating 2F1(.; y/x)
  Eq15,             // Phi3 as a series of terminating 2F1(.; x^2/y), upper -k-c+b+1
  Eq15Uncorrected,  // the same with upper parameter -k-b+1 (expected to fail)
  Eq16,             // Phi2 as a series of terminating 2F1(.; y/x)
  Eq33,             // Phi3(b;c;x,x^2) = exp(2x) 2F2(...; -4x)
  Eq34,             // Psi2(b;b,2b;x,x) = 2F2(...; 4x)
  BC3F3,            // Psi2(a;b,c;x,x) = 3F3(...; 4x)
};

enum class Side { Lhs, Rhs };

struct IdentityInfo {
  IdentityId id;
  const char* key;         // CLI spelling, e.g. "eq15"
  const char* equation;    // equation label, e.g. "(1.5)"
  const char* statement;
  const char* correction;  // adopted reading where the printed form differs
  const char* params;      // required parameter names, e.g. "bc"
};

std::span<const IdentityInfo> identities();
const IdentityInfo& identity_info(IdentityId id);
/// Throws ConfigError for unknown keys.
IdentityId identity_from_key(std::string_view key);

/// Rational parameter values; which ones are required depends on the identity.
struct FormalParams {
  std::optional<Rational> a;
  std::optional<Rational> b;
  std::optional<Rational> c;
};

/// Parses "p", "p/q" or a terminating decimal such as "-1.25" exactly.
/// Throws ConfigError on malformed input or a zero denominator.
Rational parse_rational(std::string_view text);
std::string to_string(const Rational& r);

/// Parses "a=1/2,b=3" into FormalParams. Throws ConfigError.
FormalParams parse_params(std::string_view text);

Rational pochhammer(const Rational& a, std::uint32_t n);

/// Coefficients of x^i t^j, 0 <= i <= max_deg_x, 0 <= j <= max_deg_t, of a
/// series in (x, t) obtained by substituting y = t x. Immutable once built.
class RationalCoeffTable {
 public:
  RationalCoeffTable(std::uint32_t max_deg_x, std::uint32_t max_deg_t);

  std::uint32_t max_deg_x() const noexcept { return max_deg_x_; }
  std::uint32_t max_deg_t() const noexcept { return max_deg_t_; }

  const Rational& coeff(std::uint32_t i, std::uint32_t j) const;
  Rational& coeff(std::uint32_t i, std::uint32_t j);

  /// Exact evaluation of the truncated polynomial.
  Rational evaluate(const Rational& x, const Rational& t) const;

  bool operator==(const RationalCoeffTable&) const = default;

 private:
  std::uint32_t max_deg_x_;
  std::uint32_t max_deg_t_;
  std::vector<Rational> coeffs_;
};

/// Expands one side of an identity exactly. Throws InvalidParameter on a
/// missing parameter or a pole, CapExceeded if a degree exceeds
/// kMaxFormalDegree.
RationalCoeffTable expand_formal(IdentityId id, Side side, const FormalParams& params,
                                 std::uint32_t max_deg_x, std::uint32_t max_deg_t);

struct Mismatch {
  std::uint32_t i;
  std::uint32_t j;
  Rational lhs;
  Rational rhs;
};

struct Certificate {
  IdentityId id;
  FormalParams params;
  std::uint32_t max_deg_x;
  std::uint32_t max_deg_t;
  bool equal;
  /// Lowest total degree i + j (then lowest i) where the sides differ.
  std::optional<Mismatch> first_mismatch;
};

Certificate compare_formal(IdentityId id, const FormalParams& params, std::uint32_t max_deg_x,
                           std::uint32_t max_deg_t);

/// {"identity", "params", "max_deg_x", "max_deg_t", "equal", "first_mismatch"}
std::string certificate_to_json(const Certificate& cert);
std::string table_to_json(const RationalCoeffTable& table);

}  // namespace humbert::formal
