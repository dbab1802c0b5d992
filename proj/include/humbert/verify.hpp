#pragma once

#include <cstddef>
#include <optional>
#include <span>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

#include "humbert/types.hpp"

namespace humbert {

enum class FunctionId { Phi2, Phi3, Psi2 };

enum class Method { Direct, Series2F1, Phi3Shift, Diag2F2, EqualArgs3F3, GaussTerms };

const char* to_string(FunctionId f) noexcept;
const char* to_string(Method m) noexcept;
/// Case-insensitive; throws ConfigError for unknown names.
FunctionId function_from_name(std::string_view name);
Method method_from_name(std::string_view name);

bool method_applies(FunctionId f, Method m) noexcept;

/// Parameter triple; `a` is ignored for Phi3.
struct ParamSet {
  Scalar a;
  Scalar b;
  Scalar c;
};

/// Evaluates `f` with `m` at (x, y).
///
/// Methods that live on a restricted locus raise DomainError off it:
/// diag2f2 and gaussterms need y = x^2, equalargs3f3 needs y = x, and
/// phi3shift needs a = b. Locus checks on y use a 1e-12 relative tolerance.
/// Throws ConfigError if the method does not apply to the function.
EvalOutcome evaluate(FunctionId f, Method m, const ParamSet& params, Scalar x, Scalar y,
                     const SeriesControl& ctrl = {});

struct GridSpec {
  FunctionId function = FunctionId::Phi3;
  std::vector<Method> methods;
  std::vector<Scalar> a_values;  // empty for Phi3
  std::vector<Scalar> b_values;
  std::vector<Scalar> c_values;
  std::vector<std::pair<Scalar, Scalar>> points;
  SeriesControl ctrl;
  double gate = 1e-8;

  /// Throws ConfigError on empty lists, inapplicable methods, fewer than
  /// two methods, a non-positive gate or an invalid ctrl.
  void validate() const;
};

/// Parses the JSON spec file format:
/// {"function": "phi3", "representations": ["direct", ...],
///  "params": {"b": [1, 1.5], "c": [2]}, "points": [[x, y], ...],
///  "gate": 1e-8, "ctrl": {"rel_tol": .., "max_terms": .., "small_run": ..}}
/// Any number may also be given as [re, im]. Throws ConfigError.
GridSpec parse_grid_spec(std::string_view json_text);

enum class Status { Pass, Fail, SkippedDomain, SkippedPole };
const char* to_string(Status s) noexcept;

struct MethodResult {
  Method method;
  std::optional<EvalOutcome> outcome;  // empty when the evaluation threw
  std::optional<Status> skipped;       // SkippedDomain / SkippedPole
  std::string error;
};

struct PairError {
  Method first;
  Method second;
  double rel_err;
};

struct VerificationRecord {
  std::size_t index;
  FunctionId function;
  ParamSet params;
  Scalar x;
  Scalar y;
  std::vector<MethodResult> results;
  std::vector<PairError> pairwise;  // every pair of converged outcomes
  Status status;

  double max_rel_err() const noexcept;
};

/// One record per (a, b, c, point) combination in lexicographic order of the
/// input lists. A record is SKIPPED when fewer than two methods could be
/// evaluated, FAIL when a method failed to converge or any pairwise error
/// exceeds `gate`, PASS otherwise. Output is independent of `threads`
/// (0 = hardware concurrency).
std::vector<VerificationRecord> run_grid(const GridSpec& spec, double gate,
                                         unsigned threads = 0);

struct Summary {
  std::size_t total = 0;
  std::size_t pass = 0;
  std::size_t fail = 0;
  std::size_t skipped = 0;
  double max_rel_err = 0.0;
  std::optional<std::size_t> argmax;  // position in the record list
};

Summary summarize(std::span<const VerificationRecord> records);

std::string report_to_json(const GridSpec& spec, std::span<const VerificationRecord> records);
/// Columns: function,method_pair,a,b,c,x_re,x_im,y_re,y_im,rel_err,status
std::string report_to_csv(std::span<const VerificationRecord> records);

}  // namespace humbert
