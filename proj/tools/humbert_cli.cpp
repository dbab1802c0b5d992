// Command-line front end for the humbert C API.
//
//   humbert eval --function phi3 --params b=1,c=2 --x 1 --y 0 --method direct
//   humbert verify --spec grid.json --out report.json --format json
//   humbert oracle --identity eq15 --params b=1,c=2 --deg 8
//   humbert identities
//
// Exit codes: 0 success, 2 invalid parameters/config, 3 non-convergence,
// 4 verification failure.

#include <cstdio>
#include <cstdlib>
#include <fstream>
#include <iostream>
#include <memory>
#include <optional>
#include <string>
#include <vector>

#include <CLI11.hpp>
#include <json.hpp>

#include "humbert/humbert.h"

namespace {

constexpr int kExitOk = 0;
constexpr int kExitInvalid = 2;
constexpr int kExitNotConverged = 3;
constexpr int kExitVerifyFailed = 4;

struct ContextDeleter {
  void operator()(humb_context* c) const { humb_context_free(c); }
};
using ContextPtr = std::unique_ptr<humb_context, ContextDeleter>;

int exit_code_for(humb_status s) {
  switch (s) {
    case HUMB_OK: return kExitOk;
    case HUMB_ERR_NOT_CONVERGED: return kExitNotConverged;
    case HUMB_ERR_INTERNAL:
    case HUMB_ERR_IO: return 1;
    default: return kExitInvalid;
  }
}

int report_error(humb_status s, const humb_context* ctx) {
  std::cerr << "error: " << humb_status_name(s);
  const char* detail = humb_context_last_error(ctx);
  if (detail && *detail) std::cerr << ": " << detail;
  std::cerr << "\n";
  return exit_code_for(s);
}

// "<re>" or "<re>,<im>"
std::optional<humb_complex> parse_complex(const std::string& text) {
  const auto comma = text.find(',');
  try {
    std::size_t used = 0;
    const std::string re = text.substr(0, comma);
    humb_complex z{std::stod(re, &used), 0.0};
    if (used != re.size()) return std::nullopt;
    if (comma != std::string::npos) {
      const std::string im = text.substr(comma + 1);
      z.im = std::stod(im, &used);
      if (used != im.size()) return std::nullopt;
    }
    return z;
  } catch (const std::exception&) {
    return std::nullopt;
  }
}

struct ParsedParams {
  humb_complex values[3] = {{0, 0}, {0, 0}, {0, 0}};
  bool given[3] = {false, false, false};
};

std::optional<ParsedParams> parse_params(const std::string& text) {
  ParsedParams out;
  std::size_t start = 0;
  while (start < text.size()) {
    const auto comma = text.find(',', start);
    const std::string item = text.substr(start, comma == std::string::npos ? std::string::npos
                                                                           : comma - start);
    start = comma == std::string::npos ? text.size() : comma + 1;
    const auto eq = item.find('=');
    if (eq == std::string::npos || eq != 1) return std::nullopt;
    const int slot = item[0] - 'a';
    if (slot < 0 || slot > 2) return std::nullopt;
    try {
      std::size_t used = 0;
      const std::string value = item.substr(2);
      out.values[slot] = {std::stod(value, &used), 0.0};
      if (used != value.size()) return std::nullopt;
    } catch (const std::exception&) {
      return std::nullopt;
    }
    out.given[slot] = true;
  }
  return out;
}

nlohmann::json complex_json(humb_complex z) { return {{"re", z.re}, {"im", z.im}}; }

struct EvalArgs {
  std::string function;
  std::string params;
  std::string x;
  std::optional<std::string> y;
  std::string method = "direct";
  double rel_tol = 1e-14;
  std::uint32_t max_terms = 5000;
  std::uint32_t small_run = 3;
  std::string format = "json";
};

int run_eval(const EvalArgs& args) {
  ContextPtr ctx(humb_context_new());
  humb_function fn;
  humb_method method;
  if (humb_function_from_name(args.function.c_str(), &fn) != HUMB_OK) {
    std::cerr << "error: unknown function '" << args.function << "'\n";
    return kExitInvalid;
  }
  if (humb_method_from_name(args.method.c_str(), &method) != HUMB_OK) {
    std::cerr << "error: unknown method '" << args.method << "'\n";
    return kExitInvalid;
  }
  const auto params = parse_params(args.params);
  if (!params) {
    std::cerr << "error: --params expects a=<v>,b=<v>,c=<v>\n";
    return kExitInvalid;
  }
  const char* required = fn == HUMB_PHI3 ? "bc" : "abc";
  for (const char* r = required; *r; ++r) {
    if (!params->given[*r - 'a']) {
      std::cerr << "error: parameter " << *r << " is required for " << args.function << "\n";
      return kExitInvalid;
    }
  }
  const auto x = parse_complex(args.x);
  if (!x) {
    std::cerr << "error: --x expects <re>[,<im>]\n";
    return kExitInvalid;
  }
  humb_complex y{0.0, 0.0};
  if (args.y) {
    const auto parsed = parse_complex(*args.y);
    if (!parsed) {
      std::cerr << "error: --y expects <re>[,<im>]\n";
      return kExitInvalid;
    }
    y = *parsed;
  } else if (method == HUMB_METHOD_DIAG2F2 || method == HUMB_METHOD_GAUSSTERMS) {
    y = {x->re * x->re - x->im * x->im, 2.0 * x->re * x->im};
  } else if (method == HUMB_METHOD_EQUALARGS3F3) {
    y = *x;
  }

  humb_status s = humb_context_set_control(ctx.get(), args.rel_tol, args.max_terms, args.small_run);
  if (s != HUMB_OK) return report_error(s, ctx.get());

  humb_outcome out{};
  s = humb_evaluate(ctx.get(), fn, method, params->values, *x, y, &out);
  if (s != HUMB_OK && s != HUMB_ERR_NOT_CONVERGED) return report_error(s, ctx.get());

  if (args.format == "json") {
    nlohmann::json j;
    j["function"] = humb_function_name(fn);
    nlohmann::json pj = nlohmann::json::object();
    for (int i = 0; i < 3; ++i) {
      if (params->given[i]) pj[std::string(1, char('a' + i))] = params->values[i].re;
    }
    j["params"] = pj;
    j["x"] = complex_json(*x);
    j["y"] = complex_json(y);
    j["method"] = humb_method_name(method);
    j["value"] = complex_json(out.value);
    j["terms"] = out.terms;
    j["est_error"] = out.est_error;
    j["converged"] = out.converged != 0;
    std::cout << j.dump() << "\n";
  } else {
    std::printf("value = %.17g %+.17gi\nterms = %u\nest_error = %.3g\nconverged = %s\n",
                out.value.re, out.value.im, out.terms, out.est_error,
                out.converged ? "true" : "false");
  }
  if (s == HUMB_ERR_NOT_CONVERGED) {
    std::cerr << "warning: series did not converge within " << out.terms << " terms\n";
  }
  return exit_code_for(s);
}

int run_verify(const std::string& spec_path, const std::string& out_path,
               const std::string& format, unsigned threads) {
  ContextPtr ctx(humb_context_new());
  humb_report* raw = nullptr;
  const humb_status s = humb_verify_run_file(ctx.get(), spec_path.c_str(), threads, &raw);
  if (s != HUMB_OK) return report_error(s, ctx.get());
  std::unique_ptr<humb_report, decltype(&humb_report_free)> report(raw, &humb_report_free);

  const char* body = format == "csv" ? humb_report_csv(report.get()) : humb_report_json(report.get());
  if (out_path.empty()) {
    std::cout << body;
  } else {
    std::ofstream out(out_path, std::ios::binary | std::ios::trunc);
    if (!out || !(out << body)) {
      std::cerr << "error: cannot write " << out_path << "\n";
      return 1;
    }
  }

  humb_summary summary{};
  humb_report_summary(report.get(), &summary);
  std::cerr << "total " << summary.total << ", pass " << summary.pass << ", fail " << summary.fail
            << ", skipped " << summary.skipped << ", max rel err " << summary.max_rel_err << "\n";
  return summary.fail > 0 ? kExitVerifyFailed : kExitOk;
}

int run_oracle(const std::string& identity, const std::string& params, std::uint32_t degree) {
  ContextPtr ctx(humb_context_new());
  humb_identity id;
  if (humb_identity_from_key(identity.c_str(), &id) != HUMB_OK) {
    std::cerr << "error: unknown identity '" << identity << "'\n";
    return kExitInvalid;
  }
  humb_certificate* raw = nullptr;
  const humb_status s = humb_oracle_compare(ctx.get(), id, params.c_str(), degree, degree, &raw);
  if (s != HUMB_OK) return report_error(s, ctx.get());
  std::unique_ptr<humb_certificate, decltype(&humb_certificate_free)> cert(raw,
                                                                           &humb_certificate_free);
  std::cout << humb_certificate_json(cert.get()) << "\n";
  return humb_certificate_equal(cert.get()) ? kExitOk : kExitVerifyFailed;
}

int run_identities() {
  for (std::size_t i = 0; i < humb_identity_count(); ++i) {
    const char *key, *equation, *statement, *correction, *params;
    humb_identity_describe(i, nullptr, &key, &equation, &statement, &correction, &params);
    std::printf("%-13s %-20s %s\n              params: %s; adopted reading: %s\n", key, equation,
                statement, params, correction);
  }
  return kExitOk;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Humbert confluent double hypergeometric functions: evaluation and verification"};
  app.require_subcommand(1);

  EvalArgs eval;
  auto* eval_cmd = app.add_subcommand("eval", "Evaluate Phi2, Phi3 or Psi2 by one method");
  eval_cmd->add_option("--function", eval.function, "phi2 | phi3 | psi2")->required();
  eval_cmd->add_option("--params", eval.params, "a=<v>,b=<v>,c=<v>")->required();
  eval_cmd->add_option("--x", eval.x, "<re>[,<im>]")->required();
  eval_cmd->add_option("--y", eval.y, "<re>[,<im>]");
  eval_cmd->add_option("--method", eval.method,
                       "direct | series2f1 | phi3shift | diag2f2 | equalargs3f3 | gaussterms");
  eval_cmd->add_option("--rel-tol", eval.rel_tol, "relative truncation tolerance");
  eval_cmd->add_option("--max-terms", eval.max_terms, "term / diagonal cap");
  eval_cmd->add_option("--small-run", eval.small_run, "consecutive small terms required");
  eval_cmd->add_option("--format", eval.format, "json | plain")
      ->check(CLI::IsMember({"json", "plain"}));

  std::string spec_path, out_path, verify_format = "json";
  unsigned threads = 0;
  auto* verify_cmd = app.add_subcommand("verify", "Cross-validate representations over a grid");
  verify_cmd->add_option("--spec", spec_path, "grid spec JSON file")->required();
  verify_cmd->add_option("--out", out_path, "report file (stdout if omitted)");
  verify_cmd->add_option("--format", verify_format, "json | csv")
      ->check(CLI::IsMember({"json", "csv"}));
  verify_cmd->add_option("--threads", threads, "worker threads (0 = all cores)");

  std::string identity, oracle_params;
  std::uint32_t degree = 8;
  auto* oracle_cmd = app.add_subcommand("oracle", "Exact-rational coefficient comparison");
  oracle_cmd->add_option("--identity", identity,
                         "eq13 | eq14 | eq15 | eq15-printed | eq16 | eq33 | eq34 | bc3f3")
      ->required();
  oracle_cmd->add_option("--params", oracle_params, "b=<p>/<q>,...")->required();
  oracle_cmd->add_option("--deg", degree, "degree cap in x and t (<= 12)");

  app.add_subcommand("identities", "List the supported identities");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int rc = app.exit(e);
    return rc == 0 ? kExitOk : kExitInvalid;
  }

  if (eval_cmd->parsed()) return run_eval(eval);
  if (verify_cmd->parsed()) return run_verify(spec_path, out_path, verify_format, threads);
  if (oracle_cmd->parsed()) return run_oracle(identity, oracle_params, degree);
  return run_identities();
}
