#include "humbert/verify.hpp"

#include <algorithm>
#include <atomic>
#include <cctype>
#include <cstdio>
#include <thread>

#include <json.hpp>

#include "humbert/direct.hpp"
#include "humbert/representations.hpp"

namespace humbert {

namespace {

using nlohmann::json;

constexpr double kLocusTolerance = 1e-12;

std::string lower_case(std::string_view s) {
  std::string out(s);
  std::transform(out.begin(), out.end(), out.begin(),
                 [](unsigned char ch) { return static_cast<char>(std::tolower(ch)); });
  return out;
}

void require_locus(bool on_locus, const char* what) {
  if (!on_locus) {
    throw Error(ErrorCode::DomainError, std::string("point is off the locus ") + what);
  }
}

bool close(Scalar u, Scalar v) { return relative_error(u, v) <= kLocusTolerance; }

Scalar parse_scalar(const json& j, const char* what) {
  if (j.is_number()) return {j.get<double>(), 0.0};
  if (j.is_array() && j.size() == 2 && j[0].is_number() && j[1].is_number()) {
    return {j[0].get<double>(), j[1].get<double>()};
  }
  throw Error(ErrorCode::ConfigError, std::string("expected a number or [re, im] for ") + what);
}

std::vector<Scalar> parse_values(const json& params, const char* name) {
  if (!params.contains(name)) return {};
  const json& list = params.at(name);
  if (!list.is_array()) {
    throw Error(ErrorCode::ConfigError, std::string("params.") + name + " must be a list");
  }
  std::vector<Scalar> out;
  for (const json& v : list) out.push_back(parse_scalar(v, name));
  return out;
}

json scalar_json(Scalar z) { return {{"re", z.real()}, {"im", z.imag()}}; }

json params_json(FunctionId f, const ParamSet& p) {
  json out = json::object();
  if (f != FunctionId::Phi3) out["a"] = scalar_json(p.a);
  out["b"] = scalar_json(p.b);
  out["c"] = scalar_json(p.c);
  return out;
}

std::string format_double(double v) {
  char buf[32];
  std::snprintf(buf, sizeof buf, "%.17g", v);
  return buf;
}

std::string format_param(Scalar z) {
  if (z.imag() == 0.0) return format_double(z.real());
  return format_double(z.real()) + (z.imag() < 0 ? "" : "+") + format_double(z.imag()) + "i";
}

VerificationRecord evaluate_point(const GridSpec& spec, std::size_t index, const ParamSet& params,
                                  Scalar x, Scalar y, double gate) {
  VerificationRecord rec{index, spec.function, params, x, y, {}, {}, Status::Pass};
  bool any_failure = false;
  for (Method m : spec.methods) {
    MethodResult r{m, std::nullopt, std::nullopt, {}};
    try {
      r.outcome = evaluate(spec.function, m, params, x, y, spec.ctrl);
      if (!r.outcome->converged) any_failure = true;
    } catch (const Error& e) {
      r.error = e.what();
      if (e.code() == ErrorCode::DomainError) {
        r.skipped = Status::SkippedDomain;
      } else if (e.code() == ErrorCode::InvalidParameter) {
        r.skipped = Status::SkippedPole;
      } else {
        any_failure = true;
      }
    }
    rec.results.push_back(std::move(r));
  }

  std::size_t evaluated = 0;
  for (const auto& r : rec.results) evaluated += r.skipped ? 0 : 1;
  if (evaluated < 2) {
    const auto first_skip = std::find_if(rec.results.begin(), rec.results.end(),
                                         [](const MethodResult& r) { return r.skipped.has_value(); });
    rec.status = first_skip != rec.results.end() ? *first_skip->skipped : Status::SkippedDomain;
    return rec;
  }

  for (std::size_t i = 0; i < rec.results.size(); ++i) {
    const auto& u = rec.results[i].outcome;
    if (!u || !u->converged) continue;
    for (std::size_t j = i + 1; j < rec.results.size(); ++j) {
      const auto& v = rec.results[j].outcome;
      if (!v || !v->converged) continue;
      rec.pairwise.push_back(
          {rec.results[i].method, rec.results[j].method, relative_error(u->value, v->value)});
    }
  }
  const bool within_gate = std::all_of(rec.pairwise.begin(), rec.pairwise.end(),
                                       [&](const PairError& p) { return p.rel_err <= gate; });
  rec.status = (!any_failure && within_gate) ? Status::Pass : Status::Fail;
  return rec;
}

}  // namespace

const char* to_string(FunctionId f) noexcept {
  switch (f) {
    case FunctionId::Phi2: return "phi2";
    case FunctionId::Phi3: return "phi3";
    case FunctionId::Psi2: return "psi2";
  }
  return "?";
}

const char* to_string(Method m) noexcept {
  switch (m) {
    case Method::Direct: return "direct";
    case Method::Series2F1: return "series2f1";
    case Method::Phi3Shift: return "phi3shift";
    case Method::Diag2F2: return "diag2f2";
    case Method::EqualArgs3F3: return "equalargs3f3";
    case Method::GaussTerms: return "gaussterms";
  }
  return "?";
}

const char* to_string(Status s) noexcept {
  switch (s) {
    case Status::Pass: return "PASS";
    case Status::Fail: return "FAIL";
    case Status::SkippedDomain: return "SKIPPED(domain)";
    case Status::SkippedPole: return "SKIPPED(pole)";
  }
  return "?";
}

FunctionId function_from_name(std::string_view name) {
  const std::string key = lower_case(name);
  for (FunctionId f : {FunctionId::Phi2, FunctionId::Phi3, FunctionId::Psi2}) {
    if (key == to_string(f)) return f;
  }
  throw Error(ErrorCode::ConfigError, "unknown function '" + std::string(name) + "'");
}

Method method_from_name(std::string_view name) {
  const std::string key = lower_case(name);
  for (Method m : {Method::Direct, Method::Series2F1, Method::Phi3Shift, Method::Diag2F2,
                   Method::EqualArgs3F3, Method::GaussTerms}) {
    if (key == to_string(m)) return m;
  }
  throw Error(ErrorCode::ConfigError, "unknown method '" + std::string(name) + "'");
}

bool method_applies(FunctionId f, Method m) noexcept {
  switch (m) {
    case Method::Direct:
    case Method::Series2F1: return true;
    case Method::Phi3Shift:
    case Method::EqualArgs3F3: return f == FunctionId::Psi2;
    case Method::Diag2F2:
    case Method::GaussTerms: return f == FunctionId::Phi3;
  }
  return false;
}

EvalOutcome evaluate(FunctionId f, Method m, const ParamSet& p, Scalar x, Scalar y,
                     const SeriesControl& ctrl) {
  if (!method_applies(f, m)) {
    throw Error(ErrorCode::ConfigError, std::string("method ") + to_string(m) +
                                            " does not apply to " + to_string(f));
  }
  const Phi3Params phi3{p.b, p.c};
  const Psi2Params psi2{p.a, p.b, p.c};
  const Phi2Params phi2{p.a, p.b, p.c};
  switch (f) {
    case FunctionId::Phi3:
      switch (m) {
        case Method::Direct: return phi3_direct(phi3, x, y, ctrl);
        case Method::Series2F1: return phi3_via_2f1_series(phi3, x, y, ctrl);
        case Method::Diag2F2:
          require_locus(close(y, x * x), "y = x^2");
          return phi3_diagonal_2f2(phi3, x, ctrl);
        case Method::GaussTerms:
          require_locus(close(y, x * x), "y = x^2");
          return phi3_gauss_terms(phi3, x, ctrl);
        default: break;
      }
      break;
    case FunctionId::Psi2:
      switch (m) {
        case Method::Direct: return psi2_direct(psi2, x, y, ctrl);
        case Method::Series2F1: return psi2_via_2f1_series(psi2, x, y, ctrl);
        case Method::Phi3Shift:
          require_locus(p.a == p.b, "a = b");
          return psi2_via_phi3(psi2, x, y, ctrl);
        case Method::EqualArgs3F3:
          require_locus(close(y, x), "y = x");
          return psi2_equal_args_3f3(psi2, x, ctrl);
        default: break;
      }
      break;
    case FunctionId::Phi2:
      switch (m) {
        case Method::Direct: return phi2_direct(phi2, x, y, ctrl);
        case Method::Series2F1: return phi2_via_2f1_series(phi2, x, y, ctrl);
        default: break;
      }
      break;
  }
  throw Error(ErrorCode::ConfigError, "unsupported function/method combination");
}

void GridSpec::validate() const {
  ctrl.validate();
  if (methods.size() < 2) {
    throw Error(ErrorCode::ConfigError, "at least two representations are required");
  }
  for (Method m : methods) {
    if (!method_applies(function, m)) {
      throw Error(ErrorCode::ConfigError, std::string("representation ") + to_string(m) +
                                              " does not apply to " + to_string(function));
    }
  }
  if (function != FunctionId::Phi3 && a_values.empty()) {
    throw Error(ErrorCode::ConfigError, "params.a must be a non-empty list");
  }
  if (function == FunctionId::Phi3 && !a_values.empty()) {
    throw Error(ErrorCode::ConfigError, "phi3 takes no parameter a");
  }
  if (b_values.empty() || c_values.empty()) {
    throw Error(ErrorCode::ConfigError, "params.b and params.c must be non-empty lists");
  }
  if (points.empty()) throw Error(ErrorCode::ConfigError, "points must be a non-empty list");
  if (!(gate > 0.0)) throw Error(ErrorCode::ConfigError, "gate must be positive");
}

GridSpec parse_grid_spec(std::string_view json_text) {
  json doc;
  try {
    doc = json::parse(json_text);
  } catch (const json::exception& e) {
    throw Error(ErrorCode::ConfigError, std::string("spec is not valid JSON: ") + e.what());
  }
  try {
    GridSpec spec;
    spec.function = function_from_name(doc.at("function").get<std::string>());
    for (const json& r : doc.at("representations")) {
      spec.methods.push_back(method_from_name(r.get<std::string>()));
    }
    const json& params = doc.at("params");
    if (!params.is_object()) throw Error(ErrorCode::ConfigError, "params must be an object");
    for (const auto& [name, _] : params.items()) {
      if (name != "a" && name != "b" && name != "c") {
        throw Error(ErrorCode::ConfigError, "unknown parameter '" + name + "'");
      }
    }
    spec.a_values = parse_values(params, "a");
    spec.b_values = parse_values(params, "b");
    spec.c_values = parse_values(params, "c");
    for (const json& pt : doc.at("points")) {
      if (!pt.is_array() || pt.size() != 2) {
        throw Error(ErrorCode::ConfigError, "each point must be [x, y]");
      }
      spec.points.emplace_back(parse_scalar(pt[0], "x"), parse_scalar(pt[1], "y"));
    }
    spec.gate = doc.at("gate").get<double>();
    if (doc.contains("ctrl")) {
      const json& c = doc.at("ctrl");
      spec.ctrl.rel_tol = c.value("rel_tol", spec.ctrl.rel_tol);
      const auto max_terms = c.value("max_terms", static_cast<long long>(spec.ctrl.max_terms));
      const auto small_run = c.value("small_run", static_cast<long long>(spec.ctrl.small_run));
      if (max_terms < 1 || small_run < 1 || max_terms > UINT32_MAX || small_run > UINT32_MAX) {
        throw Error(ErrorCode::ConfigError, "ctrl.max_terms and ctrl.small_run must be >= 1");
      }
      spec.ctrl.max_terms = static_cast<std::uint32_t>(max_terms);
      spec.ctrl.small_run = static_cast<std::uint32_t>(small_run);
    }
    spec.validate();
    return spec;
  } catch (const json::exception& e) {
    throw Error(ErrorCode::ConfigError, std::string("malformed spec: ") + e.what());
  }
}

double VerificationRecord::max_rel_err() const noexcept {
  double worst = 0.0;
  for (const auto& p : pairwise) worst = std::max(worst, p.rel_err);
  return worst;
}

std::vector<VerificationRecord> run_grid(const GridSpec& spec, double gate, unsigned threads) {
  spec.validate();
  if (!(gate > 0.0)) throw Error(ErrorCode::ConfigError, "gate must be positive");

  const std::vector<Scalar> a_values =
      spec.function == FunctionId::Phi3 ? std::vector<Scalar>{Scalar{}} : spec.a_values;
  struct Job {
    ParamSet params;
    Scalar x;
    Scalar y;
  };
  std::vector<Job> jobs;
  for (Scalar a : a_values) {
    for (Scalar b : spec.b_values) {
      for (Scalar c : spec.c_values) {
        for (const auto& [x, y] : spec.points) jobs.push_back({{a, b, c}, x, y});
      }
    }
  }

  std::vector<std::optional<VerificationRecord>> slots(jobs.size());
  std::atomic<std::size_t> next{0};
  auto worker = [&] {
    for (std::size_t i = next++; i < jobs.size(); i = next++) {
      slots[i] = evaluate_point(spec, i, jobs[i].params, jobs[i].x, jobs[i].y, gate);
    }
  };
  if (threads == 0) threads = std::max(1u, std::thread::hardware_concurrency());
  threads = std::min<unsigned>(threads, static_cast<unsigned>(std::max<std::size_t>(jobs.size(), 1)));
  if (threads <= 1) {
    worker();
  } else {
    std::vector<std::jthread> pool;
    for (unsigned t = 0; t < threads; ++t) pool.emplace_back(worker);
  }

  std::vector<VerificationRecord> records;
  records.reserve(slots.size());
  for (auto& s : slots) records.push_back(std::move(*s));
  return records;
}

Summary summarize(std::span<const VerificationRecord> records) {
  Summary s;
  s.total = records.size();
  for (std::size_t i = 0; i < records.size(); ++i) {
    const auto& r = records[i];
    switch (r.status) {
      case Status::Pass: ++s.pass; break;
      case Status::Fail: ++s.fail; break;
      default: ++s.skipped; continue;
    }
    const double e = r.max_rel_err();
    if (!s.argmax || e > s.max_rel_err) {
      s.max_rel_err = e;
      s.argmax = i;
    }
  }
  return s;
}

std::string report_to_json(const GridSpec& spec, std::span<const VerificationRecord> records) {
  json out;
  out["function"] = to_string(spec.function);
  json methods = json::array();
  for (Method m : spec.methods) methods.push_back(to_string(m));
  out["representations"] = methods;
  out["gate"] = spec.gate;
  out["ctrl"] = {{"rel_tol", spec.ctrl.rel_tol},
                 {"max_terms", spec.ctrl.max_terms},
                 {"small_run", spec.ctrl.small_run}};

  json recs = json::array();
  for (const auto& r : records) {
    json jr;
    jr["index"] = r.index;
    jr["params"] = params_json(r.function, r.params);
    jr["x"] = scalar_json(r.x);
    jr["y"] = scalar_json(r.y);
    json results = json::array();
    for (const auto& m : r.results) {
      json jm;
      jm["method"] = to_string(m.method);
      if (m.outcome) {
        jm["value"] = scalar_json(m.outcome->value);
        jm["terms"] = m.outcome->terms;
        jm["est_error"] = m.outcome->est_error;
        jm["condition"] = m.outcome->condition;
        jm["converged"] = m.outcome->converged;
      }
      if (m.skipped) jm["skipped"] = to_string(*m.skipped);
      if (!m.error.empty()) jm["error"] = m.error;
      results.push_back(std::move(jm));
    }
    jr["results"] = std::move(results);
    json pairs = json::array();
    for (const auto& p : r.pairwise) {
      pairs.push_back({{"pair", std::string(to_string(p.first)) + "/" + to_string(p.second)},
                       {"rel_err", p.rel_err}});
    }
    jr["pairwise"] = std::move(pairs);
    jr["status"] = to_string(r.status);
    recs.push_back(std::move(jr));
  }
  out["records"] = std::move(recs);

  const Summary s = summarize(records);
  json js = {{"total", s.total},         {"pass", s.pass},
             {"fail", s.fail},           {"skipped", s.skipped},
             {"max_rel_err", s.max_rel_err}};
  if (s.argmax) {
    const auto& r = records[*s.argmax];
    js["argmax_point"] = {{"index", r.index},
                          {"params", params_json(r.function, r.params)},
                          {"x", scalar_json(r.x)},
                          {"y", scalar_json(r.y)}};
  } else {
    js["argmax_point"] = nullptr;
  }
  out["summary"] = std::move(js);
  return out.dump(2) + "\n";
}

std::string report_to_csv(std::span<const VerificationRecord> records) {
  std::string out = "function,method_pair,a,b,c,x_re,x_im,y_re,y_im,rel_err,status\n";
  for (const auto& r : records) {
    const std::string prefix = std::string(to_string(r.function)) + ",";
    std::string coords =
        (r.function == FunctionId::Phi3 ? std::string() : format_param(r.params.a)) + "," +
        format_param(r.params.b) + "," + format_param(r.params.c) + "," +
        format_double(r.x.real()) + "," + format_double(r.x.imag()) + "," +
        format_double(r.y.real()) + "," + format_double(r.y.imag()) + ",";
    if (r.pairwise.empty()) {
      std::string methods;
      for (const auto& m : r.results) {
        if (!methods.empty()) methods += "/";
        methods += to_string(m.method);
      }
      out += prefix + methods + "," + coords + "," + to_string(r.status) + "\n";
      continue;
    }
    for (const auto& p : r.pairwise) {
      out += prefix + to_string(p.first) + "/" + to_string(p.second) + "," + coords +
             format_double(p.rel_err) + "," + to_string(r.status) + "\n";
    }
  }
  return out;
}

}  // namespace humbert
