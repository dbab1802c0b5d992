#include "humbert/humbert.h"

#include <fstream>
#include <memory>
#include <new>
#include <sstream>
#include <string>
#include <vector>

#include "humbert/formal.hpp"
#include "humbert/kernels.hpp"
#include "humbert/verify.hpp"

struct humb_context {
  humbert::SeriesControl ctrl;
  std::string last_error;
};

struct humb_certificate {
  humbert::formal::Certificate cert;
  std::string json;
};

struct humb_table {
  humbert::formal::RationalCoeffTable table;
  std::vector<std::string> rendered;
  std::string json;
};

struct humb_report {
  std::vector<humbert::VerificationRecord> records;
  humbert::Summary summary;
  std::string json;
  std::string csv;
};

namespace {

using humbert::ErrorCode;
using humbert::Scalar;

humb_status status_of(ErrorCode code) {
  switch (code) {
    case ErrorCode::InvalidParameter: return HUMB_ERR_INVALID_PARAMETER;
    case ErrorCode::DomainError: return HUMB_ERR_DOMAIN;
    case ErrorCode::NotConverged: return HUMB_ERR_NOT_CONVERGED;
    case ErrorCode::ConfigError: return HUMB_ERR_CONFIG;
    case ErrorCode::CapExceeded: return HUMB_ERR_CAP_EXCEEDED;
  }
  return HUMB_ERR_INTERNAL;
}

// Runs `body`, translating exceptions into a status and the context's
// last-error message.
template <class Body>
humb_status guarded(humb_context* ctx, Body&& body) {
  if (ctx) ctx->last_error.clear();
  auto fail = [&](humb_status s, const char* what) {
    if (ctx) ctx->last_error = what;
    return s;
  };
  try {
    return body();
  } catch (const humbert::Error& e) {
    return fail(status_of(e.code()), e.what());
  } catch (const std::bad_alloc&) {
    return fail(HUMB_ERR_INTERNAL, "out of memory");
  } catch (const std::exception& e) {
    return fail(HUMB_ERR_INTERNAL, e.what());
  }
}

Scalar to_scalar(humb_complex z) { return {z.re, z.im}; }
humb_complex to_c(Scalar z) { return {z.real(), z.imag()}; }

void fill(const humbert::EvalOutcome& o, humb_outcome* out) {
  out->value = to_c(o.value);
  out->terms = o.terms;
  out->est_error = o.est_error;
  out->condition = o.condition;
  out->converged = o.converged ? 1 : 0;
}

humbert::formal::IdentityId to_identity(humb_identity id) {
  using humbert::formal::IdentityId;
  switch (id) {
    case HUMB_ID_EQ13: return IdentityId::Eq13;
    case HUMB_ID_EQ14: return IdentityId::Eq14;
    case HUMB_ID_EQ15: return IdentityId::Eq15;
    case HUMB_ID_EQ15_PRINTED: return IdentityId::Eq15Uncorrected;
    case HUMB_ID_EQ16: return IdentityId::Eq16;
    case HUMB_ID_EQ33: return IdentityId::Eq33;
    case HUMB_ID_EQ34: return IdentityId::Eq34;
    case HUMB_ID_BC3F3: return IdentityId::BC3F3;
  }
  throw humbert::Error(ErrorCode::ConfigError, "unknown identity");
}

humb_identity from_identity(humbert::formal::IdentityId id) {
  using humbert::formal::IdentityId;
  switch (id) {
    case IdentityId::Eq13: return HUMB_ID_EQ13;
    case IdentityId::Eq14: return HUMB_ID_EQ14;
    case IdentityId::Eq15: return HUMB_ID_EQ15;
    case IdentityId::Eq15Uncorrected: return HUMB_ID_EQ15_PRINTED;
    case IdentityId::Eq16: return HUMB_ID_EQ16;
    case IdentityId::Eq33: return HUMB_ID_EQ33;
    case IdentityId::Eq34: return HUMB_ID_EQ34;
    case IdentityId::BC3F3: return HUMB_ID_BC3F3;
  }
  return HUMB_ID_EQ13;
}

humbert::FunctionId to_function(humb_function fn) {
  switch (fn) {
    case HUMB_PHI2: return humbert::FunctionId::Phi2;
    case HUMB_PHI3: return humbert::FunctionId::Phi3;
    case HUMB_PSI2: return humbert::FunctionId::Psi2;
  }
  throw humbert::Error(ErrorCode::ConfigError, "unknown function id");
}

humbert::Method to_method(humb_method m) {
  switch (m) {
    case HUMB_METHOD_DIRECT: return humbert::Method::Direct;
    case HUMB_METHOD_SERIES2F1: return humbert::Method::Series2F1;
    case HUMB_METHOD_PHI3SHIFT: return humbert::Method::Phi3Shift;
    case HUMB_METHOD_DIAG2F2: return humbert::Method::Diag2F2;
    case HUMB_METHOD_EQUALARGS3F3: return humbert::Method::EqualArgs3F3;
    case HUMB_METHOD_GAUSSTERMS: return humbert::Method::GaussTerms;
  }
  throw humbert::Error(ErrorCode::ConfigError, "unknown method id");
}

humb_status make_report(const std::string& text, unsigned threads,
                        humb_report** out) {
  const humbert::GridSpec spec = humbert::parse_grid_spec(text);
  auto report = std::make_unique<humb_report>();
  report->records = humbert::run_grid(spec, spec.gate, threads);
  report->summary = humbert::summarize(report->records);
  report->json = humbert::report_to_json(spec, report->records);
  report->csv = humbert::report_to_csv(report->records);
  *out = report.release();
  return HUMB_OK;
}

}  // namespace

extern "C" {

humb_context* humb_context_new(void) { return new (std::nothrow) humb_context{}; }

void humb_context_free(humb_context* ctx) { delete ctx; }

humb_status humb_context_set_control(humb_context* ctx, double rel_tol, uint32_t max_terms,
                                     uint32_t small_run) {
  if (!ctx) return HUMB_ERR_NULL_ARGUMENT;
  return guarded(ctx, [&] {
    const humbert::SeriesControl ctrl{rel_tol, max_terms, small_run};
    ctrl.validate();
    ctx->ctrl = ctrl;
    return HUMB_OK;
  });
}

humb_status humb_context_get_control(const humb_context* ctx, double* rel_tol,
                                     uint32_t* max_terms, uint32_t* small_run) {
  if (!ctx) return HUMB_ERR_NULL_ARGUMENT;
  if (rel_tol) *rel_tol = ctx->ctrl.rel_tol;
  if (max_terms) *max_terms = ctx->ctrl.max_terms;
  if (small_run) *small_run = ctx->ctrl.small_run;
  return HUMB_OK;
}

const char* humb_context_last_error(const humb_context* ctx) {
  return ctx ? ctx->last_error.c_str() : "";
}

const char* humb_status_name(humb_status status) {
  switch (status) {
    case HUMB_OK: return "ok";
    case HUMB_ERR_INVALID_PARAMETER: return "invalid parameter";
    case HUMB_ERR_DOMAIN: return "domain error";
    case HUMB_ERR_NOT_CONVERGED: return "not converged";
    case HUMB_ERR_CONFIG: return "configuration error";
    case HUMB_ERR_CAP_EXCEEDED: return "degree cap exceeded";
    case HUMB_ERR_IO: return "i/o error";
    case HUMB_ERR_NULL_ARGUMENT: return "null argument";
    case HUMB_ERR_INTERNAL: return "internal error";
  }
  return "unknown status";
}

humb_complex humb_pochhammer(humb_complex a, uint32_t n) {
  return to_c(humbert::pochhammer(to_scalar(a), n));
}

humb_status humb_pfq(humb_context* ctx, const humb_complex* upper, size_t n_upper,
                     const humb_complex* lower, size_t n_lower, humb_complex z,
                     humb_outcome* out) {
  if (!ctx || !out || (n_upper && !upper) || (n_lower && !lower)) return HUMB_ERR_NULL_ARGUMENT;
  return guarded(ctx, [&] {
    std::vector<Scalar> u(n_upper), l(n_lower);
    for (size_t i = 0; i < n_upper; ++i) u[i] = to_scalar(upper[i]);
    for (size_t i = 0; i < n_lower; ++i) l[i] = to_scalar(lower[i]);
    const humbert::EvalOutcome o = humbert::pfq(u, l, to_scalar(z), ctx->ctrl);
    fill(o, out);
    humbert::require_converged(o);
    return HUMB_OK;
  });
}

humb_status humb_hyp2f1_terminating(humb_context* ctx, uint32_t k, humb_complex beta,
                                    humb_complex gamma, humb_complex z, humb_complex* out) {
  if (!out) return HUMB_ERR_NULL_ARGUMENT;
  return guarded(ctx, [&] {
    *out = to_c(humbert::hyp2f1_terminating(k, to_scalar(beta), to_scalar(gamma), to_scalar(z)));
    return HUMB_OK;
  });
}

humb_status humb_gauss_2f1_unit(humb_context* ctx, humb_complex a, humb_complex b,
                                humb_complex c, humb_complex* out) {
  if (!out) return HUMB_ERR_NULL_ARGUMENT;
  return guarded(ctx, [&] {
    *out = to_c(humbert::gauss_2f1_unit(to_scalar(a), to_scalar(b), to_scalar(c)));
    return HUMB_OK;
  });
}

humb_status humb_evaluate(humb_context* ctx, humb_function fn, humb_method method,
                          const humb_complex params[3], humb_complex x, humb_complex y,
                          humb_outcome* out) {
  if (!ctx || !params || !out) return HUMB_ERR_NULL_ARGUMENT;
  return guarded(ctx, [&] {
    const humbert::ParamSet p{to_scalar(params[0]), to_scalar(params[1]), to_scalar(params[2])};
    const humbert::EvalOutcome o = humbert::evaluate(to_function(fn), to_method(method), p,
                                                     to_scalar(x), to_scalar(y), ctx->ctrl);
    fill(o, out);
    humbert::require_converged(o);
    return HUMB_OK;
  });
}

humb_status humb_function_from_name(const char* name, humb_function* out) {
  if (!name || !out) return HUMB_ERR_NULL_ARGUMENT;
  return guarded(nullptr, [&] {
    switch (humbert::function_from_name(name)) {
      case humbert::FunctionId::Phi2: *out = HUMB_PHI2; break;
      case humbert::FunctionId::Phi3: *out = HUMB_PHI3; break;
      case humbert::FunctionId::Psi2: *out = HUMB_PSI2; break;
    }
    return HUMB_OK;
  });
}

humb_status humb_method_from_name(const char* name, humb_method* out) {
  if (!name || !out) return HUMB_ERR_NULL_ARGUMENT;
  return guarded(nullptr, [&] {
    *out = static_cast<humb_method>(static_cast<int>(humbert::method_from_name(name)));
    return HUMB_OK;
  });
}

const char* humb_function_name(humb_function fn) {
  try {
    return humbert::to_string(to_function(fn));
  } catch (...) {
    return "?";
  }
}

const char* humb_method_name(humb_method method) {
  try {
    return humbert::to_string(to_method(method));
  } catch (...) {
    return "?";
  }
}

size_t humb_identity_count(void) { return humbert::formal::identities().size(); }

humb_status humb_identity_describe(size_t i, humb_identity* id, const char** key,
                                   const char** equation, const char** statement,
                                   const char** correction, const char** params) {
  const auto all = humbert::formal::identities();
  if (i >= all.size()) return HUMB_ERR_CONFIG;
  const auto& info = all[i];
  if (id) *id = from_identity(info.id);
  if (key) *key = info.key;
  if (equation) *equation = info.equation;
  if (statement) *statement = info.statement;
  if (correction) *correction = info.correction;
  if (params) *params = info.params;
  return HUMB_OK;
}

humb_status humb_identity_from_key(const char* key, humb_identity* out) {
  if (!key || !out) return HUMB_ERR_NULL_ARGUMENT;
  return guarded(nullptr, [&] {
    *out = from_identity(humbert::formal::identity_from_key(key));
    return HUMB_OK;
  });
}

humb_status humb_oracle_compare(humb_context* ctx, humb_identity id, const char* params,
                                uint32_t max_deg_x, uint32_t max_deg_t, humb_certificate** out) {
  if (!params || !out) return HUMB_ERR_NULL_ARGUMENT;
  return guarded(ctx, [&] {
    auto cert = std::make_unique<humb_certificate>(humb_certificate{
        humbert::formal::compare_formal(to_identity(id), humbert::formal::parse_params(params),
                                        max_deg_x, max_deg_t),
        {}});
    cert->json = humbert::formal::certificate_to_json(cert->cert);
    *out = cert.release();
    return HUMB_OK;
  });
}

int humb_certificate_equal(const humb_certificate* cert) {
  return cert && cert->cert.equal ? 1 : 0;
}

const char* humb_certificate_json(const humb_certificate* cert) {
  return cert ? cert->json.c_str() : "";
}

void humb_certificate_free(humb_certificate* cert) { delete cert; }

humb_status humb_oracle_expand(humb_context* ctx, humb_identity id, humb_side side,
                               const char* params, uint32_t max_deg_x, uint32_t max_deg_t,
                               humb_table** out) {
  if (!params || !out) return HUMB_ERR_NULL_ARGUMENT;
  return guarded(ctx, [&] {
    const auto s = side == HUMB_LHS ? humbert::formal::Side::Lhs : humbert::formal::Side::Rhs;
    auto table = std::make_unique<humb_table>(humb_table{
        humbert::formal::expand_formal(to_identity(id), s, humbert::formal::parse_params(params),
                                       max_deg_x, max_deg_t),
        {},
        {}});
    for (uint32_t i = 0; i <= max_deg_x; ++i) {
      for (uint32_t j = 0; j <= max_deg_t; ++j) {
        table->rendered.push_back(humbert::formal::to_string(table->table.coeff(i, j)));
      }
    }
    table->json = humbert::formal::table_to_json(table->table);
    *out = table.release();
    return HUMB_OK;
  });
}

const char* humb_table_coeff(const humb_table* table, uint32_t i, uint32_t j) {
  if (!table || i > table->table.max_deg_x() || j > table->table.max_deg_t()) return nullptr;
  return table->rendered[size_t(i) * (table->table.max_deg_t() + 1) + j].c_str();
}

const char* humb_table_json(const humb_table* table) { return table ? table->json.c_str() : ""; }

void humb_table_free(humb_table* table) { delete table; }

humb_status humb_verify_run(humb_context* ctx, const char* spec_json, unsigned threads,
                            humb_report** out) {
  if (!spec_json || !out) return HUMB_ERR_NULL_ARGUMENT;
  return guarded(ctx, [&] { return make_report(spec_json, threads, out); });
}

humb_status humb_verify_run_file(humb_context* ctx, const char* path, unsigned threads,
                                 humb_report** out) {
  if (!path || !out) return HUMB_ERR_NULL_ARGUMENT;
  return guarded(ctx, [&] {
    std::ifstream in(path, std::ios::binary);
    if (!in) {
      if (ctx) ctx->last_error = std::string("cannot open spec file ") + path;
      return HUMB_ERR_IO;
    }
    std::ostringstream buf;
    buf << in.rdbuf();
    return make_report(buf.str(), threads, out);
  });
}

humb_status humb_report_summary(const humb_report* report, humb_summary* out) {
  if (!report || !out) return HUMB_ERR_NULL_ARGUMENT;
  const humbert::Summary& s = report->summary;
  out->total = s.total;
  out->pass = s.pass;
  out->fail = s.fail;
  out->skipped = s.skipped;
  out->max_rel_err = s.max_rel_err;
  out->argmax_index = s.argmax ? static_cast<int64_t>(*s.argmax) : -1;
  return HUMB_OK;
}

const char* humb_report_json(const humb_report* report) {
  return report ? report->json.c_str() : "";
}

const char* humb_report_csv(const humb_report* report) {
  return report ? report->csv.c_str() : "";
}

void humb_report_free(humb_report* report) { delete report; }

}  // extern "C"
