// Copyright 2026 The pmecc Authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//     http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#include "pmecc/pmecc.h"

#include <cstdlib>
#include <cstring>
#include <exception>
#include <new>
#include <string>

#include "pmecc/core/assembly.hpp"
#include "pmecc/core/construction.hpp"
#include "pmecc/core/error.hpp"
#include "pmecc/core/jet.hpp"
#include "pmecc/core/poly.hpp"
#include "pmecc/core/rate.hpp"
#include "pmecc/core/solver.hpp"
#include "pmecc/core/verifier.hpp"

struct pmecc_poly {
  pmecc::Poly p;
};
struct pmecc_verification {
  pmecc::VerificationReport r;
};
struct pmecc_bundle {
  pmecc::AssemblyBundle b;
};
struct pmecc_field {
  pmecc::GridField f;
};
struct pmecc_series {
  pmecc::ProbeSeries s;
};

namespace {

thread_local std::string g_last_error;

pmecc_status map_kind(pmecc::ErrorKind k) {
  using pmecc::ErrorKind;
  switch (k) {
    case ErrorKind::kInvalidArgument: return PMECC_ERR_INVALID_ARGUMENT;
    case ErrorKind::kDimensionMismatch: return PMECC_ERR_DIMENSION_MISMATCH;
    case ErrorKind::kBasePointMismatch: return PMECC_ERR_BASE_POINT_MISMATCH;
    case ErrorKind::kFamilyRange: return PMECC_ERR_FAMILY_RANGE;
    case ErrorKind::kDomain: return PMECC_ERR_DOMAIN;
    case ErrorKind::kSearchExhausted: return PMECC_ERR_SEARCH_EXHAUSTED;
    case ErrorKind::kConstructionInvalid: return PMECC_ERR_CONSTRUCTION_INVALID;
    case ErrorKind::kInternalInconsistency: return PMECC_ERR_INTERNAL_INCONSISTENCY;
    case ErrorKind::kAssemblyInfeasible: return PMECC_ERR_ASSEMBLY_INFEASIBLE;
    case ErrorKind::kProfileConstruction: return PMECC_ERR_PROFILE_CONSTRUCTION;
    case ErrorKind::kResolutionTooSmall: return PMECC_ERR_RESOLUTION_TOO_SMALL;
    case ErrorKind::kStability: return PMECC_ERR_STABILITY;
    case ErrorKind::kOriginOutsideSupport: return PMECC_ERR_ORIGIN_OUTSIDE_SUPPORT;
    case ErrorKind::kParse: return PMECC_ERR_PARSE;
    case ErrorKind::kIo: return PMECC_ERR_IO;
  }
  return PMECC_ERR_UNKNOWN;
}

// Runs fn, translating exceptions into status codes.
template <typename Fn>
pmecc_status guard(Fn&& fn) {
  try {
    fn();
    g_last_error.clear();
    return PMECC_OK;
  } catch (const pmecc::Error& e) {
    g_last_error = e.what();
    return map_kind(e.kind());
  } catch (const std::bad_alloc&) {
    g_last_error = "out of memory";
    return PMECC_ERR_UNKNOWN;
  } catch (const std::exception& e) {
    g_last_error = e.what();
    return PMECC_ERR_UNKNOWN;
  }
}

void require(const void* p, const char* what) {
  if (!p) throw pmecc::Error(pmecc::ErrorKind::kInvalidArgument, std::string(what) + " is null");
}

char* dup(const std::string& s) {
  char* out = static_cast<char*>(std::malloc(s.size() + 1));
  if (!out) throw std::bad_alloc();
  std::memcpy(out, s.c_str(), s.size() + 1);
  return out;
}

pmecc::ConstructionParams to_core(const pmecc_params& p) {
  pmecc::ConstructionParams c;
  c.alpha = p.alpha;
  c.m = p.m;
  c.n = p.n;
  if (p.family != PMECC_CASE1 && p.family != PMECC_CASE2) {
    throw pmecc::Error(pmecc::ErrorKind::kInvalidArgument, "unknown family");
  }
  c.family = p.family == PMECC_CASE1 ? pmecc::Family::kCase1 : pmecc::Family::kCase2;
  c.steepness = p.steepness;
  c.rho = p.rho;
  c.amplitude = p.amplitude;
  return c;
}

pmecc_params from_core(const pmecc::ConstructionParams& c) {
  pmecc_params p;
  p.alpha = c.alpha;
  p.m = c.m;
  p.n = c.n;
  p.family = c.family == pmecc::Family::kCase1 ? PMECC_CASE1 : PMECC_CASE2;
  p.steepness = c.steepness;
  p.rho = c.rho;
  p.amplitude = c.amplitude;
  return p;
}

}  // namespace

extern "C" {

const char* pmecc_version(void) { return "0.1.0"; }

const char* pmecc_status_name(pmecc_status s) {
  switch (s) {
    case PMECC_OK: return "ok";
    case PMECC_ERR_INVALID_ARGUMENT: return "invalid-argument";
    case PMECC_ERR_DIMENSION_MISMATCH: return "dimension-mismatch";
    case PMECC_ERR_BASE_POINT_MISMATCH: return "base-point-mismatch";
    case PMECC_ERR_FAMILY_RANGE: return "family-range";
    case PMECC_ERR_DOMAIN: return "domain";
    case PMECC_ERR_SEARCH_EXHAUSTED: return "search-exhausted";
    case PMECC_ERR_CONSTRUCTION_INVALID: return "construction-invalid";
    case PMECC_ERR_INTERNAL_INCONSISTENCY: return "internal-inconsistency";
    case PMECC_ERR_ASSEMBLY_INFEASIBLE: return "assembly-infeasible";
    case PMECC_ERR_PROFILE_CONSTRUCTION: return "profile-construction";
    case PMECC_ERR_RESOLUTION_TOO_SMALL: return "resolution-too-small";
    case PMECC_ERR_STABILITY: return "stability";
    case PMECC_ERR_ORIGIN_OUTSIDE_SUPPORT: return "origin-outside-support";
    case PMECC_ERR_PARSE: return "parse";
    case PMECC_ERR_IO: return "io";
    case PMECC_ERR_UNKNOWN: return "unknown";
  }
  return "unknown";
}

const char* pmecc_last_error(void) { return g_last_error.c_str(); }

void pmecc_string_free(char* s) { std::free(s); }

// ---- polynomials

pmecc_status pmecc_poly_parse(const char* text, pmecc_poly** out) {
  return guard([&] {
    require(text, "text");
    require(out, "out");
    *out = new pmecc_poly{pmecc::parse_poly(text)};
  });
}

pmecc_status pmecc_poly_format(const pmecc_poly* p, char** out) {
  return guard([&] {
    require(p, "poly");
    require(out, "out");
    *out = dup(pmecc::format_poly(p->p));
  });
}

pmecc_status pmecc_poly_dimension(const pmecc_poly* p, int* out) {
  return guard([&] {
    require(p, "poly");
    require(out, "out");
    *out = p->p.dimension();
  });
}

pmecc_status pmecc_poly_eval(const pmecc_poly* p, const double* x, double* out) {
  return guard([&] {
    require(p, "poly");
    require(x, "x");
    require(out, "out");
    std::vector<double> pt(x, x + p->p.dimension());
    *out = pmecc::evaluate(p->p, pt);
  });
}

pmecc_status pmecc_rate_oracle(const pmecc_poly* w, const double* x0, double alpha, double m,
                               double* out) {
  return guard([&] {
    require(w, "poly");
    require(x0, "x0");
    require(out, "out");
    std::vector<double> pt(x0, x0 + w->p.dimension());
    *out = pmecc::w11_rate_oracle(pmecc::jet_from_poly(w->p, pt), alpha, m);
  });
}

void pmecc_poly_free(pmecc_poly* p) { delete p; }

// ---- construction

pmecc_status pmecc_family_for_alpha(double alpha, pmecc_family* out) {
  return guard([&] {
    require(out, "out");
    *out = pmecc::family_for_alpha(alpha) == pmecc::Family::kCase1 ? PMECC_CASE1 : PMECC_CASE2;
  });
}

pmecc_status pmecc_params_init(double alpha, double m, int n, pmecc_params* out) {
  return guard([&] {
    require(out, "out");
    pmecc::ConstructionParams c;
    c.alpha = alpha;
    c.m = m;
    c.n = n;
    c.family = pmecc::family_for_alpha(alpha);
    c.steepness = 1;
    c.validate();
    c.steepness = 0;
    *out = from_core(c);
  });
}

pmecc_status pmecc_solve_steepness(double alpha, double m, int n, double margin, double* out) {
  return guard([&] {
    require(out, "out");
    *out = pmecc::solve_steepness(alpha, m, n, margin);
  });
}

pmecc_status pmecc_build_family(const pmecc_params* p, pmecc_poly** out) {
  return guard([&] {
    require(p, "params");
    require(out, "out");
    *out = new pmecc_poly{pmecc::build_family(to_core(*p))};
  });
}

pmecc_status pmecc_origin_rate(const pmecc_params* p, double* total, char** breakdown) {
  return guard([&] {
    require(p, "params");
    const pmecc::RateBreakdown r = pmecc::origin_rate(to_core(*p));
    if (total) *total = r.total;
    if (breakdown) *breakdown = dup(pmecc::format_rate_breakdown(r));
  });
}

pmecc_status pmecc_params_format(const pmecc_params* p, char** out) {
  return guard([&] {
    require(p, "params");
    require(out, "out");
    *out = dup(pmecc::format_params(to_core(*p)));
  });
}

pmecc_status pmecc_params_parse(const char* text, pmecc_params* out) {
  return guard([&] {
    require(text, "text");
    require(out, "out");
    *out = from_core(pmecc::parse_params(text));
  });
}

// ---- verification

pmecc_status pmecc_verify(const pmecc_params* p, const pmecc_poly* w, uint64_t seed, int threads,
                          double rho, pmecc_verification** out) {
  return guard([&] {
    require(p, "params");
    require(w, "poly");
    require(out, "out");
    pmecc::VerifyOptions opt;
    opt.sampling.seed = seed;
    opt.sampling.threads = threads;
    if (rho > 0) opt.rho = rho;
    *out = new pmecc_verification{pmecc::verify(to_core(*p), w->p, opt)};
  });
}

pmecc_status pmecc_verification_passed(const pmecc_verification* v, int* out) {
  return guard([&] {
    require(v, "verification");
    require(out, "out");
    *out = v->r.passed() ? 1 : 0;
  });
}

pmecc_status pmecc_verification_rho(const pmecc_verification* v, double* out) {
  return guard([&] {
    require(v, "verification");
    require(out, "out");
    *out = v->r.c2.rho;
  });
}

pmecc_status pmecc_verification_report(const pmecc_verification* v, char** out) {
  return guard([&] {
    require(v, "verification");
    require(out, "out");
    *out = dup(pmecc::format_verification_report(v->r));
  });
}

void pmecc_verification_free(pmecc_verification* v) { delete v; }

// ---- assembly

pmecc_status pmecc_assemble(const pmecc_params* p, const pmecc_poly* w, const char* glue,
                            uint64_t seed, int threads, pmecc_bundle** out, char** report,
                            char** log) {
  return guard([&] {
    require(p, "params");
    require(w, "poly");
    require(out, "out");
    pmecc::AssemblyOptions opt;
    opt.seed = seed;
    pmecc::SamplingOptions sampling;
    sampling.seed = seed;
    sampling.threads = threads;
    const pmecc::AutoAssemblyResult r =
        pmecc::assemble_driver(to_core(*p), w->p, glue ? glue : "auto", opt, sampling);
    std::string text;
    for (const auto& line : r.log) text += line + "\n";
    if (report) *report = dup(pmecc::format_assembly_report(r.bundle, r.report));
    if (log) *log = dup(text);
    *out = new pmecc_bundle{r.bundle};
  });
}

pmecc_status pmecc_bundle_parse(const char* manifest, pmecc_bundle** out) {
  return guard([&] {
    require(manifest, "manifest");
    require(out, "out");
    *out = new pmecc_bundle{pmecc::parse_manifest(manifest)};
  });
}

pmecc_status pmecc_bundle_format(const pmecc_bundle* b, char** out) {
  return guard([&] {
    require(b, "bundle");
    require(out, "out");
    *out = dup(pmecc::format_manifest(b->b));
  });
}

pmecc_status pmecc_bundle_params(const pmecc_bundle* b, pmecc_params* out) {
  return guard([&] {
    require(b, "bundle");
    require(out, "out");
    *out = from_core(b->b.params);
  });
}

pmecc_status pmecc_bundle_origin_rate(const pmecc_bundle* b, double* out) {
  return guard([&] {
    require(b, "bundle");
    require(out, "out");
    *out = pmecc::bundle_origin_rate(b->b);
  });
}

pmecc_status pmecc_bundle_inspect(const pmecc_bundle* b, uint64_t seed, char** report,
                                  int* passed) {
  return guard([&] {
    require(b, "bundle");
    pmecc::AssemblyOptions opt;
    opt.seed = seed;
    opt.glue = b->b.glue;
    const pmecc::AssemblyReport r = pmecc::inspect_bundle(b->b, opt);
    if (report) *report = dup(pmecc::format_assembly_report(b->b, r));
    if (passed) *passed = r.passed ? 1 : 0;
  });
}

pmecc_status pmecc_bundle_v0(const pmecc_bundle* b, const double* x, double* out) {
  return guard([&] {
    require(b, "bundle");
    require(x, "x");
    require(out, "out");
    std::vector<long double> pt(x, x + b->b.dimension());
    *out = static_cast<double>(b->b.v0(pt.data()));
  });
}

void pmecc_bundle_free(pmecc_bundle* b) { delete b; }

// ---- solver

pmecc_status pmecc_discretize(const pmecc_bundle* b, int res, int threads, pmecc_field** out) {
  return guard([&] {
    require(b, "bundle");
    require(out, "out");
    *out = new pmecc_field{pmecc::discretize(b->b, res, threads)};
  });
}

pmecc_status pmecc_field_zero(int n, double half_width, int res, pmecc_field** out) {
  return guard([&] {
    require(out, "out");
    *out = new pmecc_field{pmecc::make_grid(n, half_width, res)};
  });
}

pmecc_status pmecc_field_info(const pmecc_field* f, int* n, int* res, double* h, double* t) {
  return guard([&] {
    require(f, "field");
    if (n) *n = f->f.n;
    if (res) *res = f->f.res;
    if (h) *h = f->f.h;
    if (t) *t = f->f.t;
  });
}

pmecc_status pmecc_field_origin_value(const pmecc_field* f, double* out) {
  return guard([&] {
    require(f, "field");
    require(out, "out");
    *out = static_cast<double>(f->f.v[f->f.origin()]);
  });
}

pmecc_status pmecc_field_admissible_dt(const pmecc_field* f, double m, double* out) {
  return guard([&] {
    require(f, "field");
    require(out, "out");
    *out = pmecc::admissible_dt(f->f, m);
  });
}

pmecc_status pmecc_field_step(pmecc_field* f, double m, double dt, int threads,
                              double* admissible) {
  try {
    require(f, "field");
    pmecc::step(f->f, m, dt, threads);
    g_last_error.clear();
    return PMECC_OK;
  } catch (const pmecc::StabilityError& e) {
    g_last_error = e.what();
    if (admissible) *admissible = e.admissible_dt();
    return PMECC_ERR_STABILITY;
  } catch (...) {
    return guard([] { throw; });
  }
}

pmecc_status pmecc_field_probe(const pmecc_field* f, double alpha, double* lambda1, double* w11) {
  return guard([&] {
    require(f, "field");
    const pmecc::ProbeResult p = pmecc::probe(f->f, alpha);
    if (lambda1) *lambda1 = p.lambda1;
    if (w11) *w11 = p.w11;
  });
}

pmecc_status pmecc_field_write_snapshot(const pmecc_field* f, const char* path) {
  return guard([&] {
    require(f, "field");
    require(path, "path");
    pmecc::write_snapshot(path, f->f);
  });
}

void pmecc_field_free(pmecc_field* f) { delete f; }

pmecc_status pmecc_evolve(const pmecc_field* initial, const pmecc_evolve_options* opt,
                          pmecc_series** out) {
  return guard([&] {
    require(initial, "field");
    require(opt, "options");
    require(out, "out");
    pmecc::EvolveOptions o;
    o.alpha = opt->alpha;
    o.m = opt->m;
    o.horizon = opt->horizon;
    o.probe_stride = opt->probe_stride;
    o.threads = opt->threads;
    if (opt->snapshot_dir) o.snapshot_dir = opt->snapshot_dir;
    o.snapshot_stride = opt->snapshot_stride;
    *out = new pmecc_series{pmecc::evolve_and_probe(initial->f, o)};
  });
}

pmecc_status pmecc_series_csv(const pmecc_series* s, char** out) {
  return guard([&] {
    require(s, "series");
    require(out, "out");
    *out = dup(pmecc::format_probe_csv(s->s));
  });
}

pmecc_status pmecc_series_summary(const pmecc_series* s, char** out) {
  return guard([&] {
    require(s, "series");
    require(out, "out");
    *out = dup(pmecc::format_probe_summary(s->s));
  });
}

pmecc_status pmecc_series_detection(const pmecc_series* s, int* detected, int* local,
                                    double* t_star, double* measured_rate) {
  return guard([&] {
    require(s, "series");
    if (detected) *detected = s->s.detected ? 1 : 0;
    if (local) *local = s->s.detection_local ? 1 : 0;
    if (t_star) *t_star = s->s.t_star;
    if (measured_rate) *measured_rate = s->s.measured_rate;
  });
}

void pmecc_series_free(pmecc_series* s) { delete s; }

}  // extern "C"
