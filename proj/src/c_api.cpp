#include "pathdeform/pathdeform.h"

#include <exception>
#include <fstream>
#include <new>
#include <sstream>
#include <stdexcept>
#include <string>
#include <string_view>

#include "pathdeform/scenarios.hpp"
#include "pathdeform/verify.hpp"

namespace pd = pathdeform;

struct pd_config {
  pd::RunConfig cfg;
};

struct pd_report {
  pd::Report report;
  std::string text;
};

struct pd_trace {
  std::vector<pd::TraceRow> rows;
  std::string csv;
};

struct pd_monoid {
  pd::FiniteMonoid monoid;
  std::optional<pd::MultiplicativeCochain<pd::FiniteElement>> cocycle;
};

namespace {

thread_local std::string last_error;

pd_status fail(pd_status s, std::string msg) {
  last_error = std::move(msg);
  return s;
}

// Runs body, mapping exceptions onto status codes.
template <class F>
pd_status guarded(F&& body) {
  try {
    last_error.clear();
    return body();
  } catch (const pd::FixtureError& e) {
    return fail(PD_ERR_FIXTURE, e.what());
  } catch (const std::invalid_argument& e) {
    return fail(PD_ERR_INVALID_ARGUMENT, e.what());
  } catch (const std::runtime_error& e) {
    return fail(PD_ERR_IO, e.what());
  } catch (const std::bad_alloc&) {
    return fail(PD_ERR_INTERNAL, "out of memory");
  } catch (const std::exception& e) {
    return fail(PD_ERR_INTERNAL, e.what());
  }
}

#define PD_REQUIRE(ptr)                                                  \
  do {                                                                   \
    if ((ptr) == nullptr) return fail(PD_ERR_INVALID_ARGUMENT, #ptr " is null"); \
  } while (0)

pd_report* wrap(pd::Report r) {
  auto* out = new pd_report{std::move(r), {}};
  out->text = out->report.render();
  return out;
}

}  // namespace

extern "C" {

const char* pd_version(void) { return "0.1.0"; }

const char* pd_last_error(void) { return last_error.c_str(); }

pd_status pd_config_new(pd_config** out) {
  PD_REQUIRE(out);
  return guarded([&] {
    *out = new pd_config{};
    return PD_OK;
  });
}

void pd_config_free(pd_config* cfg) { delete cfg; }

pd_status pd_config_set_backend(pd_config* cfg, const char* name) {
  PD_REQUIRE(cfg);
  PD_REQUIRE(name);
  const std::string_view n(name);
  if (n == "torus") {
    cfg->cfg.backend = pd::BackendKind::Torus;
  } else if (n == "sphere") {
    cfg->cfg.backend = pd::BackendKind::Sphere;
  } else {
    return fail(PD_ERR_INVALID_ARGUMENT, "unknown backend '" + std::string(n) + "'");
  }
  return PD_OK;
}

pd_status pd_config_set_lattice(pd_config* cfg, double b1x, double b1y, double b2x, double b2y) {
  PD_REQUIRE(cfg);
  return guarded([&] {
    cfg->cfg.lattice = pd::Lattice({b1x, b1y}, {b2x, b2y});
    return PD_OK;
  });
}

pd_status pd_config_set_scale(pd_config* cfg, double scale) {
  PD_REQUIRE(cfg);
  cfg->cfg.scale = scale;
  return PD_OK;
}

pd_status pd_config_set_lambda(pd_config* cfg, double re, double im) {
  PD_REQUIRE(cfg);
  cfg->cfg.lambda = std::complex<double>(re, im);
  return PD_OK;
}

pd_status pd_config_set_quantum(pd_config* cfg, int64_t n) {
  PD_REQUIRE(cfg);
  cfg->cfg.quantum = n;
  return PD_OK;
}

pd_status pd_config_set_samples(pd_config* cfg, uint64_t samples) {
  PD_REQUIRE(cfg);
  cfg->cfg.samples = samples;
  return PD_OK;
}

pd_status pd_config_set_seed(pd_config* cfg, uint64_t seed) {
  PD_REQUIRE(cfg);
  cfg->cfg.seed = seed;
  return PD_OK;
}

pd_status pd_config_set_radius(pd_config* cfg, double radius) {
  PD_REQUIRE(cfg);
  cfg->cfg.radius = radius;
  return PD_OK;
}

pd_status pd_config_set_tolerance(pd_config* cfg, double tol) {
  PD_REQUIRE(cfg);
  if (!(tol > 0.0)) return fail(PD_ERR_INVALID_ARGUMENT, "tolerance must be positive");
  auto& t = cfg->cfg.tol;
  t.cocycle = t.multiplicative = t.delta_squared = t.associativity = t.torus_triviality =
      t.local_triviality = t.unit_modulus = tol;
  return PD_OK;
}

pd_status pd_verify(const pd_config* cfg, const char* suite, pd_report** out) {
  PD_REQUIRE(cfg);
  PD_REQUIRE(suite);
  PD_REQUIRE(out);
  const std::string_view s(suite);
  pd::VerifySuite which;
  if (s == "cocycle") {
    which = pd::VerifySuite::Cocycle;
  } else if (s == "delta-squared") {
    which = pd::VerifySuite::DeltaSquared;
  } else if (s == "associativity") {
    which = pd::VerifySuite::Associativity;
  } else if (s == "triviality-torus") {
    which = pd::VerifySuite::TrivialityTorus;
  } else if (s == "local-triviality") {
    which = pd::VerifySuite::LocalTriviality;
  } else {
    return fail(PD_ERR_INVALID_ARGUMENT, "unknown suite '" + std::string(s) + "'");
  }
  return guarded([&] {
    *out = wrap(pd::run_verify(which, cfg->cfg));
    return PD_OK;
  });
}

void pd_report_free(pd_report* report) { delete report; }

int pd_report_passed(const pd_report* report) {
  return report != nullptr && report->report.passed() ? 1 : 0;
}

size_t pd_report_check_count(const pd_report* report) {
  return report == nullptr ? 0 : report->report.checks.size();
}

pd_status pd_report_check(const pd_report* report, size_t index, pd_check* out) {
  PD_REQUIRE(report);
  PD_REQUIRE(out);
  if (index >= report->report.checks.size()) {
    return fail(PD_ERR_INVALID_ARGUMENT, "check index out of range");
  }
  const auto& c = report->report.checks[index];
  *out = {c.name.c_str(), c.passed ? 1 : 0, c.residual, c.samples, c.undefined};
  return PD_OK;
}

const char* pd_report_text(const pd_report* report) {
  return report == nullptr ? "" : report->text.c_str();
}

pd_status pd_trace_equator(double colatitude, int64_t quantum, int steps, double scale,
                           pd_trace** out) {
  PD_REQUIRE(out);
  return guarded([&] {
    pd::EquatorTraceConfig cfg;
    cfg.colatitude = colatitude;
    cfg.quantum = quantum;
    cfg.steps = steps;
    cfg.scale = scale;
    auto* t = new pd_trace{pd::equator_trace(cfg), {}};
    std::ostringstream os;
    pd::emit_csv(t->rows, os);
    t->csv = os.str();
    *out = t;
    return PD_OK;
  });
}

void pd_trace_free(pd_trace* trace) { delete trace; }

size_t pd_trace_row_count(const pd_trace* trace) {
  return trace == nullptr ? 0 : trace->rows.size();
}

pd_status pd_trace_get_row(const pd_trace* trace, size_t index, pd_trace_row* out) {
  PD_REQUIRE(trace);
  PD_REQUIRE(out);
  if (index >= trace->rows.size()) return fail(PD_ERR_INVALID_ARGUMENT, "row index out of range");
  const auto& r = trace->rows[index];
  *out = {r.x, r.defined ? 1 : 0, r.omega.value, r.phase, r.weight.real(), r.weight.imag()};
  return PD_OK;
}

pd_status pd_trace_total_phase(const pd_trace* trace, double* out) {
  PD_REQUIRE(trace);
  PD_REQUIRE(out);
  auto total = pd::total_phase(trace->rows);
  if (!total) return fail(PD_ERR_INVALID_ARGUMENT, "trace endpoints are undefined");
  *out = *total;
  return PD_OK;
}

pd_status pd_trace_write_csv(const pd_trace* trace, const char* path) {
  PD_REQUIRE(trace);
  PD_REQUIRE(path);
  return guarded([&] {
    std::ofstream f(path, std::ios::binary);
    if (!f) throw std::runtime_error(std::string("cannot open ") + path + " for writing");
    f << trace->csv;
    f.flush();
    if (!f) throw std::runtime_error(std::string("failed writing ") + path);
    return PD_OK;
  });
}

const char* pd_trace_csv(const pd_trace* trace) {
  return trace == nullptr ? "" : trace->csv.c_str();
}

pd_status pd_monoid_load(const char* path, pd_monoid** out) {
  PD_REQUIRE(path);
  PD_REQUIRE(out);
  return guarded([&] {
    auto m = pd::FiniteMonoid::from_file(path);
    std::ifstream in(path);
    std::stringstream ss;
    ss << in.rdbuf();
    std::optional<pd::MultiplicativeCochain<pd::FiniteElement>> cocycle;
    try {
      cocycle = pd::cocycle_from_json(m, ss.str());
    } catch (const pd::FixtureError& e) {
      throw pd::FixtureError(std::string(path) + ": " + e.what());
    }
    *out = new pd_monoid{std::move(m), std::move(cocycle)};
    return PD_OK;
  });
}

void pd_monoid_free(pd_monoid* monoid) { delete monoid; }

size_t pd_monoid_size(const pd_monoid* monoid) {
  return monoid == nullptr ? 0 : monoid->monoid.size();
}

pd_status pd_monoid_delta_check(const pd_monoid* monoid, uint64_t seed, pd_report** out) {
  PD_REQUIRE(monoid);
  PD_REQUIRE(out);
  return guarded([&] {
    *out = wrap(pd::run_monoid_delta_check(monoid->monoid, seed, 100));
    return PD_OK;
  });
}

pd_status pd_monoid_solve_triviality(const pd_monoid* monoid, uint64_t seed, pd_report** out) {
  PD_REQUIRE(monoid);
  PD_REQUIRE(out);
  return guarded([&] {
    *out = wrap(pd::run_monoid_triviality(monoid->monoid, monoid->cocycle, seed));
    return PD_OK;
  });
}

}  // extern "C"
