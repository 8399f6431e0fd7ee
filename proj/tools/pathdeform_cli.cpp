// pathdeform: command line front end over libpathdeform.
//
//   pathdeform verify <suite> [--backend torus|sphere] [--samples N] [--seed S] ...
//   pathdeform trace equator [--colatitude T] [--quantum N] [--steps K] [--output F]
//   pathdeform monoid <delta-check|solve-triviality> <fixture.json> [--seed S]
//
// Exit codes: 0 all checks pass, 1 a check failed, 2 usage or config error.

#include <cmath>
#include <cstdint>
#include <cstdio>
#include <iostream>
#include <optional>
#include <string>
#include <vector>

#include "CLI11.hpp"
#include "pathdeform/pathdeform.h"

namespace {

constexpr int kExitPass = 0;
constexpr int kExitFail = 1;
constexpr int kExitUsage = 2;

constexpr double kPi = 3.141592653589793238462643383279502884;
constexpr double kTraceTolerance = 1e-6;

int usage_error(const std::string& msg) {
  std::cerr << "error: " << msg << '\n';
  return kExitUsage;
}

int api_error(pd_status s) {
  std::cerr << "error: " << pd_last_error() << '\n';
  return s == PD_ERR_INTERNAL ? kExitFail : kExitUsage;
}

// Owning wrappers so early returns do not leak handles.
template <class T, void (*Free)(T*)>
struct Handle {
  T* p = nullptr;
  Handle() = default;
  Handle(const Handle&) = delete;
  Handle& operator=(const Handle&) = delete;
  ~Handle() { Free(p); }
};

int print_report(const pd_report* report) {
  std::cout << pd_report_text(report);
  std::cout.flush();
  return pd_report_passed(report) ? kExitPass : kExitFail;
}

struct VerifyArgs {
  std::string suite;
  std::optional<std::string> backend;
  std::uint64_t samples = 1000;
  std::uint64_t seed = 1;
  std::optional<double> lambda;
  std::optional<double> lambda_im;
  std::optional<std::int64_t> quantum;
  double scale = 1.0;
  std::vector<double> lattice;
  std::optional<double> tol;
  std::optional<double> radius;
};

// Without --backend, torus-only flags and the torus suite pick the torus.
std::string resolve_backend(const VerifyArgs& a) {
  if (a.backend) return *a.backend;
  const bool torus_hint = a.lambda || a.lambda_im || !a.lattice.empty() || a.suite == "triviality-torus";
  return torus_hint ? "torus" : "sphere";
}

int run_verify(const VerifyArgs& a) {
  const std::string backend = resolve_backend(a);
  Handle<pd_config, pd_config_free> cfg;
  pd_status s = pd_config_new(&cfg.p);
  if (s != PD_OK) return api_error(s);

  auto check = [&](pd_status st) { return st == PD_OK; };
  if (!check(pd_config_set_backend(cfg.p, backend.c_str()))) return api_error(PD_ERR_INVALID_ARGUMENT);
  if (!check(pd_config_set_samples(cfg.p, a.samples)) || !check(pd_config_set_seed(cfg.p, a.seed)) ||
      !check(pd_config_set_scale(cfg.p, a.scale))) {
    return api_error(PD_ERR_INVALID_ARGUMENT);
  }
  if (a.lambda || a.lambda_im) {
    pd_config_set_lambda(cfg.p, a.lambda.value_or(0.0), a.lambda_im.value_or(0.0));
  }
  if (a.quantum) pd_config_set_quantum(cfg.p, *a.quantum);
  if (!a.lattice.empty()) {
    if (backend != "torus") return usage_error("--lattice only applies to the torus backend");
    s = pd_config_set_lattice(cfg.p, a.lattice[0], a.lattice[1], a.lattice[2], a.lattice[3]);
    if (s != PD_OK) return api_error(s);
  }
  if (a.tol) {
    s = pd_config_set_tolerance(cfg.p, *a.tol);
    if (s != PD_OK) return api_error(s);
  }
  if (a.radius) pd_config_set_radius(cfg.p, *a.radius);

  Handle<pd_report, pd_report_free> report;
  s = pd_verify(cfg.p, a.suite.c_str(), &report.p);
  if (s != PD_OK) return api_error(s);
  return print_report(report.p);
}

struct TraceArgs {
  double colatitude = 0.0;
  std::int64_t quantum = 1;
  int steps = 360;
  double scale = 1.0;
  std::string output = "-";
};

int run_trace(const TraceArgs& a) {
  Handle<pd_trace, pd_trace_free> trace;
  pd_status s = pd_trace_equator(a.colatitude, a.quantum, a.steps, a.scale, &trace.p);
  if (s != PD_OK) return api_error(s);

  // With the CSV on stdout the summary goes to stderr to keep the CSV clean.
  const bool csv_to_stdout = a.output == "-";
  if (csv_to_stdout) {
    std::cout << pd_trace_csv(trace.p);
    std::cout.flush();
  } else {
    s = pd_trace_write_csv(trace.p, a.output.c_str());
    if (s != PD_OK) return api_error(s);
  }

  std::size_t undefined = 0;
  for (std::size_t i = 0; i < pd_trace_row_count(trace.p); ++i) {
    pd_trace_row row;
    pd_trace_get_row(trace.p, i, &row);
    if (!row.defined) ++undefined;
  }

  const double expected = static_cast<double>(a.quantum) * kPi;
  double total = NAN;
  const bool have_total = pd_trace_total_phase(trace.p, &total) == PD_OK;
  const double residual = have_total ? std::abs(total - expected) : NAN;

  char line[160];
  std::snprintf(line, sizeof line, "total_phase=%.17g expected=%.17g residual=%.3e\n", total,
                expected, residual);
  char extra[64];
  std::snprintf(extra, sizeof extra, "rows=%zu undefined=%zu\n", pd_trace_row_count(trace.p),
                undefined);
  std::ostream& out = csv_to_stdout ? std::cerr : std::cout;
  out << line << extra;
  out.flush();
  return have_total && residual < kTraceTolerance ? kExitPass : kExitFail;
}

int run_monoid(const std::string& sub, const std::string& file, std::uint64_t seed) {
  Handle<pd_monoid, pd_monoid_free> m;
  pd_status s = pd_monoid_load(file.c_str(), &m.p);
  if (s != PD_OK) return api_error(s);
  Handle<pd_report, pd_report_free> report;
  s = sub == "delta-check" ? pd_monoid_delta_check(m.p, seed, &report.p)
                           : pd_monoid_solve_triviality(m.p, seed, &report.p);
  if (s != PD_OK) return api_error(s);
  return print_report(report.p);
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Path-algebra deformations by a closed 2-form on the torus and sphere"};
  app.require_subcommand(1);
  app.set_version_flag("--version", pd_version());

  VerifyArgs va;
  auto* verify = app.add_subcommand("verify", "run an invariant suite");
  verify->add_option("suite", va.suite, "suite to run")
      ->required()
      ->check(CLI::IsMember(
          {"cocycle", "delta-squared", "associativity", "triviality-torus", "local-triviality"}));
  verify->add_option("--backend", va.backend, "torus or sphere (default: inferred, else sphere)")
      ->check(CLI::IsMember({"torus", "sphere"}));
  verify->add_option("--samples", va.samples, "sampled tuples per check")->capture_default_str();
  verify->add_option("--seed", va.seed, "RNG seed")->capture_default_str();
  verify->add_option("--lambda", va.lambda, "real part of lambda (torus)");
  verify->add_option("--lambda-im", va.lambda_im, "imaginary part of lambda (torus)");
  verify->add_option("--quantum", va.quantum, "quantum number n (sphere)");
  verify->add_option("--scale", va.scale, "form scale c")->capture_default_str();
  verify->add_option("--lattice", va.lattice, "torus basis b1x b1y b2x b2y")->expected(4);
  verify->add_option("--tol", va.tol, "override every tolerance");
  verify->add_option("--radius", va.radius, "ball radius for local-triviality");

  TraceArgs ta;
  auto* trace = app.add_subcommand("trace", "scenario traces");
  trace->require_subcommand(1);
  auto* equator = trace->add_subcommand("equator", "sphere equator phase trace");
  equator->add_option("--colatitude", ta.colatitude, "start colatitude in [0, pi/2]")
      ->capture_default_str();
  equator->add_option("--quantum", ta.quantum, "quantum number n")->capture_default_str();
  equator->add_option("--steps", ta.steps, "grid steps K >= 2")->capture_default_str();
  equator->add_option("--scale", ta.scale, "form scale c")->capture_default_str();
  equator->add_option("--output,-o", ta.output, "CSV path, - for stdout")->capture_default_str();

  std::string monoid_sub;
  std::string monoid_file;
  std::uint64_t monoid_seed = 1;
  auto* monoid = app.add_subcommand("monoid", "finite partial monoid checks");
  monoid->add_option("action", monoid_sub, "delta-check or solve-triviality")
      ->required()
      ->check(CLI::IsMember({"delta-check", "solve-triviality"}));
  monoid->add_option("fixture", monoid_file, "fixture JSON")->required();
  monoid->add_option("--seed", monoid_seed, "RNG seed")->capture_default_str();

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp& e) {
    return app.exit(e);
  } catch (const CLI::CallForAllHelp& e) {
    return app.exit(e);
  } catch (const CLI::CallForVersion& e) {
    return app.exit(e);
  } catch (const CLI::ParseError& e) {
    app.exit(e);
    return kExitUsage;
  }

  if (*verify) return run_verify(va);
  if (*trace) return run_trace(ta);
  if (*monoid) return run_monoid(monoid_sub, monoid_file, monoid_seed);
  return kExitUsage;
}
