// Acceptance run: one line per criterion, exit 0 only if all twelve pass.

#include <cmath>
#include <cstdio>
#include <functional>
#include <limits>
#include <string>
#include <vector>

#include "pathdeform/deformation.hpp"
#include "pathdeform/sampling.hpp"
#include "pathdeform/scenarios.hpp"
#include "pathdeform/verify.hpp"
#include "support/area_oracle.hpp"

using namespace pathdeform;

namespace {

struct Verdict {
  bool passed;
  double residual;
  std::string note;
};

struct Criterion {
  int id;
  const char* name;
  double tol;
  std::function<Verdict(double tol)> run;
};

std::string fixture(const char* name) { return std::string(PD_FIXTURE_DIR) + "/" + name; }

double check_residual(const Report& r, const std::string& name, bool& ok) {
  for (const auto& c : r.checks) {
    if (c.name == name) {
      ok = ok && c.passed;
      return c.residual;
    }
  }
  ok = false;
  return std::numeric_limits<double>::infinity();
}

std::vector<TraceRow> trace(double colat, std::int64_t n, int steps) {
  EquatorTraceConfig cfg;
  cfg.colatitude = colat;
  cfg.quantum = n;
  cfg.steps = steps;
  return equator_trace(cfg);
}

double affine_deviation(const std::vector<TraceRow>& rows) {
  double sx = 0, sy = 0, sxx = 0, sxy = 0;
  const double m = static_cast<double>(rows.size());
  for (const auto& r : rows) {
    sx += r.x;
    sy += r.phase;
    sxx += r.x * r.x;
    sxy += r.x * r.phase;
  }
  const double slope = (m * sxy - sx * sy) / (m * sxx - sx * sx);
  const double icpt = (sy - slope * sx) / m;
  double worst = 0.0;
  for (const auto& r : rows) worst = std::max(worst, std::abs(r.phase - (slope * r.x + icpt)));
  return worst;
}

RunConfig run_config(BackendKind b, std::size_t samples, std::uint64_t seed) {
  RunConfig cfg;
  cfg.backend = b;
  cfg.samples = samples;
  cfg.seed = seed;
  return cfg;
}

Verdict sphere_modulus(double tol) {
  const UnitSphere sphere;
  const auto form = sphere.area_form(1.0);
  bool ok = std::abs(form.modulus - 4.0 * kPi) < 1e-15;
  Rng rng(101);
  std::uniform_real_distribution<double> u(-50.0, 50.0);
  std::uniform_int_distribution<int> nd(-6, 6);
  double worst = 0.0;
  for (int i = 0; i < 1000; ++i) {
    const double w = u(rng);
    const std::int64_t n = nd(rng);
    const Weight ours = exp_weight(DeformationParams::quantized(form, n), canonicalize(w, form.modulus));
    const Weight expect = std::exp(Weight{0.0, 0.5 * static_cast<double>(n) * w});
    worst = std::max(worst, std::abs(ours - expect) / std::abs(expect));
  }
  ok = ok && worst < tol;
  return {ok, worst, "1000 values, n in [-6,6]"};
}

Verdict total_phase_loop(double tol) {
  double worst = 0.0;
  bool ok = true;
  for (double colat : {0.0, kPi / 6.0, kPi / 4.0, kPi / 3.0}) {
    for (std::int64_t n = -3; n <= 3; ++n) {
      const auto tp = total_phase(trace(colat, n, 720));
      if (!tp) {
        ok = false;
        continue;
      }
      worst = std::max(worst, std::abs(*tp - static_cast<double>(n) * kPi));
    }
  }
  return {ok && worst < tol, worst, "28 traces, K=720"};
}

Verdict pole_linearity(double tol) {
  double worst = 0.0;
  double min_dev = std::numeric_limits<double>::infinity();
  for (std::int64_t n = -3; n <= 3; ++n) {
    for (const auto& r : trace(0.0, n, 720))
      worst = std::max(worst, std::abs(r.phase - 0.5 * static_cast<double>(n) * r.x));
    if (n != 0) min_dev = std::min(min_dev, affine_deviation(trace(kPi / 4.0, n, 720)));
  }
  char note[96];
  std::snprintf(note, sizeof note, "pi/4 min affine deviation=%.3e (need >1e-3)", min_dev);
  return {worst < tol && min_dev > 1e-3, worst, note};
}

Verdict equator_sign_flip(double tol) {
  double worst = 0.0;
  bool ok = true;
  for (std::int64_t n = -3; n <= 3; ++n) {
    std::size_t undefined = 0;
    for (const auto& r : trace(kPi / 2.0, n, 720)) {
      if (!r.defined) {
        ++undefined;
        ok = ok && r.x == kPi;
        continue;
      }
      const double expect = (n % 2 != 0 && r.x > kPi) ? -1.0 : 1.0;
      worst = std::max(worst, std::abs(r.weight - expect));
    }
    ok = ok && undefined == 1;
  }
  return {ok && worst < tol, worst, "n in [-3,3], one undefined row at x=pi each"};
}

Verdict cocycle_identity(double tol) {
  bool ok = true;
  double worst = 0.0;
  for (auto b : {BackendKind::Sphere, BackendKind::Torus}) {
    auto cfg = run_config(b, 1000, 5);
    cfg.tol.cocycle = tol;
    worst = std::max(worst, check_residual(run_verify(VerifySuite::Cocycle, cfg), "omega_cocycle", ok));
  }
  return {ok, worst, "1000 triples per backend"};
}

Verdict delta_squared(double tol) {
  bool ok = true;
  double worst = 0.0;
  for (const char* f : {"quiver_a2.json", "matrix_units.json", "z3.json", "partial_undefined.json"}) {
    const auto r = run_monoid_delta_check(FiniteMonoid::from_file(fixture(f)), 6, 100);
    for (const char* c : {"delta_squared_arity1", "delta_squared_arity2"})
      worst = std::max(worst, check_residual(r, c, ok));
  }
  for (auto b : {BackendKind::Sphere, BackendKind::Torus}) {
    auto cfg = run_config(b, 1000, 6);
    cfg.cochains = 100;
    cfg.tol.delta_squared = tol;
    const auto r = run_verify(VerifySuite::DeltaSquared, cfg);
    for (const char* c : {"delta_squared_arity1", "delta_squared_arity2"})
      worst = std::max(worst, check_residual(r, c, ok));
  }
  return {ok && worst < tol, worst, "100 cochains, 4 fixtures + both backends"};
}

Verdict associativity(double tol) {
  bool ok = true;
  double worst = 0.0;
  for (auto b : {BackendKind::Sphere, BackendKind::Torus}) {
    auto cfg = run_config(b, 1000, 7);
    cfg.tol.associativity = tol;
    worst = std::max(worst, check_residual(run_verify(VerifySuite::Associativity, cfg),
                                           "star_associativity", ok));
  }
  return {ok, worst, "1000 triples per backend"};
}

Verdict straight_and_reflection(double tol) {
  const FlatTorus torus(Lattice({1.0, 0.0}, {0.35, 1.1}));
  const auto form = torus.area_form();
  Rng rng(8);
  std::uniform_real_distribution<double> u(-2.0, 2.0);
  double worst = 0.0;
  for (int i = 0; i < 1000; ++i) {
    const Vec2 p{u(rng), u(rng)}, q{u(rng), u(rng)};
    const double t = 0.1 + std::abs(u(rng));
    const auto a = torus.class_between_lifts(p, q);
    const auto b = torus.class_between_lifts(q, q + t * (q - p));
    worst = std::max(worst, std::abs(std::get<0>(omega_tilde(torus, form, a, b)).value));
  }
  std::vector<double> angles;
  for (int i = 0; i < 100; ++i) angles.push_back(kPi * (i + 0.5) / 100.0);
  const auto gamma = torus.class_between_lifts({0.2, 0.1}, {0.9, 0.6});
  for (const auto& r : torus_deflection(torus, {0.3, 0.4}, 1.0, gamma, angles, 1.2))
    worst = std::max(worst, std::abs(r.product - 1.0));
  return {worst < tol, worst, "1000 continuations, 100 angles"};
}

Verdict torus_triviality(double tol) {
  bool ok = true;
  auto cfg = run_config(BackendKind::Torus, 1000, 9);
  cfg.tol.torus_triviality = tol;
  const double r = check_residual(run_verify(VerifySuite::TrivialityTorus, cfg),
                                  "torus_global_triviality", ok);
  return {ok, r, "1000 pairs, lambda=0.3"};
}

Verdict sphere_local_triviality(double tol) {
  bool ok = true;
  auto cfg = run_config(BackendKind::Sphere, 1000, 10);
  cfg.radius = 1.0;
  cfg.tol.local_triviality = tol;
  const double r = check_residual(run_verify(VerifySuite::LocalTriviality, cfg), "local_triviality", ok);
  return {ok, r, "base (0,0,1), radius 1.0, 1000 pairs"};
}

Verdict unit_modulus(double tol) {
  const UnitSphere sphere;
  Rng rng(11);
  std::uniform_int_distribution<int> nd(-5, 5);
  std::uniform_real_distribution<double> cd(0.2, 3.0);
  double worst = 0.0;
  std::size_t count = 0;
  while (count < 10000) {
    const auto params = DeformationParams::quantized(sphere.area_form(cd(rng)), nd(rng));
    const auto p = random_point(sphere, rng), q = random_point(sphere, rng),
               r = random_point(sphere, rng);
    const auto w = weight_of_pair(sphere, params, SphereClass{p, q}, SphereClass{q, r});
    if (!is_value(w)) continue;
    worst = std::max(worst, std::abs(std::abs(std::get<0>(w)) - 1.0));
    ++count;
  }
  return {worst < tol, worst, "10000 weights"};
}

Verdict oracle_cross_check(double tol) {
  const UnitSphere sphere;
  const auto form = sphere.area_form();
  Rng rng(12);
  double worst = 0.0;
  for (int i = 0; i < 20; ++i) {
    const auto p = random_point(sphere, rng), q = random_point(sphere, rng),
               r = random_point(sphere, rng);
    const double theirs = oracle::signed_area({p.vec().x, p.vec().y, p.vec().z},
                                              {q.vec().x, q.vec().y, q.vec().z},
                                              {r.vec().x, r.vec().y, r.vec().z});
    worst = std::max(worst, std::abs(signed_spherical_area(p.vec(), q.vec(), r.vec()) - theirs));
    // and the reduced form integral, compared mod 4 pi
    const auto reduced = sphere.triangle_integral(form, p, q, r);
    if (!reduced) return {false, 0.0, "antipodal sample"};
    worst = std::max(worst, mod_distance(*reduced, canonicalize(theirs, form.modulus)));
  }
  return {worst < tol, worst, "20 random triangles"};
}

}  // namespace

int main() {
  const std::vector<Criterion> criteria = {
      {1, "sphere modulus 4pi, weight exp(i n w/2)", 1e-12, sphere_modulus},
      {2, "equator loop total phase = n pi", 1e-6, total_phase_loop},
      {3, "pole-start linearity", 1e-9, pole_linearity},
      {4, "equator-start sign flip", 1e-9, equator_sign_flip},
      {5, "omega~ cocycle identity", 1e-8, cocycle_identity},
      {6, "delta delta = 0", 1e-9, delta_squared},
      {7, "star-product associativity", 1e-9, associativity},
      {8, "torus straight continuation and reflection", 1e-12, straight_and_reflection},
      {9, "torus global triviality", 1e-9, torus_triviality},
      {10, "sphere local triviality", 1e-8, sphere_local_triviality},
      {11, "unit-modulus weights", 1e-9, unit_modulus},
      {12, "oracle cross-check of triangle area", 1e-3, oracle_cross_check},
  };
  int failed = 0;
  for (const auto& c : criteria) {
    Verdict o{false, 0.0, ""};
    try {
      o = c.run(c.tol);
    } catch (const std::exception& e) {
      o.note = std::string("exception: ") + e.what();
    }
    if (!o.passed) ++failed;
    std::printf("criterion %2d %s: %s residual=%.3e tol=%.0e (%s)\n", c.id, c.name,
                o.passed ? "PASS" : "FAIL", o.residual, c.tol, o.note.c_str());
  }
  std::printf("%zu/%zu criteria passed\n", criteria.size() - failed, criteria.size());
  return failed == 0 ? 0 : 1;
}
