#include "pathdeform/verify.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <memory>
#include <sstream>
#include <stdexcept>

namespace pathdeform {

namespace {

constexpr std::complex<double> kDefaultLambda{0.3, 0.0};
constexpr std::int64_t kDefaultQuantum = 1;
constexpr std::size_t kCochainTerms = 3;

const char* suite_name(VerifySuite s) {
  switch (s) {
    case VerifySuite::Cocycle:
      return "cocycle";
    case VerifySuite::DeltaSquared:
      return "delta-squared";
    case VerifySuite::Associativity:
      return "associativity";
    case VerifySuite::TrivialityTorus:
      return "triviality-torus";
    case VerifySuite::LocalTriviality:
      return "local-triviality";
  }
  return "?";
}

const char* backend_name(BackendKind b) { return b == BackendKind::Torus ? "torus" : "sphere"; }

double relative_error(Weight got, Weight want) {
  const double scale = std::max(std::abs(got), std::abs(want));
  return scale > 0.0 ? std::abs(got - want) / scale : 0.0;
}

CheckResult finish(std::string name, double residual, double tol, std::size_t samples,
                   std::size_t undefined) {
  return {std::move(name), residual <= tol && samples > 0, residual, samples, undefined};
}

// Sum over terms of w_j sin(<k_j, features(args)> + phase_j).
template <class E, class Features>
AdditiveCochain<E> smooth_cochain(std::size_t arity, std::size_t feature_count, double modulus,
                                  Features features, Rng& rng) {
  std::uniform_real_distribution<double> u(-1.0, 1.0);
  struct Term {
    double weight;
    double phase;
    std::vector<double> k;
  };
  auto terms = std::make_shared<std::vector<Term>>();
  for (std::size_t j = 0; j < kCochainTerms; ++j) {
    Term t{2.0 * u(rng), kPi * u(rng), {}};
    t.k.resize(arity * feature_count);
    for (auto& k : t.k) k = 1.5 * u(rng);
    terms->push_back(std::move(t));
  }
  return {arity, [terms, arity, feature_count, modulus,
                  features](std::span<const E> a) -> std::optional<ModReal> {
            if (a.size() != arity) return std::nullopt;
            double total = 0.0;
            for (const auto& t : *terms) {
              double arg = t.phase;
              for (std::size_t i = 0; i < arity; ++i) {
                const auto f = features(a[i]);
                for (std::size_t m = 0; m < feature_count; ++m) arg += t.k[i * feature_count + m] * f[m];
              }
              total += t.weight * std::sin(arg);
            }
            return canonicalize(total, modulus);
          }};
}

template <class E, std::size_t N, class Cochain>
std::pair<double, std::size_t> max_distance_to_zero(const Cochain& F,
                                                    const std::vector<std::array<E, N>>& tuples,
                                                    std::size_t& undefined) {
  double worst = 0.0;
  std::size_t evaluated = 0;
  for (const auto& t : tuples) {
    auto v = F(std::span<const E>(t));
    if (!v) {
      ++undefined;
      continue;
    }
    worst = std::max(worst, mod_distance(*v, ModReal{0.0, v->modulus}));
    ++evaluated;
  }
  return {worst, evaluated};
}

template <class B>
std::vector<CheckResult> cocycle_checks(const B& backend, const DeformationParams& params,
                                        const RunConfig& cfg, Rng& rng) {
  using E = typename B::Element;
  const auto triples = sample_chains<3>(backend, rng, cfg.samples);
  std::vector<CheckResult> out;

  std::size_t undefined = triples.rejected;
  const auto d_omega = coboundary_additive(omega_cochain(backend, params.form), backend);
  auto [worst, n] = max_distance_to_zero<E, 3>(d_omega, triples.chains, undefined);
  out.push_back(finish("omega_cocycle", worst, cfg.tol.cocycle, n, undefined));

  const auto f = weight_cochain(backend, params);
  const auto verdict = is_cocycle_multiplicative(f, backend, triples.chains, cfg.tol.multiplicative);
  out.push_back(finish("weight_cocycle", verdict.worst, cfg.tol.multiplicative, verdict.checked,
                       triples.rejected + verdict.skipped));

  if (params.is_quantized()) {
    double worst_mod = 0.0;
    std::size_t count = 0;
    std::size_t skipped = triples.rejected;
    for (const auto& [a, b, c] : triples.chains) {
      for (const auto& [x, y] : {std::pair{a, b}, std::pair{b, c}}) {
        auto w = weight_of_pair(backend, params, x, y);
        if (!is_value(w)) {
          ++skipped;
          continue;
        }
        worst_mod = std::max(worst_mod, std::abs(std::abs(std::get<0>(w)) - 1.0));
        ++count;
      }
    }
    out.push_back(finish("unit_modulus", worst_mod, cfg.tol.unit_modulus, count, skipped));
  }
  return out;
}

template <class B, class MakeCochain>
std::vector<CheckResult> delta_squared_checks(const B& backend, const RunConfig& cfg, Rng& rng,
                                              MakeCochain make_cochain) {
  using E = typename B::Element;
  const auto triples = sample_chains<3>(backend, rng, cfg.samples);
  const auto quads = sample_chains<4>(backend, rng, cfg.samples);
  std::vector<CheckResult> out;

  double worst1 = 0.0, worst2 = 0.0;
  std::size_t n1 = 0, n2 = 0;
  std::size_t undef1 = triples.rejected, undef2 = quads.rejected;
  for (std::size_t k = 0; k < cfg.cochains; ++k) {
    const auto F1 = make_cochain(1);
    const auto dd1 = coboundary_additive(coboundary_additive(F1, backend), backend);
    auto [w1, c1] = max_distance_to_zero<E, 3>(dd1, triples.chains, undef1);
    worst1 = std::max(worst1, w1);
    n1 += c1;

    const auto F2 = make_cochain(2);
    const auto dd2 = coboundary_additive(coboundary_additive(F2, backend), backend);
    auto [w2, c2] = max_distance_to_zero<E, 4>(dd2, quads.chains, undef2);
    worst2 = std::max(worst2, w2);
    n2 += c2;
  }
  out.push_back(finish("delta_squared_arity1", worst1, cfg.tol.delta_squared, n1, undef1));
  out.push_back(finish("delta_squared_arity2", worst2, cfg.tol.delta_squared, n2, undef2));
  return out;
}

std::complex<double> random_coefficient(Rng& rng) {
  std::uniform_real_distribution<double> u(-1.0, 1.0);
  return {u(rng), u(rng)};
}

template <class E>
double scaled_coefficient_diff(const FormalSum<E>& a, const FormalSum<E>& b) {
  double worst = 0.0;
  auto visit = [&](const FormalSum<E>& x, const FormalSum<E>& y) {
    for (const auto& [e, c] : x.terms()) {
      const auto d = y.coefficient(e);
      const double scale = std::max({1.0, std::abs(c), std::abs(d)});
      worst = std::max(worst, std::abs(c - d) / scale);
    }
  };
  visit(a, b);
  visit(b, a);
  return worst;
}

template <class B>
CheckResult associativity_check(const B& backend, const DeformationParams& params,
                                const RunConfig& cfg, Rng& rng) {
  using E = typename B::Element;
  const auto triples = sample_chains<3>(backend, rng, cfg.samples);
  double worst = 0.0;
  std::size_t count = 0;
  std::size_t undefined = triples.rejected;
  for (const auto& [a, b, c] : triples.chains) {
    // Second terms share junctions with the first so that mixed products occur.
    const auto p2 = random_point(backend, rng);
    const auto r2 = random_point(backend, rng);
    auto a2 = random_segment(backend, rng, p2, a.end);
    auto b2 = random_segment(backend, rng, b.start, r2);
    auto c2 = random_segment(backend, rng, r2, c.end);
    FormalSum<E> x{{a, random_coefficient(rng)}};
    FormalSum<E> y{{b, random_coefficient(rng)}};
    FormalSum<E> z{{c, random_coefficient(rng)}};
    if (a2) x.add(*a2, random_coefficient(rng));
    if (b2) y.add(*b2, random_coefficient(rng));
    if (c2) z.add(*c2, random_coefficient(rng));

    auto xy = star_product(backend, params, x, y);
    auto yz = star_product(backend, params, y, z);
    if (!xy.defined() || !yz.defined()) {
      ++undefined;
      continue;
    }
    auto left = star_product(backend, params, xy.sum, z);
    auto right = star_product(backend, params, x, yz.sum);
    if (!left.defined() || !right.defined()) {
      ++undefined;
      continue;
    }
    worst = std::max(worst, scaled_coefficient_diff(left.sum, right.sum));
    ++count;
  }
  return finish("star_associativity", worst, cfg.tol.associativity, count, undefined);
}

CheckResult torus_triviality_check(const FlatTorus& torus, const DeformationParams& params,
                                   const RunConfig& cfg, Rng& rng) {
  const auto pairs = sample_chains<2>(torus, rng, cfg.samples);
  const auto g = global_trivializer_torus(torus, params);
  double worst = 0.0;
  std::size_t count = 0;
  std::size_t undefined = pairs.rejected;
  for (const auto& [a, b] : pairs.chains) {
    auto f = weight_of_pair(torus, params, a, b);
    auto dg = g.coboundary(a, b);
    if (!is_value(f) || !is_value(dg)) {
      ++undefined;
      continue;
    }
    worst = std::max(worst, relative_error(std::get<0>(dg), std::get<0>(f)));
    ++count;
  }
  return finish("torus_global_triviality", worst, cfg.tol.torus_triviality, count, undefined);
}

template <class B, class Draw>
CheckResult local_triviality_check(const B& backend, const DeformationParams& params,
                                   const Trivializer<B>& tr, const RunConfig& cfg, Draw draw) {
  const auto dg = coboundary_multiplicative(tr.g, backend);
  double worst = 0.0;
  std::size_t count = 0;
  std::size_t undefined = 0;
  for (std::size_t i = 0; i < cfg.samples; ++i) {
    const auto [a, b] = draw();
    auto f = weight_of_pair(backend, params, a, b);
    auto d = dg({a, b});
    if (!is_value(f) || !d) {
      ++undefined;
      continue;
    }
    worst = std::max(worst, relative_error(*d, std::get<0>(f)));
    ++count;
  }
  return finish("local_triviality", worst, cfg.tol.local_triviality, count, undefined);
}

std::string format_double_short(double v) {
  char buf[40];
  std::snprintf(buf, sizeof buf, "%.17g", v);
  return buf;
}

std::string header_for(const char* suite, const RunConfig& cfg) {
  std::ostringstream os;
  os << "# suite=" << suite << " backend=" << backend_name(cfg.backend) << " seed=" << cfg.seed
     << " samples=" << cfg.samples << " scale=" << format_double_short(cfg.scale);
  return os.str();
}

}  // namespace

void validate(const RunConfig& cfg) {
  if (cfg.samples == 0) throw std::invalid_argument("--samples must be positive");
  if (cfg.cochains == 0) throw std::invalid_argument("cochain count must be positive");
  if (!std::isfinite(cfg.scale)) throw std::invalid_argument("--scale must be finite");
  if (cfg.backend == BackendKind::Torus) {
    if (cfg.quantum) {
      throw std::invalid_argument("--quantum needs a positive modulus; the torus has modulus 0");
    }
  } else {
    if (cfg.lambda) {
      throw std::invalid_argument("--lambda needs modulus 0; the sphere form is quantized");
    }
    if (cfg.scale == 0.0) throw std::invalid_argument("--scale must be nonzero on the sphere");
  }
  if (cfg.radius && !(*cfg.radius > 0.0)) throw std::invalid_argument("--radius must be positive");
}

DeformationParams deformation_params(const RunConfig& cfg) {
  if (cfg.backend == BackendKind::Torus) {
    return DeformationParams::continuous(FlatTorus(cfg.lattice).area_form(cfg.scale),
                                         cfg.lambda.value_or(kDefaultLambda));
  }
  return DeformationParams::quantized(UnitSphere().area_form(cfg.scale),
                                      cfg.quantum.value_or(kDefaultQuantum));
}

bool Report::passed() const {
  return std::all_of(checks.begin(), checks.end(), [](const CheckResult& c) { return c.passed; });
}

std::string format_check(const CheckResult& c) {
  char residual[40];
  std::snprintf(residual, sizeof residual, "%.3e", c.residual);
  std::ostringstream os;
  os << c.name << ": " << (c.passed ? "PASS" : "FAIL") << " residual=" << residual
     << " samples=" << c.samples << " undefined=" << c.undefined;
  return os.str();
}

std::string Report::render() const {
  std::ostringstream os;
  if (!header.empty()) os << header << '\n';
  for (const auto& c : checks) os << format_check(c) << '\n';
  return os.str();
}

AdditiveCochain<TorusClass> random_cochain(const FlatTorus&, std::size_t arity, Rng& rng) {
  auto features = [](const TorusClass& c) {
    return std::array<double, 6>{c.start.u(), c.start.v(), c.end.u(), c.end.v(),
                                 static_cast<double>(c.winding.m),
                                 static_cast<double>(c.winding.n)};
  };
  return smooth_cochain<TorusClass>(arity, 6, 0.0, features, rng);
}

AdditiveCochain<SphereClass> random_cochain(const UnitSphere&, std::size_t arity, double modulus,
                                            Rng& rng) {
  auto features = [](const SphereClass& c) {
    const auto& s = c.start.vec();
    const auto& e = c.end.vec();
    return std::array<double, 6>{s.x, s.y, s.z, e.x, e.y, e.z};
  };
  return smooth_cochain<SphereClass>(arity, 6, modulus, features, rng);
}

AdditiveCochain<FiniteElement> random_cochain(const FiniteMonoid& m, std::size_t arity,
                                              double modulus, Rng& rng) {
  std::size_t cells = 1;
  for (std::size_t i = 0; i < arity; ++i) cells *= m.size();
  std::uniform_real_distribution<double> u(-5.0, 5.0);
  auto values = std::make_shared<std::vector<double>>(cells);
  for (auto& v : *values) v = u(rng);
  const std::size_t n = m.size();
  return {arity, [values, arity, n, modulus](std::span<const FiniteElement> a)
                     -> std::optional<ModReal> {
            if (a.size() != arity) return std::nullopt;
            std::size_t idx = 0;
            for (const auto& e : a) idx = idx * n + e.id;
            return canonicalize((*values)[idx], modulus);
          }};
}

Report run_verify(VerifySuite suite, const RunConfig& cfg) {
  validate(cfg);
  if (suite == VerifySuite::TrivialityTorus && cfg.backend != BackendKind::Torus) {
    throw std::invalid_argument("triviality-torus runs on the torus backend");
  }
  Report report;
  report.header = header_for(suite_name(suite), cfg);
  Rng rng(cfg.seed);
  const auto params = deformation_params(cfg);

  if (cfg.backend == BackendKind::Torus) {
    const FlatTorus torus(cfg.lattice);
    switch (suite) {
      case VerifySuite::Cocycle:
        report.checks = cocycle_checks(torus, params, cfg, rng);
        break;
      case VerifySuite::DeltaSquared:
        report.checks = delta_squared_checks(
            torus, cfg, rng, [&](std::size_t arity) { return random_cochain(torus, arity, rng); });
        break;
      case VerifySuite::Associativity:
        report.checks = {associativity_check(torus, params, cfg, rng)};
        break;
      case VerifySuite::TrivialityTorus:
        report.checks = {torus_triviality_check(torus, params, cfg, rng)};
        break;
      case VerifySuite::LocalTriviality: {
        const auto base = TorusPoint::from_lattice(0.0, 0.0);
        const double radius = cfg.radius.value_or(0.8 * torus.injectivity_radius(base));
        const auto tr = local_trivializer(torus, params, base, radius);
        report.checks = {local_triviality_check(torus, params, tr, cfg, [&] {
          const Vec2 p = random_lift_in_ball(torus, rng, base, radius);
          const Vec2 q = random_lift_in_ball(torus, rng, base, radius);
          const Vec2 r = random_lift_in_ball(torus, rng, base, radius);
          return std::pair{torus.class_between_lifts(p, q), torus.class_between_lifts(q, r)};
        })};
        break;
      }
    }
  } else {
    const UnitSphere sphere;
    switch (suite) {
      case VerifySuite::Cocycle:
        report.checks = cocycle_checks(sphere, params, cfg, rng);
        break;
      case VerifySuite::DeltaSquared:
        report.checks = delta_squared_checks(sphere, cfg, rng, [&](std::size_t arity) {
          return random_cochain(sphere, arity, params.form.modulus, rng);
        });
        break;
      case VerifySuite::Associativity:
        report.checks = {associativity_check(sphere, params, cfg, rng)};
        break;
      case VerifySuite::TrivialityTorus:
        break;  // rejected above
      case VerifySuite::LocalTriviality: {
        const auto base = SpherePoint::from({0.0, 0.0, 1.0});
        const double radius = cfg.radius.value_or(1.0);
        const auto tr = local_trivializer(sphere, params, base, radius);
        report.checks = {local_triviality_check(sphere, params, tr, cfg, [&] {
          const auto p = random_point_in_ball(sphere, rng, base, radius);
          const auto q = random_point_in_ball(sphere, rng, base, radius);
          const auto r = random_point_in_ball(sphere, rng, base, radius);
          return std::pair{SphereClass{p, q}, SphereClass{q, r}};
        })};
        break;
      }
    }
  }
  return report;
}

// ---------------------------------------------------------------------------
// Finite monoids

namespace {

std::vector<std::array<FiniteElement, 4>> composable_quadruples(const FiniteMonoid& m) {
  std::vector<std::array<FiniteElement, 4>> out;
  for (const auto& [a, b, c] : m.composable_triples()) {
    const auto bc = std::get<0>(m.multiply(b, c));
    const auto abc = std::get<0>(m.multiply(std::get<0>(m.multiply(a, b)), c));
    for (const auto& d : m.elements()) {
      if (is_value(m.multiply(c, d)) && is_value(m.multiply(bc, d)) &&
          is_value(m.multiply(abc, d))) {
        out.push_back({a, b, c, d});
      }
    }
  }
  return out;
}

MultiplicativeCochain<FiniteElement> random_positive_cochain(const FiniteMonoid& m, Rng& rng) {
  std::uniform_real_distribution<double> u(-1.0, 1.0);
  auto values = std::make_shared<std::vector<double>>(m.size());
  for (auto& v : *values) v = std::exp(u(rng));
  return {1, [values](std::span<const FiniteElement> a) -> std::optional<Weight> {
            if (a.size() != 1) return std::nullopt;
            return Weight{(*values)[a[0].id], 0.0};
          }};
}

}  // namespace

Report run_monoid_delta_check(const FiniteMonoid& m, std::uint64_t seed, std::size_t cochains) {
  Report report;
  report.header = "# monoid delta-check elements=" + std::to_string(m.size()) +
                  " seed=" + std::to_string(seed);
  Rng rng(seed);

  const auto violations = m.associativity_violations();
  report.checks.push_back({"associativity", violations.empty(),
                           static_cast<double>(violations.size()), m.size() * m.size() * m.size(),
                           0});

  const auto triples = m.composable_triples();
  const auto quads = composable_quadruples(m);
  double worst1 = 0.0, worst2 = 0.0;
  std::size_t n1 = 0, n2 = 0, undef1 = 0, undef2 = 0;
  for (std::size_t k = 0; k < cochains; ++k) {
    const double modulus = (k % 2 == 0) ? 0.0 : 2.0 * kPi;
    const auto F1 = random_cochain(m, 1, modulus, rng);
    const auto dd1 = coboundary_additive(coboundary_additive(F1, m), m);
    auto [w1, c1] = max_distance_to_zero<FiniteElement, 3>(dd1, triples, undef1);
    worst1 = std::max(worst1, w1);
    n1 += c1;

    const auto F2 = random_cochain(m, 2, modulus, rng);
    const auto dd2 = coboundary_additive(coboundary_additive(F2, m), m);
    auto [w2, c2] = max_distance_to_zero<FiniteElement, 4>(dd2, quads, undef2);
    worst2 = std::max(worst2, w2);
    n2 += c2;
  }
  // A monoid without composable tuples satisfies dd = 0 vacuously.
  report.checks.push_back({"delta_squared_arity1", worst1 <= 1e-9, worst1, n1, undef1});
  report.checks.push_back({"delta_squared_arity2", worst2 <= 1e-9, worst2, n2, undef2});

  const auto g = random_positive_cochain(m, rng);
  const auto verdict =
      is_cocycle_multiplicative(coboundary_multiplicative(g, m), m, triples, 1e-12);
  report.checks.push_back(
      {"coboundary_is_cocycle", verdict.holds, verdict.worst, verdict.checked, verdict.skipped});
  return report;
}

Report run_monoid_triviality(const FiniteMonoid& m,
                             const std::optional<MultiplicativeCochain<FiniteElement>>& f,
                             std::uint64_t seed) {
  Report report;
  report.header = "# monoid solve-triviality elements=" + std::to_string(m.size()) +
                  " seed=" + std::to_string(seed);
  Rng rng(seed);
  const auto triples = m.composable_triples();

  if (f) {
    const auto verdict = is_cocycle_multiplicative(*f, m, triples);
    report.checks.push_back(
        {"cocycle_condition", verdict.holds, verdict.worst, verdict.checked, verdict.skipped});
    const auto sol = solve_triviality(*f, m);
    report.checks.push_back({"trivial", sol.trivial, sol.residual, sol.equations, 0});
    return report;
  }

  const auto g0 = random_positive_cochain(m, rng);
  const auto f0 = coboundary_multiplicative(g0, m);
  const auto sol = solve_triviality(f0, m);
  auto values = std::make_shared<std::vector<double>>(sol.g);
  const MultiplicativeCochain<FiniteElement> g{
      1, [values](std::span<const FiniteElement> a) -> std::optional<Weight> {
        return Weight{(*values)[a[0].id], 0.0};
      }};
  const auto dg = coboundary_multiplicative(g, m);
  double worst = 0.0;
  std::size_t count = 0;
  for (const auto& [a, b] : m.composable_pairs()) {
    auto want = f0({a, b});
    auto got = dg({a, b});
    if (!want || !got) continue;
    worst = std::max(worst, relative_error(*got, *want));
    ++count;
  }
  report.checks.push_back({"trivial", sol.trivial, sol.residual, sol.equations, 0});
  report.checks.push_back({"triviality_round_trip", worst <= 1e-9, worst, count, 0});
  return report;
}

}  // namespace pathdeform
