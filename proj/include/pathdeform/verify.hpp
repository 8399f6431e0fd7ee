#pragma once

// Invariant suites run by the command line front end. Every suite draws from
// one generator seeded by the config and reports one CheckResult per check.

#include <complex>
#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "pathdeform/deformation.hpp"
#include "pathdeform/monoid.hpp"
#include "pathdeform/sampling.hpp"

namespace pathdeform {

enum class BackendKind { Torus, Sphere };

enum class VerifySuite { Cocycle, DeltaSquared, Associativity, TrivialityTorus, LocalTriviality };

struct Tolerances {
  double cocycle = 1e-8;         // additive omega~ identity mod mu
  double multiplicative = 1e-9;  // relative, multiplicative identities
  double delta_squared = 1e-9;
  double associativity = 1e-9;
  double torus_triviality = 1e-9;
  double local_triviality = 1e-8;
  double unit_modulus = 1e-9;
};

struct RunConfig {
  BackendKind backend = BackendKind::Sphere;
  Lattice lattice = Lattice::unit_square();
  double scale = 1.0;
  /// Continuous family parameter (torus). Defaults to 0.3 when unset.
  std::optional<std::complex<double>> lambda;
  /// Quantum number (sphere). Defaults to 1 when unset.
  std::optional<std::int64_t> quantum;
  std::size_t samples = 1000;
  std::size_t cochains = 100;
  std::uint64_t seed = 1;
  /// Radius for local-triviality; defaults to 1.0 on the sphere and 0.8 x
  /// the injectivity radius on the torus.
  std::optional<double> radius;
  Tolerances tol;
};

/// Throws std::invalid_argument when the family does not fit the backend, or the
/// sample count is zero.
void validate(const RunConfig& cfg);

DeformationParams deformation_params(const RunConfig& cfg);

struct CheckResult {
  std::string name;
  bool passed = false;
  double residual = 0.0;
  std::size_t samples = 0;
  std::size_t undefined = 0;
};

struct Report {
  std::string header;
  std::vector<CheckResult> checks;

  bool passed() const;
  /// Header line followed by one
  /// "name: PASS|FAIL residual=<e> samples=<n> undefined=<n>" line per check.
  std::string render() const;
};

std::string format_check(const CheckResult& c);

Report run_verify(VerifySuite suite, const RunConfig& cfg);

/// delta-check on a finite monoid: associativity, dd = 0 for random 1- and
/// 2-cochains over every composable tuple, and dg a cocycle.
Report run_monoid_delta_check(const FiniteMonoid& m, std::uint64_t seed, std::size_t cochains);

/// Solves the fixture's cocycle block if present; otherwise solves a random
/// coboundary f = d g0 and checks dg = f on the result.
Report run_monoid_triviality(const FiniteMonoid& m,
                             const std::optional<MultiplicativeCochain<FiniteElement>>& f,
                             std::uint64_t seed);

/// Random additive n-cochain on path classes (a smooth random function of the
/// endpoints and class tag), valued mod `modulus`.
AdditiveCochain<TorusClass> random_cochain(const FlatTorus& torus, std::size_t arity, Rng& rng);
AdditiveCochain<SphereClass> random_cochain(const UnitSphere& sphere, std::size_t arity,
                                            double modulus, Rng& rng);
/// Random table-valued additive n-cochain on a finite monoid.
AdditiveCochain<FiniteElement> random_cochain(const FiniteMonoid& m, std::size_t arity,
                                              double modulus, Rng& rng);

}  // namespace pathdeform
