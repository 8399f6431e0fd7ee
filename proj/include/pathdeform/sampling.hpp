#pragma once

// Seeded random points and composable chains of classes, for both backends.

#include <array>
#include <cmath>
#include <cstddef>
#include <cstdint>
#include <random>
#include <vector>

#include "pathdeform/geometry.hpp"

namespace pathdeform {

using Rng = std::mt19937_64;

inline constexpr std::int64_t kDefaultMaxWinding = 2;

inline TorusPoint random_point(const FlatTorus&, Rng& rng) {
  std::uniform_real_distribution<double> u(0.0, 1.0);
  const double a = u(rng);
  const double b = u(rng);
  return TorusPoint::from_lattice(a, b);
}

inline SpherePoint random_point(const UnitSphere&, Rng& rng) {
  std::normal_distribution<double> n(0.0, 1.0);
  for (;;) {
    const Vec3 v{n(rng), n(rng), n(rng)};
    if (norm(v) > 1e-6) return SpherePoint::from(v);
  }
}

inline std::optional<TorusClass> random_segment(const FlatTorus&, Rng& rng, const TorusPoint& p,
                                                const TorusPoint& q,
                                                std::int64_t max_winding = kDefaultMaxWinding) {
  std::uniform_int_distribution<std::int64_t> w(-max_winding, max_winding);
  const std::int64_t m = w(rng);
  const std::int64_t n = w(rng);
  return TorusClass{p, q, {m, n}};
}

inline std::optional<SphereClass> random_segment(const UnitSphere& sphere, Rng&,
                                                 const SpherePoint& p, const SpherePoint& q,
                                                 std::int64_t = 0) {
  return sphere.make_class(p, q);
}

template <class E, std::size_t N>
struct ChainSample {
  std::vector<std::array<E, N>> chains;
  /// Draws discarded because some product along the chain was undefined.
  std::size_t rejected = 0;
};

/// Draws `count` chains a1..aN with a_i.end == a_{i+1}.start exactly and every
/// contiguous product defined. Gives up after 100 * count + 100 draws.
template <std::size_t N, class B>
ChainSample<typename B::Element, N> sample_chains(const B& backend, Rng& rng, std::size_t count) {
  using E = typename B::Element;
  ChainSample<E, N> out;
  out.chains.reserve(count);
  const std::size_t max_draws = 100 * count + 100;
  for (std::size_t draw = 0; draw < max_draws && out.chains.size() < count; ++draw) {
    std::array<typename B::Point, N + 1> pts;
    for (auto& p : pts) p = random_point(backend, rng);
    std::array<E, N> chain;
    bool ok = true;
    for (std::size_t i = 0; i < N && ok; ++i) {
      auto seg = random_segment(backend, rng, pts[i], pts[i + 1]);
      if (!seg) {
        ok = false;
        break;
      }
      chain[i] = *seg;
    }
    // Every contiguous product must be defined.
    for (std::size_t i = 0; i < N && ok; ++i) {
      E acc = chain[i];
      for (std::size_t j = i + 1; j < N && ok; ++j) {
        auto next = backend.multiply(acc, chain[j]);
        if (!std::holds_alternative<E>(next)) {
          ok = false;
        } else {
          acc = std::get<E>(next);
        }
      }
    }
    if (ok) {
      out.chains.push_back(chain);
    } else {
      ++out.rejected;
    }
  }
  return out;
}

/// Uniform point in the geodesic ball of the given radius about base.
inline SpherePoint random_point_in_ball(const UnitSphere&, Rng& rng, const SpherePoint& base,
                                        double radius) {
  std::uniform_real_distribution<double> u(0.0, 1.0);
  const double z = 1.0 - u(rng) * (1.0 - std::cos(radius));
  const double phi = 2.0 * kPi * u(rng);
  const double s = std::sqrt(std::max(0.0, 1.0 - z * z));
  // Orthonormal frame (e1, e2, base).
  const Vec3& b = base.vec();
  const Vec3 helper = std::abs(b.z) < 0.9 ? Vec3{0.0, 0.0, 1.0} : Vec3{1.0, 0.0, 0.0};
  const Vec3 c = cross(b, helper);
  const Vec3 e1 = (1.0 / norm(c)) * c;
  const Vec3 e2 = cross(b, e1);
  return SpherePoint::from(z * b + (s * std::cos(phi)) * e1 + (s * std::sin(phi)) * e2);
}

/// Uniform point in the disc of the given radius about the canonical lift of
/// base, returned as a lifted planar point.
inline Vec2 random_lift_in_ball(const FlatTorus& torus, Rng& rng, const TorusPoint& base,
                                double radius) {
  std::uniform_real_distribution<double> u(0.0, 1.0);
  const double r = radius * std::sqrt(u(rng));
  const double phi = 2.0 * kPi * u(rng);
  return torus.cartesian(base) + Vec2{r * std::cos(phi), r * std::sin(phi)};
}

}  // namespace pathdeform
