#include "pathdeform/deformation.hpp"

#include <cmath>
#include <stdexcept>

namespace pathdeform {

DeformationParams DeformationParams::continuous(TwoForm form, std::complex<double> lambda) {
  if (form.modulus != 0.0) {
    throw std::invalid_argument("a continuous family needs a form of modulus 0");
  }
  return {Continuous{lambda}, form};
}

DeformationParams DeformationParams::quantized(TwoForm form, std::int64_t n) {
  if (!(form.modulus > 0.0)) {
    throw std::invalid_argument("a quantized family needs a form of positive modulus");
  }
  return {Quantized{n}, form};
}

Weight exp_weight(const DeformationParams& params, const ModReal& x) {
  if (x.modulus != params.form.modulus) {
    throw std::invalid_argument("value modulus does not match the form");
  }
  return exp_weight(params.mode, x);
}

Outcome<ModReal> omega_tilde(const FlatTorus& torus, const TwoForm& form, const TorusClass& a,
                             const TorusClass& b) {
  if (!torus.same_point(a.end, b.start)) return Zero{};
  const Vec2 p = torus.cartesian(a.start);
  const Vec2 q = p + torus.displacement(a);
  const Vec2 r = q + torus.displacement(b);
  return torus.triangle_integral(form, p, q, r);
}

Outcome<ModReal> omega_tilde(const UnitSphere& sphere, const TwoForm& form, const SphereClass& a,
                             const SphereClass& b) {
  if (!sphere.same_point(a.end, b.start)) return Zero{};
  if (sphere.antipodal(a.start, a.end) || sphere.antipodal(b.start, b.end) ||
      sphere.antipodal(a.start, b.end)) {
    return Undefined{};
  }
  auto area = sphere.triangle_integral(form, a.start, a.end, b.end);
  if (!area) return Undefined{};
  return *area;
}

// ---------------------------------------------------------------------------
// Local trivializers

Trivializer<UnitSphere> local_trivializer(const UnitSphere& sphere, const DeformationParams& params,
                                          const SpherePoint& base, double radius) {
  const double limit = std::min(sphere.injectivity_radius(base), kPi / 2.0);
  if (!(radius > 0.0) || radius >= limit) {
    throw std::invalid_argument("local trivializer radius must lie in (0, pi/2)");
  }
  auto g = [sphere, params, base, radius](std::span<const SphereClass> a) -> std::optional<Weight> {
    if (a.size() != 1) return std::nullopt;
    const auto& c = a[0];
    if (UnitSphere::angle(base, c.start) > radius || UnitSphere::angle(base, c.end) > radius) {
      return std::nullopt;
    }
    auto area = sphere.triangle_integral(params.form, base, c.start, c.end);
    if (!area) return std::nullopt;
    return exp_weight(params, *area);
  };
  return {base, radius, {1, std::move(g)}};
}

Trivializer<FlatTorus> local_trivializer(const FlatTorus& torus, const DeformationParams& params,
                                         const TorusPoint& base, double radius) {
  if (!(radius > 0.0) || radius >= torus.injectivity_radius(base)) {
    throw std::invalid_argument("local trivializer radius must lie below the injectivity radius");
  }
  auto g = [torus, params, base, radius](std::span<const TorusClass> a) -> std::optional<Weight> {
    if (a.size() != 1) return std::nullopt;
    const auto& c = a[0];
    const Vec2 b = torus.cartesian(base);
    // Nearest lift of the start to the lifted base; unique inside the ball.
    const Vec2 offset = torus.lattice().to_lattice(torus.cartesian(c.start) - b);
    const Vec2 p = b + torus.lattice().to_cartesian(
                           {offset.x - std::round(offset.x), offset.y - std::round(offset.y)});
    const Vec2 q = p + torus.displacement(c);
    if (norm(p - b) > radius || norm(q - b) > radius) return std::nullopt;
    return exp_weight(params, torus.triangle_integral(params.form, b, p, q));
  };
  return {base, radius, {1, std::move(g)}};
}

// ---------------------------------------------------------------------------
// Global torus trivializer

CoverTrivializer::CoverTrivializer(FlatTorus torus, DeformationParams params, Vec2 origin)
    : torus_(std::move(torus)), params_(params), origin_(origin) {}

Weight CoverTrivializer::on_lift(Vec2 from, Vec2 to) const {
  return exp_weight(params_, torus_.triangle_integral(params_.form, origin_, from, to));
}

Weight CoverTrivializer::operator()(const TorusClass& c) const {
  const Vec2 from = torus_.cartesian(c.start);
  return on_lift(from, from + torus_.displacement(c));
}

Outcome<Weight> CoverTrivializer::coboundary(const TorusClass& a, const TorusClass& b) const {
  if (!torus_.same_point(a.end, b.start)) return Zero{};
  const Vec2 p = torus_.cartesian(a.start);
  const Vec2 q = p + torus_.displacement(a);
  const Vec2 r = q + torus_.displacement(b);
  return on_lift(p, q) * on_lift(q, r) / on_lift(p, r);
}

MultiplicativeCochain<TorusClass> CoverTrivializer::as_cochain() const {
  return {1, [self = *this](std::span<const TorusClass> a) -> std::optional<Weight> {
            if (a.size() != 1) return std::nullopt;
            return self(a[0]);
          }};
}

CoverTrivializer global_trivializer_torus(const FlatTorus& torus, const DeformationParams& params) {
  if (params.is_quantized() || params.form.modulus != 0.0) {
    throw std::invalid_argument("the torus trivializer needs a continuous family (modulus 0)");
  }
  return CoverTrivializer(torus, params);
}

// ---------------------------------------------------------------------------
// Memory function

Outcome<ModReal> swept_integral(const UnitSphere& sphere, const TwoForm& form,
                                const SphereClass& gamma, const SphereGeodesic& gp, double x) {
  if (!(x >= 0.0) || x > gp.length) {
    throw std::invalid_argument("arclength outside the traversed geodesic");
  }
  if (!sphere.same_point(gamma.end, gp.start)) return Zero{};
  const SpherePoint& p = gamma.start;
  if (sphere.antipodal(p, gamma.end)) return Undefined{};
  const SpherePoint end = gp.point_at(x);
  if (sphere.antipodal(p, end)) return Undefined{};

  // Fan from p over sub-arcs no longer than pi/2; the fan diagonals must avoid
  // the antipode of p, so refine until they do.
  auto pieces = static_cast<int>(std::ceil(x / (kPi / 2.0)));
  pieces = std::max(pieces, 1);
  auto fan_ok = [&](int m) {
    for (int j = 1; j < m; ++j) {
      if (sphere.antipodal(p, gp.point_at(x * j / m))) return false;
    }
    return true;
  };
  while (!fan_ok(pieces)) ++pieces;

  double area = 0.0;
  Vec3 prev = gamma.end.vec();
  for (int j = 1; j <= pieces; ++j) {
    const Vec3 next = (j == pieces ? end : gp.point_at(x * j / pieces)).vec();
    area += signed_spherical_area(p.vec(), prev, next);
    prev = next;
  }
  return canonicalize(form.scale * area, form.modulus);
}

Outcome<Weight> memory_function(const UnitSphere& sphere, const DeformationParams& params,
                                const SphereClass& gamma, const SphereGeodesic& gp, double x) {
  auto swept = swept_integral(sphere, params.form, gamma, gp, x);
  if (is_zero(swept)) return Zero{};
  if (is_undefined(swept)) return Undefined{};
  return exp_weight(params, std::get<0>(swept));
}

Outcome<Weight> memory_function(const FlatTorus& torus, const DeformationParams& params,
                                const TorusClass& gamma, const TorusGeodesic& gp, double x) {
  if (!(x >= 0.0) || x > gp.length) {
    throw std::invalid_argument("arclength outside the traversed geodesic");
  }
  // Straight segments are the shortest in their class, so the swept region is
  // the geodesic triangle itself.
  const TorusClass prefix = torus.class_between_lifts(gp.start, gp.point_at(x));
  return weight_of_pair(torus, params, gamma, prefix);
}

}  // namespace pathdeform
