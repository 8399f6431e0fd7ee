#pragma once

// The geometric 2-cocycle omega~ on homotopy classes of paths, its weight
// families, the deformed product and the trivializing 1-cochains.

#include <complex>
#include <cstdint>
#include <limits>
#include <optional>

#include "pathdeform/coeffs.hpp"
#include "pathdeform/geometry.hpp"
#include "pathdeform/monoid.hpp"

namespace pathdeform {

template <class B>
concept Backend = PartialMonoid<B> && requires(const B& b, const typename B::Element& c,
                                                const typename B::Point& p) {
  { b.same_point(p, p) } -> std::same_as<bool>;
  { b.shortest_geodesic(c) };
  { b.injectivity_radius(p) } -> std::same_as<double>;
  { b.area_form(1.0) } -> std::same_as<TwoForm>;
};

struct DeformationParams {
  WeightMode mode;
  TwoForm form;

  /// exp(lambda omega~); requires form.modulus == 0.
  static DeformationParams continuous(TwoForm form, std::complex<double> lambda);
  /// exp(2 pi i n omega~ / mu); requires form.modulus > 0.
  static DeformationParams quantized(TwoForm form, std::int64_t n);

  bool is_quantized() const { return std::holds_alternative<Quantized>(mode); }
};

Weight exp_weight(const DeformationParams& params, const ModReal& x);

/// Integral of the form over the geodesic triangle that closes a then b with the
/// shortest geodesic of ab, oriented p -> q -> r. Zero when a.end != b.start.
Outcome<ModReal> omega_tilde(const FlatTorus& torus, const TwoForm& form, const TorusClass& a,
                             const TorusClass& b);
Outcome<ModReal> omega_tilde(const UnitSphere& sphere, const TwoForm& form, const SphereClass& a,
                             const SphereClass& b);

/// omega~ of two paths. Only their homotopy classes are consumed.
template <Backend B>
Outcome<ModReal> omega_tilde(const B& backend, const TwoForm& form,
                             const PiecewisePath<typename B::Element>& a,
                             const PiecewisePath<typename B::Element>& b) {
  auto ca = backend.reduce_to_class(a);
  auto cb = backend.reduce_to_class(b);
  if (!is_value(ca) || !is_value(cb)) return Undefined{};
  return omega_tilde(backend, form, std::get<0>(ca), std::get<0>(cb));
}

template <Backend B>
Outcome<Weight> weight_of_pair(const B& backend, const DeformationParams& params,
                               const typename B::Element& a, const typename B::Element& b) {
  auto w = omega_tilde(backend, params.form, a, b);
  if (is_zero(w)) return Zero{};
  if (is_undefined(w)) return Undefined{};
  return exp_weight(params, std::get<0>(w));
}

/// omega~ as an additive cochain: 0 on non-composable pairs, undefined where
/// a shortest geodesic is not unique.
template <Backend B>
AdditiveCochain<typename B::Element> omega_cochain(B backend, TwoForm form) {
  using E = typename B::Element;
  return {2, [backend = std::move(backend), form](std::span<const E> a) -> std::optional<ModReal> {
            if (a.size() != 2) return std::nullopt;
            auto w = omega_tilde(backend, form, a[0], a[1]);
            if (is_undefined(w)) return std::nullopt;
            if (is_zero(w)) return ModReal{0.0, form.modulus};
            return std::get<0>(w);
          }};
}

template <Backend B>
MultiplicativeCochain<typename B::Element> weight_cochain(B backend, DeformationParams params) {
  using E = typename B::Element;
  return {2, [backend = std::move(backend), params](std::span<const E> a) -> std::optional<Weight> {
            if (a.size() != 2) return std::nullopt;
            auto w = weight_of_pair(backend, params, a[0], a[1]);
            if (is_undefined(w)) return std::nullopt;
            if (is_zero(w)) return Weight{1.0, 0.0};
            return std::get<0>(w);
          }};
}

template <Backend B>
ProductResult<typename B::Element> star_product(const B& backend, const DeformationParams& params,
                                                const FormalSum<typename B::Element>& x,
                                                const FormalSum<typename B::Element>& y) {
  return deformed_product(x, y, weight_cochain(backend, params), backend);
}

/// A 1-cochain g with dg = f on a stated region; radius is infinite when the
/// region is the whole manifold.
template <Backend B>
struct Trivializer {
  typename B::Point base;
  double radius = std::numeric_limits<double>::infinity();
  MultiplicativeCochain<typename B::Element> g;
};

/// g(gamma) = exp_weight(omega over the cone from base to gamma). Throws
/// std::invalid_argument unless 0 < radius < injectivity radius (and < pi/2 on
/// the sphere, keeping every cone triangle in one hemisphere).
Trivializer<UnitSphere> local_trivializer(const UnitSphere& sphere, const DeformationParams& params,
                                          const SpherePoint& base, double radius);
Trivializer<FlatTorus> local_trivializer(const FlatTorus& torus, const DeformationParams& params,
                                         const TorusPoint& base, double radius);

/// Global trivializer for the flat torus, built on the universal cover:
/// g(segment) = exp(lambda c * area(O, from, to)) for a lifted segment.
class CoverTrivializer {
 public:
  CoverTrivializer(FlatTorus torus, DeformationParams params, Vec2 origin = {});

  /// g of the straight segment between two lifted points.
  Weight on_lift(Vec2 from, Vec2 to) const;
  /// g of a class, lifted from the canonical lift of its start.
  Weight operator()(const TorusClass& c) const;
  /// g(a~) g(b~) / g(a~b~) with b~ lifted to start where a~ ends.
  Outcome<Weight> coboundary(const TorusClass& a, const TorusClass& b) const;
  /// g restricted to classes (canonical lifts) as an ordinary 1-cochain.
  MultiplicativeCochain<TorusClass> as_cochain() const;

  const Vec2& origin() const { return origin_; }

 private:
  FlatTorus torus_;
  DeformationParams params_;
  Vec2 origin_;
};

/// Throws std::invalid_argument unless params are continuous (modulus 0).
CoverTrivializer global_trivializer_torus(const FlatTorus& torus, const DeformationParams& params);

/// Integral of the form over the region bounded by the shortest geodesic of
/// gamma, the first x units of the traversed geodesic gp (which may run past
/// the cut point) and the shortest geodesic closing back to gamma.start.
/// Undefined when gamma.start is antipodal to gp(x) or to gamma.end.
Outcome<ModReal> swept_integral(const UnitSphere& sphere, const TwoForm& form,
                                const SphereClass& gamma, const SphereGeodesic& gp, double x);

/// Weight attached to gamma followed by the first x units of gp.
/// Requires 0 <= x <= gp.length (std::invalid_argument otherwise); Zero when
/// gp does not start at gamma.end.
Outcome<Weight> memory_function(const UnitSphere& sphere, const DeformationParams& params,
                                const SphereClass& gamma, const SphereGeodesic& gp, double x);
Outcome<Weight> memory_function(const FlatTorus& torus, const DeformationParams& params,
                                const TorusClass& gamma, const TorusGeodesic& gp, double x);

}  // namespace pathdeform
