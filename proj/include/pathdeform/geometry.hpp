#pragma once

// The two closed-form backends: the flat torus R^2/L and the unit sphere S^2.
// Each backend is an immutable configuration object that also acts as the
// partial monoid of homotopy classes (p, q, [gamma]).

#include <cmath>
#include <compare>
#include <cstdint>
#include <optional>
#include <stdexcept>
#include <vector>

#include "pathdeform/coeffs.hpp"
#include "pathdeform/monoid.hpp"

namespace pathdeform {

struct Vec2 {
  double x = 0.0;
  double y = 0.0;

  friend Vec2 operator+(Vec2 a, Vec2 b) { return {a.x + b.x, a.y + b.y}; }
  friend Vec2 operator-(Vec2 a, Vec2 b) { return {a.x - b.x, a.y - b.y}; }
  friend Vec2 operator*(double s, Vec2 a) { return {s * a.x, s * a.y}; }
  friend auto operator<=>(const Vec2&, const Vec2&) = default;
};

inline double cross(Vec2 a, Vec2 b) { return a.x * b.y - a.y * b.x; }
inline double dot(Vec2 a, Vec2 b) { return a.x * b.x + a.y * b.y; }
inline double norm(Vec2 a) { return std::hypot(a.x, a.y); }

struct Vec3 {
  double x = 0.0;
  double y = 0.0;
  double z = 0.0;

  friend Vec3 operator+(Vec3 a, Vec3 b) { return {a.x + b.x, a.y + b.y, a.z + b.z}; }
  friend Vec3 operator-(Vec3 a, Vec3 b) { return {a.x - b.x, a.y - b.y, a.z - b.z}; }
  friend Vec3 operator-(Vec3 a) { return {-a.x, -a.y, -a.z}; }
  friend Vec3 operator*(double s, Vec3 a) { return {s * a.x, s * a.y, s * a.z}; }
  friend auto operator<=>(const Vec3&, const Vec3&) = default;
};

inline double dot(Vec3 a, Vec3 b) { return a.x * b.x + a.y * b.y + a.z * b.z; }
inline Vec3 cross(Vec3 a, Vec3 b) {
  return {a.y * b.z - a.z * b.y, a.z * b.x - a.x * b.z, a.x * b.y - a.y * b.x};
}
inline double norm(Vec3 a) { return std::sqrt(dot(a, a)); }
inline double det3(Vec3 a, Vec3 b, Vec3 c) { return dot(a, cross(b, c)); }

/// Signed area of the planar triangle, counterclockwise positive.
inline double shoelace(Vec2 p, Vec2 q, Vec2 r) { return 0.5 * cross(q - p, r - p); }

/// omega = scale * (Riemannian area form); modulus is the least positive
/// integral over a sphere, 0 on the torus.
struct TwoForm {
  double scale = 1.0;
  double modulus = 0.0;
};

// ---------------------------------------------------------------------------
// Flat torus

/// Integer deck translation relative to the canonical lifts.
struct LatticeVector {
  std::int64_t m = 0;
  std::int64_t n = 0;

  friend LatticeVector operator+(LatticeVector a, LatticeVector b) { return {a.m + b.m, a.n + b.n}; }
  friend LatticeVector operator-(LatticeVector a) { return {-a.m, -a.n}; }
  friend auto operator<=>(const LatticeVector&, const LatticeVector&) = default;
};

class Lattice {
 public:
  /// Throws std::invalid_argument for a (numerically) degenerate basis.
  Lattice(Vec2 b1, Vec2 b2);
  static Lattice unit_square() { return {{1.0, 0.0}, {0.0, 1.0}}; }

  Vec2 b1() const { return b1_; }
  Vec2 b2() const { return b2_; }
  double covolume() const { return std::abs(cross(b1_, b2_)); }

  Vec2 to_cartesian(Vec2 lattice_coords) const;
  Vec2 to_lattice(Vec2 cartesian) const;
  Vec2 translation(LatticeVector k) const;
  double shortest_vector_length() const { return shortest_; }

 private:
  Vec2 b1_;
  Vec2 b2_;
  double shortest_ = 0.0;
};

/// A torus point, kept as lattice coordinates in [0,1)^2.
class TorusPoint {
 public:
  TorusPoint() = default;
  static TorusPoint from_lattice(double u, double v);

  double u() const { return u_; }
  double v() const { return v_; }
  friend auto operator<=>(const TorusPoint&, const TorusPoint&) = default;

 private:
  TorusPoint(double u, double v) : u_(u), v_(v) {}
  double u_ = 0.0;
  double v_ = 0.0;
};

/// (p, q, [gamma]) on the torus. The lifted end is cartesian(end) + L*winding
/// when the start is lifted to cartesian(start).
struct TorusClass {
  TorusPoint start;
  TorusPoint end;
  LatticeVector winding;

  friend auto operator<=>(const TorusClass&, const TorusClass&) = default;
};

/// Straight segment in the plane, parameterized by arclength.
struct TorusGeodesic {
  Vec2 start;
  Vec2 direction;  // unit, or zero for a null segment
  double length = 0.0;

  Vec2 point_at(double t) const { return start + t * direction; }
};

// ---------------------------------------------------------------------------
// Unit sphere

class SpherePoint {
 public:
  SpherePoint() = default;
  /// Normalizes; throws std::invalid_argument for a zero or non-finite vector.
  static SpherePoint from(Vec3 v);
  static SpherePoint from_colatitude(double colatitude, double longitude);

  const Vec3& vec() const { return v_; }
  friend auto operator<=>(const SpherePoint&, const SpherePoint&) = default;

 private:
  explicit SpherePoint(Vec3 v) : v_(v) {}
  Vec3 v_{0.0, 0.0, 1.0};
};

/// (p, q, [gamma]) on the sphere; the class tag is trivial.
struct SphereClass {
  SpherePoint start;
  SpherePoint end;

  friend auto operator<=>(const SphereClass&, const SphereClass&) = default;
};

/// Great circle through start with unit tangent, parameterized by arclength.
/// The length may exceed pi (a traversed path, not necessarily the shortest).
struct SphereGeodesic {
  SpherePoint start;
  Vec3 tangent;  // unit and orthogonal to start, or zero for a null segment
  double length = 0.0;

  SpherePoint point_at(double t) const;
};

// ---------------------------------------------------------------------------

/// Chain of concatenable segments. Junctions are checked by the backend on
/// construction.
template <class Class>
class PiecewisePath {
 public:
  template <class Backend>
  PiecewisePath(const Backend& backend, std::vector<Class> segments)
      : segments_(std::move(segments)) {
    if (segments_.empty()) throw std::invalid_argument("a path needs at least one segment");
    for (std::size_t i = 0; i + 1 < segments_.size(); ++i) {
      if (!backend.same_point(segments_[i].end, segments_[i + 1].start)) {
        throw std::invalid_argument("path segments " + std::to_string(i) + " and " +
                                    std::to_string(i + 1) + " do not meet");
      }
    }
    for (const auto& s : segments_) {
      auto g = backend.shortest_geodesic(s);
      if (!g) throw std::invalid_argument("path segment has no unique shortest geodesic");
      length_ += g->length;
    }
  }

  const std::vector<Class>& segments() const { return segments_; }
  double length() const { return length_; }

 private:
  std::vector<Class> segments_;
  double length_ = 0.0;
};

inline constexpr double kPointTolerance = 1e-9;
inline constexpr double kAntipodalThreshold = 1e-6;

class FlatTorus {
 public:
  using Point = TorusPoint;
  using Element = TorusClass;
  using Geodesic = TorusGeodesic;

  explicit FlatTorus(Lattice lattice = Lattice::unit_square(),
                     double point_tolerance = kPointTolerance)
      : lattice_(lattice), point_tol_(point_tolerance) {}

  const Lattice& lattice() const { return lattice_; }
  double point_tolerance() const { return point_tol_; }

  TorusPoint point_at(Vec2 cartesian) const;
  Vec2 cartesian(const TorusPoint& p) const;
  bool same_point(const TorusPoint& a, const TorusPoint& b) const;

  /// The class of the straight segment between two lifted points.
  TorusClass class_between_lifts(Vec2 from, Vec2 to) const;
  /// Lifted end minus lifted start.
  Vec2 displacement(const TorusClass& c) const;
  TorusClass reversed(const TorusClass& c) const;

  /// concat_classes: Zero on mismatched junction, never Undefined.
  Outcome<TorusClass> multiply(const TorusClass& a, const TorusClass& b) const;

  std::optional<TorusGeodesic> shortest_geodesic(const TorusClass& c) const;

  /// scale * shoelace area of the lifted triangle; modulus 0.
  ModReal triangle_integral(const TwoForm& form, Vec2 p, Vec2 q, Vec2 r) const;

  double injectivity_radius(const TorusPoint&) const {
    return 0.5 * lattice_.shortest_vector_length();
  }
  TwoForm area_form(double scale = 1.0) const { return {scale, 0.0}; }

  Outcome<TorusClass> reduce_to_class(const PiecewisePath<TorusClass>& path) const;

 private:
  Lattice lattice_;
  double point_tol_;
};

class UnitSphere {
 public:
  using Point = SpherePoint;
  using Element = SphereClass;
  using Geodesic = SphereGeodesic;

  explicit UnitSphere(double point_tolerance = kPointTolerance,
                      double antipodal_threshold = kAntipodalThreshold)
      : point_tol_(point_tolerance), antipodal_tol_(antipodal_threshold) {}

  double point_tolerance() const { return point_tol_; }

  /// Angle between the points in [0, pi].
  static double angle(const SpherePoint& a, const SpherePoint& b);
  bool same_point(const SpherePoint& a, const SpherePoint& b) const;
  bool antipodal(const SpherePoint& a, const SpherePoint& b) const;

  /// nullopt when p and q are antipodal (no unique shortest geodesic).
  std::optional<SphereClass> make_class(const SpherePoint& p, const SpherePoint& q) const;
  SphereClass reversed(const SphereClass& c) const { return {c.end, c.start}; }

  /// concat_classes: Zero on mismatched junction, Undefined when the outer
  /// endpoints are antipodal.
  Outcome<SphereClass> multiply(const SphereClass& a, const SphereClass& b) const;

  /// Minor great-circle arc; nullopt for antipodal endpoints.
  std::optional<SphereGeodesic> shortest_geodesic(const SphereClass& c) const;

  /// Signed area of the geodesic triangle p, q, r times scale, reduced mod
  /// 4 pi |scale|. nullopt if any pair is antipodal.
  std::optional<ModReal> triangle_integral(const TwoForm& form, const SpherePoint& p,
                                           const SpherePoint& q, const SpherePoint& r) const;

  double injectivity_radius(const SpherePoint&) const { return kPi; }
  TwoForm area_form(double scale = 1.0) const { return {scale, 4.0 * kPi * std::abs(scale)}; }

  Outcome<SphereClass> reduce_to_class(const PiecewisePath<SphereClass>& path) const;

 private:
  double point_tol_;
  double antipodal_tol_;
};

/// Unreduced signed solid angle of the geodesic triangle, in (-2pi, 2pi].
double signed_spherical_area(const Vec3& p, const Vec3& q, const Vec3& r);

}  // namespace pathdeform
