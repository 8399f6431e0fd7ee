#include "pathdeform/geometry.hpp"

#include <algorithm>
#include <cmath>
#include <limits>

namespace pathdeform {

namespace {

double wrap_unit(double u) {
  double w = u - std::floor(u);
  if (w >= 1.0) w = 0.0;
  return w;
}

// Lagrange-Gauss reduction; returns the length of the shortest nonzero vector.
double shortest_lattice_vector(Vec2 a, Vec2 b) {
  if (dot(a, a) > dot(b, b)) std::swap(a, b);
  for (int iter = 0; iter < 1000; ++iter) {
    const double mu = std::round(dot(a, b) / dot(a, a));
    b = b - mu * a;
    if (dot(b, b) >= dot(a, a)) break;
    std::swap(a, b);
  }
  return norm(a);
}

}  // namespace

Lattice::Lattice(Vec2 b1, Vec2 b2) : b1_(b1), b2_(b2) {
  const double det = cross(b1, b2);
  const double scale = norm(b1) * norm(b2);
  if (!std::isfinite(det) || scale == 0.0 || std::abs(det) <= 1e-12 * scale) {
    throw std::invalid_argument("lattice basis is degenerate");
  }
  shortest_ = shortest_lattice_vector(b1, b2);
}

Vec2 Lattice::to_cartesian(Vec2 c) const { return c.x * b1_ + c.y * b2_; }

Vec2 Lattice::to_lattice(Vec2 p) const {
  const double det = cross(b1_, b2_);
  return {cross(p, b2_) / det, cross(b1_, p) / det};
}

Vec2 Lattice::translation(LatticeVector k) const {
  return static_cast<double>(k.m) * b1_ + static_cast<double>(k.n) * b2_;
}

TorusPoint TorusPoint::from_lattice(double u, double v) {
  if (!std::isfinite(u) || !std::isfinite(v)) {
    throw std::invalid_argument("torus point coordinates must be finite");
  }
  return TorusPoint(wrap_unit(u), wrap_unit(v));
}

SpherePoint SpherePoint::from(Vec3 v) {
  const double n = norm(v);
  if (!(n > 0.0) || !std::isfinite(n)) {
    throw std::invalid_argument("sphere point needs a nonzero finite vector");
  }
  return SpherePoint((1.0 / n) * v);
}

SpherePoint SpherePoint::from_colatitude(double colatitude, double longitude) {
  return from({std::sin(colatitude) * std::cos(longitude),
               std::sin(colatitude) * std::sin(longitude), std::cos(colatitude)});
}

SpherePoint SphereGeodesic::point_at(double t) const {
  const Vec3& p = start.vec();
  return SpherePoint::from(std::cos(t) * p + std::sin(t) * tangent);
}

// ---------------------------------------------------------------------------
// FlatTorus

TorusPoint FlatTorus::point_at(Vec2 cartesian) const {
  const Vec2 c = lattice_.to_lattice(cartesian);
  return TorusPoint::from_lattice(c.x, c.y);
}

Vec2 FlatTorus::cartesian(const TorusPoint& p) const {
  return lattice_.to_cartesian({p.u(), p.v()});
}

bool FlatTorus::same_point(const TorusPoint& a, const TorusPoint& b) const {
  const double du = a.u() - b.u();
  const double dv = a.v() - b.v();
  const Vec2 d{du - std::round(du), dv - std::round(dv)};
  return norm(lattice_.to_cartesian(d)) <= point_tol_;
}

TorusClass FlatTorus::class_between_lifts(Vec2 from, Vec2 to) const {
  const Vec2 a = lattice_.to_lattice(from);
  const Vec2 b = lattice_.to_lattice(to);
  const auto start = TorusPoint::from_lattice(a.x, a.y);
  const auto end = TorusPoint::from_lattice(b.x, b.y);
  // to - from = L * ((end - start) + winding) in lattice coordinates.
  const double wm = (b.x - a.x) - (end.u() - start.u());
  const double wn = (b.y - a.y) - (end.v() - start.v());
  return {start, end,
          {static_cast<std::int64_t>(std::llround(wm)), static_cast<std::int64_t>(std::llround(wn))}};
}

Vec2 FlatTorus::displacement(const TorusClass& c) const {
  return cartesian(c.end) + lattice_.translation(c.winding) - cartesian(c.start);
}

TorusClass FlatTorus::reversed(const TorusClass& c) const { return {c.end, c.start, -c.winding}; }

Outcome<TorusClass> FlatTorus::multiply(const TorusClass& a, const TorusClass& b) const {
  if (!same_point(a.end, b.start)) return Zero{};
  // Junction points that agree only across the fundamental-domain seam shift
  // the second lift by a whole lattice vector.
  const LatticeVector seam{static_cast<std::int64_t>(std::round(a.end.u() - b.start.u())),
                           static_cast<std::int64_t>(std::round(a.end.v() - b.start.v()))};
  return TorusClass{a.start, b.end, a.winding + b.winding + seam};
}

std::optional<TorusGeodesic> FlatTorus::shortest_geodesic(const TorusClass& c) const {
  const Vec2 d = displacement(c);
  const double len = norm(d);
  const Vec2 dir = len > 0.0 ? (1.0 / len) * d : Vec2{};
  return TorusGeodesic{cartesian(c.start), dir, len};
}

ModReal FlatTorus::triangle_integral(const TwoForm& form, Vec2 p, Vec2 q, Vec2 r) const {
  return {form.scale * shoelace(p, q, r), 0.0};
}

Outcome<TorusClass> FlatTorus::reduce_to_class(const PiecewisePath<TorusClass>& path) const {
  Outcome<TorusClass> acc = path.segments().front();
  for (std::size_t i = 1; i < path.segments().size(); ++i) {
    acc = multiply(std::get<0>(acc), path.segments()[i]);
    if (!is_value(acc)) return acc;
  }
  return acc;
}

// ---------------------------------------------------------------------------
// UnitSphere

double UnitSphere::angle(const SpherePoint& a, const SpherePoint& b) {
  return std::atan2(norm(cross(a.vec(), b.vec())), dot(a.vec(), b.vec()));
}

bool UnitSphere::same_point(const SpherePoint& a, const SpherePoint& b) const {
  return norm(a.vec() - b.vec()) <= point_tol_;
}

bool UnitSphere::antipodal(const SpherePoint& a, const SpherePoint& b) const {
  return angle(a, b) >= kPi - antipodal_tol_;
}

std::optional<SphereClass> UnitSphere::make_class(const SpherePoint& p,
                                                  const SpherePoint& q) const {
  if (antipodal(p, q)) return std::nullopt;
  return SphereClass{p, q};
}

Outcome<SphereClass> UnitSphere::multiply(const SphereClass& a, const SphereClass& b) const {
  if (!same_point(a.end, b.start)) return Zero{};
  if (antipodal(a.start, b.end)) return Undefined{};
  return SphereClass{a.start, b.end};
}

std::optional<SphereGeodesic> UnitSphere::shortest_geodesic(const SphereClass& c) const {
  if (antipodal(c.start, c.end)) return std::nullopt;
  const Vec3& p = c.start.vec();
  const Vec3& q = c.end.vec();
  const double len = angle(c.start, c.end);
  // Component of q orthogonal to p gives the initial direction.
  const Vec3 perp = q - dot(p, q) * p;
  const double pn = norm(perp);
  const Vec3 tangent = pn > 0.0 ? (1.0 / pn) * perp : Vec3{};
  return SphereGeodesic{c.start, tangent, len};
}

double signed_spherical_area(const Vec3& p, const Vec3& q, const Vec3& r) {
  const double det = det3(p, q, r);
  const double denom = 1.0 + dot(p, q) + dot(q, r) + dot(r, p);
  // Vertices on one great circle: either a flat sliver (denom > 0, area 0) or
  // minor arcs that wrap the whole circle and bound a hemisphere.
  if (det == 0.0 && denom > 0.0) return 0.0;
  return 2.0 * std::atan2(det, denom);
}

std::optional<ModReal> UnitSphere::triangle_integral(const TwoForm& form, const SpherePoint& p,
                                                     const SpherePoint& q,
                                                     const SpherePoint& r) const {
  if (antipodal(p, q) || antipodal(q, r) || antipodal(r, p)) return std::nullopt;
  const double area = signed_spherical_area(p.vec(), q.vec(), r.vec());
  return canonicalize(form.scale * area, form.modulus);
}

Outcome<SphereClass> UnitSphere::reduce_to_class(const PiecewisePath<SphereClass>& path) const {
  const auto& segs = path.segments();
  auto c = make_class(segs.front().start, segs.back().end);
  if (!c) return Undefined{};
  return *c;
}

}  // namespace pathdeform
