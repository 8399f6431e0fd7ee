#include "pathdeform/scenarios.hpp"

#include <cmath>
#include <cstdio>
#include <fstream>
#include <stdexcept>

namespace pathdeform {

namespace {

constexpr double kBranchTieTolerance = 1e-9;

// Signed step from prev to next on the circle of circumference mu, in
// (-mu/2, mu/2]; half-turn ties resolve to the positive direction.
double nearest_step(double prev, double next, double mu) {
  double d = canonicalize(next - prev, mu).value;
  if (d > 0.5 * mu + kBranchTieTolerance) d -= mu;
  return d;
}

}  // namespace

std::vector<TraceRow> equator_trace(const EquatorTraceConfig& cfg) {
  if (!(cfg.colatitude >= 0.0) || cfg.colatitude > kPi / 2.0) {
    throw std::invalid_argument("colatitude must lie in [0, pi/2]");
  }
  if (cfg.steps < 2) throw std::invalid_argument("a trace needs at least 2 steps");
  if (cfg.scale == 0.0 || !std::isfinite(cfg.scale)) {
    throw std::invalid_argument("form scale must be finite and nonzero");
  }

  const UnitSphere sphere;
  const auto params = DeformationParams::quantized(sphere.area_form(cfg.scale), cfg.quantum);
  const double mu = params.form.modulus;

  const SpherePoint q = SpherePoint::from({1.0, 0.0, 0.0});
  const bool equator_start = std::abs(cfg.colatitude - kPi / 2.0) <= kAntipodalThreshold;
  const SpherePoint p = equator_start ? q : SpherePoint::from_colatitude(cfg.colatitude, 0.0);
  const SphereClass gamma{p, q};
  const SphereGeodesic equator{q, {0.0, 1.0, 0.0}, 2.0 * kPi};

  std::vector<TraceRow> rows;
  rows.reserve(static_cast<std::size_t>(cfg.steps) + 1);
  std::optional<double> last_canonical;
  double unwound = 0.0;
  for (int k = 0; k <= cfg.steps; ++k) {
    TraceRow row;
    if (2 * k == cfg.steps) {
      row.x = kPi;
    } else if (k == cfg.steps) {
      row.x = 2.0 * kPi;
    } else {
      row.x = 2.0 * kPi * k / cfg.steps;
    }
    auto swept = swept_integral(sphere, params.form, gamma, equator, row.x);
    if (is_value(swept)) {
      row.defined = true;
      row.omega = std::get<0>(swept);
      if (!last_canonical) {
        unwound = row.omega.value <= 0.5 * mu ? row.omega.value : row.omega.value - mu;
      } else {
        unwound += nearest_step(*last_canonical, row.omega.value, mu);
      }
      last_canonical = row.omega.value;
      row.phase = 2.0 * kPi * static_cast<double>(cfg.quantum) * unwound / mu;
      row.weight = exp_weight(params, row.omega);
    }
    rows.push_back(row);
  }
  return rows;
}

std::optional<double> total_phase(const std::vector<TraceRow>& rows) {
  if (rows.empty() || !rows.front().defined || !rows.back().defined) return std::nullopt;
  return rows.back().phase - rows.front().phase;
}

std::vector<DeflectionRow> torus_deflection(const FlatTorus& torus, std::complex<double> lambda,
                                            double scale, const TorusClass& gamma,
                                            const std::vector<double>& angles, double leg_length) {
  const auto geo = torus.shortest_geodesic(gamma);
  if (!geo || geo->length == 0.0) {
    throw std::invalid_argument("deflection needs a path of positive length");
  }
  if (!(leg_length >= 0.0)) throw std::invalid_argument("leg length must be >= 0");
  const auto params = DeformationParams::continuous(torus.area_form(scale), lambda);
  const Vec2 q = geo->point_at(geo->length);
  const Vec2 u = geo->direction;

  auto weight_at = [&](double theta) {
    const Vec2 dir{std::cos(theta) * u.x - std::sin(theta) * u.y,
                   std::sin(theta) * u.x + std::cos(theta) * u.y};
    const TorusClass leg = torus.class_between_lifts(q, q + leg_length * dir);
    auto w = weight_of_pair(torus, params, gamma, leg);
    if (!is_value(w)) throw std::logic_error("torus products are always defined");
    return std::get<0>(w);
  };

  std::vector<DeflectionRow> rows;
  rows.reserve(angles.size());
  for (double theta : angles) {
    DeflectionRow row;
    row.angle = theta;
    row.weight = weight_at(theta);
    row.mirror_weight = weight_at(-theta);
    row.product = row.weight * row.mirror_weight;
    rows.push_back(row);
  }
  return rows;
}

std::string format_double(double v) {
  char buf[40];
  std::snprintf(buf, sizeof buf, "%.17g", v);
  return buf;
}

void emit_csv(const std::vector<TraceRow>& rows, std::ostream& out) {
  out << kTraceCsvHeader << '\n';
  for (const auto& r : rows) {
    out << format_double(r.x) << ',';
    if (r.defined) {
      out << format_double(r.omega.value) << ',' << format_double(r.phase) << ','
          << format_double(r.weight.real()) << ',' << format_double(r.weight.imag()) << ",true";
    } else {
      out << ",,,,false";
    }
    out << '\n';
  }
}

void emit_csv(const std::vector<TraceRow>& rows, const std::string& path) {
  std::ofstream out(path, std::ios::binary);
  if (!out) throw std::runtime_error("cannot open " + path + " for writing");
  emit_csv(rows, out);
  out.flush();
  if (!out) throw std::runtime_error("failed writing " + path);
}

}  // namespace pathdeform
