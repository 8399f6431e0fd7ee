#pragma once

// Worked narratives: a particle deflected onto the equator of the unit sphere,
// and deflections off a straight path on the flat torus.

#include <complex>
#include <cstdint>
#include <optional>
#include <ostream>
#include <string>
#include <vector>

#include "pathdeform/deformation.hpp"

namespace pathdeform {

struct EquatorTraceConfig {
  /// Colatitude of the start point on meridian 0, in [0, pi/2]. Values within
  /// the antipodal threshold of pi/2 are treated as starting on the equator.
  double colatitude = 0.0;
  std::int64_t quantum = 1;
  /// Number of steps K >= 2; rows are x = 2 pi k / K for k = 0..K.
  int steps = 360;
  double scale = 1.0;
};

struct TraceRow {
  double x = 0.0;
  bool defined = false;
  ModReal omega;             // omega~ mod 4 pi |scale|
  double phase = 0.0;        // continuously unwound phase angle
  Weight weight{1.0, 0.0};
};

/// Throws std::invalid_argument for an invalid config.
std::vector<TraceRow> equator_trace(const EquatorTraceConfig& cfg);

/// Phase of the last row minus phase of the first; nullopt if either endpoint
/// row is undefined or there are no rows.
std::optional<double> total_phase(const std::vector<TraceRow>& rows);

struct DeflectionRow {
  double angle = 0.0;
  Weight weight;         // deflection by +angle
  Weight mirror_weight;  // deflection by -angle
  Weight product;
};

/// Weights for deflecting off the end of gamma by each angle (radians,
/// counterclockwise) along a straight leg of the given length.
std::vector<DeflectionRow> torus_deflection(const FlatTorus& torus, std::complex<double> lambda,
                                            double scale, const TorusClass& gamma,
                                            const std::vector<double>& angles, double leg_length);

inline constexpr const char* kTraceCsvHeader =
    "x_longitude,omega_tilde_mod,phase_unwound,weight_re,weight_im,defined";

void emit_csv(const std::vector<TraceRow>& rows, std::ostream& out);
/// Throws std::runtime_error naming the path on I/O failure.
void emit_csv(const std::vector<TraceRow>& rows, const std::string& path);

/// "%.17g" rendering used by every numeric CSV field.
std::string format_double(double v);

}  // namespace pathdeform
