#pragma once

// Coefficient groups: R/muR (additive, mu = 0 meaning plain R) and the
// multiplicative weights exp(lambda x) / exp(2 pi i n x / mu).

#include <complex>
#include <cstdint>
#include <variant>

namespace pathdeform {

inline constexpr double kPi = 3.141592653589793238462643383279502884;
inline constexpr double kDefaultTolerance = 1e-9;

/// An element of R/muR. For modulus > 0 the value is kept in [0, modulus).
struct ModReal {
  double value = 0.0;
  double modulus = 0.0;
};

/// A nonzero complex scalar put on a product.
using Weight = std::complex<double>;

/// exp(lambda * x) family; only valid against modulus 0.
struct Continuous {
  std::complex<double> lambda{0.0, 0.0};
};

/// exp(2 pi i n x / mu) family; only valid against modulus > 0.
struct Quantized {
  std::int64_t n = 0;
};

using WeightMode = std::variant<Continuous, Quantized>;

ModReal canonicalize(double x, double mu);

ModReal mod_add(const ModReal& a, const ModReal& b);
ModReal mod_sub(const ModReal& a, const ModReal& b);
ModReal mod_neg(const ModReal& a);

/// Circular distance between the two classes, i.e. distance from a - b to the
/// nearest multiple of the modulus.
double mod_distance(const ModReal& a, const ModReal& b);
bool mod_eq(const ModReal& a, const ModReal& b, double tol = kDefaultTolerance);

/// Throws std::invalid_argument if mode and x.modulus disagree.
Weight exp_weight(const WeightMode& mode, const ModReal& x);

}  // namespace pathdeform
