#include "pathdeform/coeffs.hpp"

#include <cmath>
#include <stdexcept>
#include <string>

namespace pathdeform {

namespace {

void require_same_modulus(const ModReal& a, const ModReal& b) {
  if (a.modulus != b.modulus) {
    throw std::invalid_argument("modulus mismatch: " + std::to_string(a.modulus) +
                                " vs " + std::to_string(b.modulus));
  }
}

}  // namespace

ModReal canonicalize(double x, double mu) {
  if (!(mu >= 0.0)) throw std::invalid_argument("modulus must be >= 0");
  if (mu == 0.0) return {x, 0.0};
  double r = std::fmod(x, mu);
  if (r < 0.0) r += mu;
  // r + mu can round up to mu for tiny negative r.
  if (r >= mu) r = 0.0;
  return {r, mu};
}

ModReal mod_add(const ModReal& a, const ModReal& b) {
  require_same_modulus(a, b);
  return canonicalize(a.value + b.value, a.modulus);
}

ModReal mod_sub(const ModReal& a, const ModReal& b) {
  require_same_modulus(a, b);
  return canonicalize(a.value - b.value, a.modulus);
}

ModReal mod_neg(const ModReal& a) { return canonicalize(-a.value, a.modulus); }

double mod_distance(const ModReal& a, const ModReal& b) {
  require_same_modulus(a, b);
  const double mu = a.modulus;
  if (mu == 0.0) return std::abs(a.value - b.value);
  const double d = canonicalize(a.value - b.value, mu).value;
  return std::min(d, mu - d);
}

bool mod_eq(const ModReal& a, const ModReal& b, double tol) {
  return mod_distance(a, b) <= tol;
}

Weight exp_weight(const WeightMode& mode, const ModReal& x) {
  if (const auto* c = std::get_if<Continuous>(&mode)) {
    if (x.modulus != 0.0) {
      throw std::invalid_argument("continuous weights require modulus 0");
    }
    return std::exp(c->lambda * x.value);
  }
  const auto& q = std::get<Quantized>(mode);
  if (!(x.modulus > 0.0)) {
    throw std::invalid_argument("quantized weights require modulus > 0");
  }
  // Reduce first so large n*x keeps full precision in the phase.
  const double phase =
      2.0 * kPi * std::fmod(static_cast<double>(q.n) * x.value, x.modulus) / x.modulus;
  return std::polar(1.0, phase);
}

}  // namespace pathdeform
