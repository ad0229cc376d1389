#include "fockmz/scaled_complex.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>

namespace fockmz {

double wrap_phase(double phase) {
  if (!std::isfinite(phase)) {
    return phase;
  }
  constexpr double pi = std::numbers::pi;
  if (phase > -pi && phase <= pi) {
    return phase;
  }
  double r = std::remainder(phase, 2.0 * pi);  // in [-pi, pi]
  if (r <= -pi) {
    r += 2.0 * pi;
  }
  return r;
}

ScaledComplex::ScaledComplex(double log_modulus, double phase)
    : log_modulus_(log_modulus), phase_(wrap_phase(phase)) {
  if (is_zero()) {
    phase_ = 0.0;
  }
}

ScaledComplex ScaledComplex::from_complex(std::complex<double> z) {
  if (z == std::complex<double>(0.0, 0.0)) {
    return zero();
  }
  return ScaledComplex(std::log(std::abs(z)), std::arg(z));
}

double ScaledComplex::modulus() const { return std::exp(log_modulus_); }

std::complex<double> ScaledComplex::to_complex() const {
  if (is_zero()) {
    return {0.0, 0.0};
  }
  return std::polar(std::exp(log_modulus_), phase_);
}

ScaledComplex ScaledComplex::conj() const {
  if (is_zero()) {
    return zero();
  }
  return ScaledComplex(log_modulus_, -phase_);
}

ScaledComplex operator*(const ScaledComplex& a, const ScaledComplex& b) {
  if (a.is_zero() || b.is_zero()) {
    return ScaledComplex::zero();
  }
  return ScaledComplex(a.log_modulus_ + b.log_modulus_, a.phase_ + b.phase_);
}

ScaledComplex operator/(const ScaledComplex& a, const ScaledComplex& b) {
  if (a.is_zero()) {
    return ScaledComplex::zero();
  }
  return ScaledComplex(a.log_modulus_ - b.log_modulus_, a.phase_ - b.phase_);
}

ScaledComplex scaled_exp_partial_sum(const ScaledComplex& t0, std::complex<double> s, int n) {
  if (t0.is_zero()) {
    return ScaledComplex::zero();
  }
  constexpr double upper = 1e100;
  constexpr double lower = 1e-100;

  double log_scale = t0.log_modulus();
  std::complex<double> term = std::polar(1.0, t0.phase());
  std::complex<double> acc = term;
  for (int k = 0; k < n; ++k) {
    term *= s / static_cast<double>(k + 1);
    acc += term;
    const double m = std::max(std::abs(acc), std::abs(term));
    if (m > upper || (m < lower && m > 0.0)) {
      acc /= m;
      term /= m;
      log_scale += std::log(m);
    }
  }
  if (acc == std::complex<double>(0.0, 0.0)) {
    return ScaledComplex::zero();
  }
  return ScaledComplex(log_scale + std::log(std::abs(acc)), std::arg(acc));
}

} // namespace fockmz
