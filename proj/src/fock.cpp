#include "fockmz/fock.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <stdexcept>

#include "fockmz/specfun.hpp"

namespace fockmz {

namespace {

constexpr double kPi = std::numbers::pi;

void require_degree(int n, const char* who) {
  if (n < 0) {
    throw std::domain_error(std::string(who) + ": negative degree");
  }
}

void require_radius(double rho, const char* who) {
  if (!(rho > 0.0) || !std::isfinite(rho)) {
    throw std::domain_error(std::string(who) + ": radius must be positive");
  }
}

} // namespace

double CoefficientVector::norm_sq() const {
  double s = 0.0;
  for (const auto& a : entries_) {
    s += std::norm(a);
  }
  return s;
}

std::complex<double> CoefficientVector::weighted_value(Point z) const {
  if (entries_.empty()) {
    return {0.0, 0.0};
  }
  // v_k = e_k(z) e^{-pi|z|^2/2}; v_{k+1} = v_k sqrt(pi) z / sqrt(k+1).
  const std::complex<double> step = std::sqrt(kPi) * z.z();
  double log_scale = -0.5 * kPi * z.norm_sq();
  std::complex<double> v = 1.0;
  std::complex<double> acc = entries_[0] * v;
  for (std::size_t k = 0; k + 1 < entries_.size(); ++k) {
    v *= step / std::sqrt(static_cast<double>(k + 1));
    acc += entries_[k + 1] * v;
    const double m = std::max(std::abs(v), std::abs(acc));
    if (m > 1e100) {
      v /= m;
      acc /= m;
      log_scale += std::log(m);
    }
  }
  return acc * std::exp(log_scale);
}

ScaledComplex normalized_fock_kernel(Point z, Point w) {
  const double dre = z.re - w.re;
  const double dim = z.im - w.im;
  // Im(z conj(w)) = z.im w.re - z.re w.im
  const double phase = kPi * (z.im * w.re - z.re * w.im);
  return ScaledComplex(-0.5 * kPi * (dre * dre + dim * dim), phase);
}

ScaledComplex normalized_poly_kernel(int n, Point z, Point w) {
  require_degree(n, "normalized_poly_kernel");
  const ScaledComplex t0(-0.5 * kPi * (z.norm_sq() + w.norm_sq()), 0.0);
  const std::complex<double> s = kPi * z.z() * std::conj(w.z());
  return scaled_exp_partial_sum(t0, s, n);
}

double monomial_disk_mass(int k, double rho) {
  require_degree(k, "monomial_disk_mass");
  require_radius(rho, "monomial_disk_mass");
  const double p = regularized_gamma(k + 1.0, kPi * rho * rho).p;
  return std::exp(log_factorial(k) - k * std::log(kPi)) * p;
}

double tail_energy_exact(const CoefficientVector& coeffs, double rho) {
  require_radius(rho, "tail_energy_exact");
  const double x = kPi * rho * rho;
  double energy = 0.0;
  const auto a = coeffs.entries();
  for (std::size_t k = 0; k < a.size(); ++k) {
    energy += std::norm(a[k]) * regularized_gamma(static_cast<double>(k) + 1.0, x).q;
  }
  return energy;
}

double tail_energy_bound(int n, double rho) {
  require_degree(n, "tail_energy_bound");
  require_radius(rho, "tail_energy_bound");
  return regularized_gamma(n + 1.0, kPi * rho * rho).q;
}

double offdiag_gap(int n, Point z, Point w) {
  require_degree(n, "offdiag_gap");
  if (z == w) {
    return 0.0;
  }
  const std::complex<double> s_cross = kPi * z.z() * std::conj(w.z());
  const std::complex<double> s_diag = kPi * z.norm_sq();
  if (std::max(std::abs(s_cross), std::abs(s_diag)) < 0.9 * (n + 1)) {
    // Both ratios are 1 - (tail); differencing the tails keeps the
    // exponentially small gap out of the rounding noise of 1.
    return std::abs(truncated_exp_complement(n, s_diag) - truncated_exp_complement(n, s_cross));
  }
  return std::abs(truncated_exp_ratio(n, s_cross).to_complex() -
                  truncated_exp_ratio(n, s_diag).to_complex());
}

BulkRatioRange bulk_equivalence(int n, double tau) {
  if (n < 1) {
    throw std::domain_error("bulk_equivalence: degree must be at least 1");
  }
  const double right = n + std::sqrt(static_cast<double>(n)) * tau;
  if (!(right >= 0.0)) {
    throw std::domain_error("bulk_equivalence: n + sqrt(n) tau must be non-negative");
  }
  constexpr int kGrid = 200;
  BulkRatioRange r{1.0, 0.0};
  for (int i = 0; i < kGrid; ++i) {
    const double x = right * i / (kGrid - 1);
    const double q = regularized_gamma(n + 1.0, x).q;
    r.min_ratio = std::min(r.min_ratio, q);
    r.max_ratio = std::max(r.max_ratio, q);
  }
  return r;
}

} // namespace fockmz
