#pragma once

// Reproducing kernels of the Fock space F^2 (weight e^{-pi |z|^2}) and of its
// polynomial subspaces P_n, handled in Gaussian-normalized form:
//
//   K(z, w)   = e^{pi z conj(w)} e^{-pi (|z|^2 + |w|^2)/2}
//   K_n(z, w) = k_n(z, w)        e^{-pi (|z|^2 + |w|^2)/2}
//
// with k_n(z, w) = sum_{k<=n} (pi z conj(w))^k / k!. Raw kernels are never
// materialized.

#include <complex>
#include <span>
#include <vector>

#include "fockmz/scaled_complex.hpp"

namespace fockmz {

struct Point {
  double re = 0.0;
  double im = 0.0;

  std::complex<double> z() const { return {re, im}; }
  double norm_sq() const { return re * re + im * im; }

  friend bool operator==(const Point&, const Point&) = default;
};

/// Coefficients a_0..a_n of p = sum a_k e_k in the orthonormal basis
/// e_k(z) = (pi^k / k!)^{1/2} z^k. The squared norm equals ||p||^2 in F^2.
class CoefficientVector {
public:
  CoefficientVector() = default;
  explicit CoefficientVector(std::vector<std::complex<double>> entries)
      : entries_(std::move(entries)) {}

  int degree() const { return static_cast<int>(entries_.size()) - 1; }
  std::span<const std::complex<double>> entries() const { return entries_; }
  double norm_sq() const;

  /// p(z) e^{-pi |z|^2 / 2}, by the upward recurrence on e_k(z) e^{-pi|z|^2/2}.
  std::complex<double> weighted_value(Point z) const;

private:
  std::vector<std::complex<double>> entries_;
};

ScaledComplex normalized_fock_kernel(Point z, Point w);

/// Scaled term recurrence t_0 = e^{-pi(|z|^2+|w|^2)/2}, t_{k+1} = t_k pi z conj(w) / (k+1).
/// Every term is bounded by 1 in modulus, so the absolute error is O(n eps).
ScaledComplex normalized_poly_kernel(int n, Point z, Point w);

/// int_{|z|<=rho} |z|^{2k} e^{-pi |z|^2} dm(z) = pi^{-k} k! P(k+1, pi rho^2).
double monomial_disk_mass(int k, double rho);

/// Exact energy of p outside the closed disk of radius rho:
/// sum_k |a_k|^2 Q(k+1, pi rho^2).
double tail_energy_exact(const CoefficientVector& coeffs, double rho);

/// Q(n+1, pi rho^2): the fraction of ||p||^2 any p in P_n can carry outside B_rho.
double tail_energy_bound(int n, double rho);

/// |Gamma(n+1, pi z conj(w))/n! - Gamma(n+1, pi |z|^2)/n!|.
double offdiag_gap(int n, Point z, Point w);

struct BulkRatioRange {
  double min_ratio = 0.0;
  double max_ratio = 0.0;
};

/// Range of k_n(z,z)/k(z,z) = Q(n+1, pi|z|^2) over pi|z|^2 in [0, n + sqrt(n) tau],
/// sampled on a 200-point grid.
BulkRatioRange bulk_equivalence(int n, double tau);

} // namespace fockmz
