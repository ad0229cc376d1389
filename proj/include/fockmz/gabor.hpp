#pragma once

// Hermite functions and Gaussian time-frequency shifts. Conventions:
//
//   h_0(t)          = 2^{1/4} e^{-pi t^2}
//   (pi(lam) g)(t)  = e^{2 pi i xi t} g(t - x),   lam = x + i xi
//   <f, g>          = int f(t) conj(g(t)) dt
//
// The Bargmann transform sends h_k to e_k(z) = (pi^k / k!)^{1/2} z^k, which
// fixes the normalization and sign of every h_k.

#include <complex>
#include <span>
#include <vector>

#include "fockmz/fock.hpp"
#include "fockmz/spectral.hpp"

namespace fockmz {

struct TFPoint {
  double x = 0.0;   ///< time shift
  double xi = 0.0;  ///< frequency shift

  static TFPoint from_point(const Point& p) { return {p.re, p.im}; }
};

struct QuadratureSpec {
  double half_width = 0.0;  ///< integrate over [-T, T]
  double step = 0.0;        ///< initial trapezoid step

  /// T = sqrt((n + 8 sqrt n)/pi) + 5, h = 1/(8 (1 + |xi| + sqrt n)).
  static QuadratureSpec for_degree(int n, double xi);
};

/// h_0(t), ..., h_{k_max}(t) by the upward recurrence
///   h_{k+1}(t) = sqrt(4 pi/(k+1)) t h_k(t) - sqrt(k/(k+1)) h_{k-1}(t).
std::vector<double> hermite_values(int k_max, double t);

/// <h_k, pi(lam) h_0> by the trapezoid rule, halving the step until two
/// successive values differ by at most 1e-10. Throws NumericError after 6
/// halvings.
std::complex<double> tf_inner_quadrature(int k, TFPoint lam, QuadratureSpec quad);

/// <h_k, pi(lam) h_0> for every k <= n, sharing one set of quadrature nodes.
std::vector<std::complex<double>> tf_inner_quadrature_all(int n, TFPoint lam, QuadratureSpec quad);

/// Closed form through the Bargmann transform:
///   <h_k, pi(lam) h_0> = e^{-pi i x xi} e^{-pi |lam|^2/2} (pi^k/k!)^{1/2} conj(lam)^k.
/// The modulus is |e_k(lam)| e^{-pi|lam|^2/2}. Pi(lam)h_0 is carried to the
/// kernel at conj(lam) under this modulation sign, hence conj(lam)^k.
std::complex<double> tf_inner_closed_form(int k, TFPoint lam);

enum class InnerProductSource { quadrature, closed_form };

/// M_jk = sum_lam conj(v_j(lam)) v_k(lam), v_k(lam) = <h_k, pi(lam) h_0>, so
/// that f^H M f = sum_lam |<f, pi(lam) h_0>|^2 for f = sum_k f_k h_k.
HermitianMatrix subspace_frame_matrix(int n, std::span<const Point> layer, InnerProductSource source);

struct CrosscheckReport {
  int n = 0;
  std::size_t count = 0;
  double max_entry_gap = 0.0;  ///< max |M_quadrature - M_closed_form|
  double eig_gap = 0.0;        ///< max gap between extreme eigenvalues of the two
  double max_inner_gap = 0.0;  ///< max |v_k quadrature - v_k closed form|
  double lambda_min = 0.0;     ///< closed-form frame bounds on V_n
  double lambda_max = 0.0;
};

CrosscheckReport gabor_fock_crosscheck(int n, std::span<const Point> layer);

} // namespace fockmz
