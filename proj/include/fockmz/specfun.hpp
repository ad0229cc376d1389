#pragma once

// Regularized incomplete gamma functions and the quantities built on them.
//
// Argument order is (order a, cutoff x) throughout:
//   P(a, x) = gamma(a, x) / Gamma(a) = (1/Gamma(a)) int_0^x t^{a-1} e^{-t} dt
//   Q(a, x) = Gamma(a, x) / Gamma(a) = (1/Gamma(a)) int_x^inf t^{a-1} e^{-t} dt

#include <complex>
#include <string_view>

#include "fockmz/scaled_complex.hpp"

namespace fockmz {

enum class GammaMethod { series, continued_fraction, truncated_exp };

std::string_view to_string(GammaMethod method);

struct RegGammaValue {
  double p = 0.0;  ///< lower regularized, P(a, x)
  double q = 1.0;  ///< upper regularized, Q(a, x)
  GammaMethod method = GammaMethod::series;
};

/// ln(n!). Exact product for n <= 20, Stirling series above.
double log_factorial(int n);

/// ln Gamma(a) for a > 0.
double log_gamma(double a);

/// ln(x^a e^{-x} / Gamma(a)), evaluated without the cancellation between
/// a ln x and x when a is large.
double log_gamma_prefix(double a, double x);

/// log1p(t) - t, accurate near t = 0.
double log1pmx(double t);

/// P and Q for a > 0, x >= 0.
///
/// Series for P when x < a + 1 (Q = 1 - P); modified Lentz continued
/// fraction for Q otherwise. Throws std::domain_error on non-finite or
/// out-of-range input and NumericError if an expansion fails to converge.
RegGammaValue regularized_gamma(double a, double x);

/// Gamma(n+1, s)/n! = e^{-s} sum_{k=0}^{n} s^k/k! for complex s.
///
/// Scaled term recurrence, except for Re s < 0 with |s| < 0.9 (n+1), where
/// the alternating partial sum cancels and 1 - (tail series) is used.
ScaledComplex truncated_exp_ratio(int n, std::complex<double> s);

/// 1 - Gamma(n+1, s)/n! = e^{-s} sum_{k>n} s^k/k!, summed as a tail series.
///
/// Tail series when |s| < 0.9 (n+1), 1 - truncated_exp_ratio otherwise;
/// offdiag_gap differences two of these when both ratios are close to one.
std::complex<double> truncated_exp_complement(int n, std::complex<double> s);

/// Complementary error function via erfc(y) = Q(1/2, y^2) and reflection.
double erfc(double y);

struct AsymptoticGap {
  double q = 0.0;      ///< Q(a, a + tau sqrt(a))
  double limit = 0.0;  ///< erfc(tau/sqrt 2)/2
  double gap = 0.0;    ///< |q - limit|
  double bound = 0.0;  ///< 2 (|tau^2 - 1|/3 + 1) e^{-tau^2/2} / sqrt(2 pi a)
  bool pass = false;   ///< gap <= bound
};

/// Compares Q(a, a + tau sqrt a) with its erfc limit.
///
/// The bound uses the leading coefficient (tau^2 - 1)/3 with slack factor 2
/// and additive 1, since the leading term alone is not an all-order bound.
/// Requires a >= 10 and a + tau sqrt(a) >= 0.
AsymptoticGap asymptotic_gap_check(double a, double tau);

} // namespace fockmz
