#pragma once

#include <complex>
#include <limits>

namespace fockmz {

/// Complex number stored as (log |z|, arg z).
///
/// Kernel values such as e^{pi z conj(w)} overflow a double long before the
/// quantities built from them do, so they are carried in this form until the
/// final normalized value is known. Zero is log_modulus = -inf, phase = 0.
class ScaledComplex {
public:
  constexpr ScaledComplex() = default;
  ScaledComplex(double log_modulus, double phase);

  static ScaledComplex from_complex(std::complex<double> z);
  static ScaledComplex zero() { return {}; }
  static ScaledComplex one() { return ScaledComplex(0.0, 0.0); }

  double log_modulus() const { return log_modulus_; }
  /// In (-pi, pi].
  double phase() const { return phase_; }

  bool is_zero() const { return log_modulus_ == -std::numeric_limits<double>::infinity(); }

  /// |z|; underflows to 0 or overflows to inf outside the double range.
  double modulus() const;
  std::complex<double> to_complex() const;

  ScaledComplex conj() const;

  friend ScaledComplex operator*(const ScaledComplex& a, const ScaledComplex& b);
  friend ScaledComplex operator/(const ScaledComplex& a, const ScaledComplex& b);

private:
  double log_modulus_ = -std::numeric_limits<double>::infinity();
  double phase_ = 0.0;
};

/// Maps an angle to (-pi, pi].
double wrap_phase(double phase);

/// t0 * sum_{k=0}^{n} s^k / k!, accumulated left to right in scaled form.
///
/// The running sum and the current term share one exponent; both are
/// renormalized whenever the larger of them leaves [1e-100, 1e100].
ScaledComplex scaled_exp_partial_sum(const ScaledComplex& t0, std::complex<double> s, int n);

} // namespace fockmz
