#include "fockmz/specfun.hpp"

#include <array>
#include <cmath>
#include <cstdint>
#include <limits>
#include <numbers>
#include <stdexcept>
#include <string>

#include "fockmz/errors.hpp"

namespace fockmz {

namespace {

constexpr double kEps = std::numeric_limits<double>::epsilon();

// Continued fraction controls (modified Lentz).
constexpr double kLentzTiny = 1e-300;
constexpr double kLentzTol = 1e-15;
constexpr int kLentzMaxIter = 10000;
constexpr int kSeriesMaxIter = 1000000;

// ln Gamma(a) - [(a - 1/2) ln a - a + ln(2 pi)/2] for a >= 10.
long double stirling_correction(long double a) {
  const long double r = 1.0L / a;
  const long double r2 = r * r;
  // Bernoulli-number coefficients B_{2k} / (2k (2k - 1)).
  static constexpr std::array<long double, 7> c = {
      1.0L / 12.0L,   -1.0L / 360.0L,       1.0L / 1260.0L, -1.0L / 1680.0L,
      1.0L / 1188.0L, -691.0L / 360360.0L,  1.0L / 156.0L,
  };
  long double sum = 0.0L;
  for (auto it = c.rbegin(); it != c.rend(); ++it) {
    sum = sum * r2 + *it;
  }
  return sum * r;
}

constexpr long double kHalfLog2PiL = 0.918938533204672741780329736405617639861L;

// Extended precision keeps q = 1 - p and the prefix exponent accurate to the
// last double bit for moderate arguments.
long double log_gamma_ld(long double a) {
  long double prod = 1.0L;
  while (a < 10.0L) {
    prod *= a;
    a += 1.0L;
  }
  return (a - 0.5L) * std::log(a) - a + kHalfLog2PiL + stirling_correction(a) - std::log(prod);
}

long double log1pmx_ld(long double t) {
  if (std::fabs(t) > 0.5L) {
    return std::log1p(t) - t;
  }
  const long double eps = std::numeric_limits<long double>::epsilon();
  long double power = t * t;
  long double sum = 0.0L;
  for (int k = 2; k < 200; ++k) {
    const long double term = power / k;
    sum += (k % 2 == 0) ? -term : term;
    if (std::fabs(term) <= eps * 0.25L * std::fabs(sum)) {
      break;
    }
    power *= t;
  }
  return sum;
}

long double log_gamma_prefix_ld(long double a, long double x) {
  if (a < 10.0L) {
    return a * std::log(x) - x - log_gamma_ld(a);
  }
  // x^a e^{-x} / Gamma(a) = sqrt(a / 2 pi) exp(a log1pmx((x - a)/a) - mu(a))
  return a * log1pmx_ld((x - a) / a) + 0.5L * std::log(a) - kHalfLog2PiL - stirling_correction(a);
}

void require_finite(double v, const char* name) {
  if (!std::isfinite(v)) {
    throw std::domain_error(std::string("regularized_gamma: non-finite ") + name);
  }
}

long double gamma_series_p(double a, double x) {
  long double ap = a;
  long double del = 1.0L;
  long double sum = 1.0L;
  for (int i = 0; i < kSeriesMaxIter; ++i) {
    ap += 1.0L;
    del *= x / ap;
    sum += del;
    if (del < sum * std::numeric_limits<long double>::epsilon() * 0.5L) {
      return std::exp(log_gamma_prefix_ld(a, x) - std::log(static_cast<long double>(a))) * sum;
    }
  }
  throw NumericError("regularized_gamma: series did not converge");
}

double gamma_continued_fraction_q(double a, double x) {
  double b = x + 1.0 - a;
  double c = 1.0 / kLentzTiny;
  double d = 1.0 / b;
  double h = d;
  for (int i = 1; i <= kLentzMaxIter; ++i) {
    const double an = -i * (i - a);
    b += 2.0;
    d = an * d + b;
    if (std::fabs(d) < kLentzTiny) {
      d = kLentzTiny;
    }
    c = b + an / c;
    if (std::fabs(c) < kLentzTiny) {
      c = kLentzTiny;
    }
    d = 1.0 / d;
    const double del = d * c;
    h *= del;
    if (std::fabs(del - 1.0) < kLentzTol) {
      return static_cast<double>(std::exp(log_gamma_prefix_ld(a, x)) * h);
    }
  }
  throw NumericError("regularized_gamma: continued fraction did not converge");
}

} // namespace

std::string_view to_string(GammaMethod method) {
  switch (method) {
  case GammaMethod::series:
    return "series";
  case GammaMethod::continued_fraction:
    return "continued_fraction";
  case GammaMethod::truncated_exp:
    return "truncated_exp";
  }
  return "unknown";
}

double log_factorial(int n) {
  if (n < 0) {
    throw std::domain_error("log_factorial: negative argument");
  }
  if (n <= 20) {
    std::uint64_t prod = 1;
    for (int k = 2; k <= n; ++k) {
      prod *= static_cast<std::uint64_t>(k);
    }
    return std::log(static_cast<double>(prod));
  }
  return static_cast<double>(log_gamma_ld(n + 1.0L));
}

double log_gamma(double a) {
  if (!(a > 0.0) || !std::isfinite(a)) {
    throw std::domain_error("log_gamma: argument must be positive and finite");
  }
  return static_cast<double>(log_gamma_ld(a));
}

double log1pmx(double t) {
  if (std::fabs(t) > 0.5) {
    return std::log1p(t) - t;
  }
  // -t^2/2 + t^3/3 - t^4/4 + ...
  double power = t * t;
  double sum = 0.0;
  for (int k = 2; k < 200; ++k) {
    const double term = power / k;
    sum += (k % 2 == 0) ? -term : term;
    if (std::fabs(term) <= kEps * 0.25 * std::fabs(sum)) {
      break;
    }
    power *= t;
  }
  return sum;
}

double log_gamma_prefix(double a, double x) {
  if (x == 0.0) {
    return -std::numeric_limits<double>::infinity();
  }
  return static_cast<double>(log_gamma_prefix_ld(a, x));
}

RegGammaValue regularized_gamma(double a, double x) {
  require_finite(a, "order");
  require_finite(x, "cutoff");
  if (!(a > 0.0)) {
    throw std::domain_error("regularized_gamma: order must be positive");
  }
  if (x < 0.0) {
    throw std::domain_error("regularized_gamma: cutoff must be non-negative");
  }
  if (x == 0.0) {
    return {0.0, 1.0, GammaMethod::series};
  }
  if (x < a + 1.0) {
    const long double p = gamma_series_p(a, x);
    return {static_cast<double>(p), static_cast<double>(1.0L - p), GammaMethod::series};
  }
  const double q = gamma_continued_fraction_q(a, x);
  return {1.0 - q, q, GammaMethod::continued_fraction};
}

namespace {

// e^{-s} sum_{k>n} s^k/k! in log space; requires |s| < n + 2 for the tail series.
ScaledComplex complement_scaled(int n, std::complex<double> s) {
  if (s == std::complex<double>(0.0, 0.0)) {
    return ScaledComplex::zero();
  }
  // e^{-s} s^{n+1}/(n+1)! * sum_j s^j / ((n+2)(n+3)...(n+1+j))
  const std::complex<double> log_lead =
      -s + static_cast<double>(n + 1) * std::log(s) - log_factorial(n + 1);
  std::complex<double> term = 1.0;
  std::complex<double> sum = 1.0;
  for (int j = 1; j < kSeriesMaxIter; ++j) {
    term *= s / static_cast<double>(n + 1 + j);
    sum += term;
    if (std::abs(term) <= kEps * 0.5 * std::abs(sum)) {
      return ScaledComplex(log_lead.real(), log_lead.imag()) * ScaledComplex::from_complex(sum);
    }
  }
  throw NumericError("truncated_exp_complement: tail series did not converge");
}

bool tail_form_applies(int n, std::complex<double> s) { return std::abs(s) < 0.9 * (n + 1); }

} // namespace

ScaledComplex truncated_exp_ratio(int n, std::complex<double> s) {
  if (n < 0) {
    throw std::domain_error("truncated_exp_ratio: negative degree");
  }
  if (s.real() < 0.0 && tail_form_applies(n, s)) {
    // The partial sum alternates and cancels here; 1 - tail does not.
    const ScaledComplex tail = complement_scaled(n, s);
    if (tail.log_modulus() > 40.0) {
      return ScaledComplex(tail.log_modulus(), tail.phase() + std::numbers::pi);
    }
    return ScaledComplex::from_complex(1.0 - tail.to_complex());
  }
  const ScaledComplex t0(-s.real(), -s.imag());
  return scaled_exp_partial_sum(t0, s, n);
}

std::complex<double> truncated_exp_complement(int n, std::complex<double> s) {
  if (n < 0) {
    throw std::domain_error("truncated_exp_complement: negative degree");
  }
  if (tail_form_applies(n, s)) {
    return complement_scaled(n, s).to_complex();
  }
  return 1.0 - truncated_exp_ratio(n, s).to_complex();
}

double erfc(double y) {
  if (!std::isfinite(y)) {
    throw std::domain_error("erfc: non-finite argument");
  }
  if (y < 0.0) {
    return 2.0 - erfc(-y);
  }
  if (y > 30.0) {
    return 0.0;  // below the smallest subnormal
  }
  return regularized_gamma(0.5, y * y).q;
}

AsymptoticGap asymptotic_gap_check(double a, double tau) {
  if (!std::isfinite(a) || !std::isfinite(tau)) {
    throw std::domain_error("asymptotic_gap_check: non-finite input");
  }
  if (a < 10.0) {
    throw std::domain_error("asymptotic_gap_check: order must be at least 10");
  }
  const double cutoff = a + tau * std::sqrt(a);
  if (cutoff < 0.0) {
    throw std::domain_error("asymptotic_gap_check: a + tau sqrt(a) must be non-negative");
  }
  AsymptoticGap r;
  r.q = regularized_gamma(a, cutoff).q;
  r.limit = 0.5 * erfc(tau / std::numbers::sqrt2);
  r.gap = std::fabs(r.q - r.limit);
  const double coeff = std::fabs(tau * tau - 1.0) / 3.0 + 1.0;
  r.bound = 2.0 * coeff * std::exp(-0.5 * tau * tau) / std::sqrt(2.0 * std::numbers::pi * a);
  r.pass = r.gap <= r.bound;
  return r;
}

} // namespace fockmz
