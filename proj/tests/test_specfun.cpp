#include <doctest.h>

#include <boost/math/special_functions/erf.hpp>
#include <boost/math/special_functions/gamma.hpp>
#include <boost/multiprecision/cpp_bin_float.hpp>

#include <cmath>
#include <limits>
#include <numbers>
#include <random>
#include <stdexcept>

#include "fockmz/errors.hpp"
#include "fockmz/specfun.hpp"

using namespace fockmz;

namespace {

constexpr double kPi = std::numbers::pi;

double rel(double got, double want) {
  return want == 0.0 ? std::fabs(got) : std::fabs(got - want) / std::fabs(want);
}

// Composite Simpson on [y, y + 12] of 2/sqrt(pi) e^{-t^2}.
double erfc_by_quadrature(double y) {
  const int m = 20000;
  const double h = 12.0 / m;
  double s = 0.0;
  for (int i = 0; i <= m; ++i) {
    const double t = y + i * h;
    const double w = (i == 0 || i == m) ? 1.0 : (i % 2 ? 4.0 : 2.0);
    s += w * std::exp(-t * t);
  }
  return 2.0 / std::sqrt(kPi) * s * h / 3.0;
}

// e^{-s} sum_{k<=n} s^k/k! with 50 significant digits.
std::complex<double> exact_truncated_exp(int n, std::complex<double> s) {
  using big = boost::multiprecision::cpp_bin_float_50;
  const big sr = s.real();
  const big si = s.imag();
  big tr = 1, ti = 0, ar = 1, ai = 0;
  for (int k = 1; k <= n; ++k) {
    const big nr = (tr * sr - ti * si) / k;
    const big ni = (tr * si + ti * sr) / k;
    tr = nr;
    ti = ni;
    ar += tr;
    ai += ti;
  }
  const big mod = exp(-sr);
  const big c = mod * cos(-si);
  const big d = mod * sin(-si);
  return {static_cast<double>(ar * c - ai * d), static_cast<double>(ar * d + ai * c)};
}

} // namespace

TEST_SUITE("scaled complex") {
  TEST_CASE("round trip through ordinary complex") {
    std::mt19937_64 rng(1);
    std::uniform_real_distribution<double> lm(-700.0, 700.0);
    std::uniform_real_distribution<double> ph(-kPi, kPi);
    for (int i = 0; i < 2000; ++i) {
      const ScaledComplex s(lm(rng), ph(rng));
      const ScaledComplex back = ScaledComplex::from_complex(s.to_complex());
      CHECK(std::fabs(back.log_modulus() - s.log_modulus()) <= 1e-14 * std::max(1.0, std::fabs(s.log_modulus())));
      CHECK(std::abs(std::polar(1.0, back.phase()) - std::polar(1.0, s.phase())) <= 1e-14);
    }
  }

  TEST_CASE("multiplication adds and wraps") {
    const ScaledComplex a(1.5, 3.0);
    const ScaledComplex b(-0.5, 1.0);
    const ScaledComplex c = a * b;
    CHECK(c.log_modulus() == doctest::Approx(1.0));
    CHECK(c.phase() == doctest::Approx(4.0 - 2.0 * kPi));
    CHECK(c.phase() > -kPi);
    CHECK(c.phase() <= kPi);
    CHECK(ScaledComplex(0.0, -kPi).phase() == doctest::Approx(kPi));
  }

  TEST_CASE("zero convention") {
    const ScaledComplex z = ScaledComplex::from_complex({0.0, 0.0});
    CHECK(z.is_zero());
    CHECK(z.log_modulus() == -std::numeric_limits<double>::infinity());
    CHECK(z.phase() == 0.0);
    CHECK((z * ScaledComplex(3.0, 1.0)).is_zero());
    CHECK(z.to_complex() == std::complex<double>(0.0, 0.0));
  }
}

TEST_SUITE("log factorial") {
  TEST_CASE("small values") {
    CHECK(log_factorial(0) == 0.0);
    CHECK(log_factorial(1) == 0.0);
    CHECK(rel(log_factorial(5), 4.787491742782046) <= 1e-15);
  }

  TEST_CASE("matches lgamma to 1e-13 relative") {
    for (int n = 2; n <= 5000; n += (n < 100 ? 1 : 37)) {
      CHECK(rel(log_factorial(n), boost::math::lgamma(n + 1.0)) <= 1e-13);
    }
  }

  TEST_CASE("negative argument rejected") { CHECK_THROWS_AS(log_factorial(-1), std::domain_error); }
}

TEST_SUITE("regularized gamma") {
  TEST_CASE("examples") {
    const RegGammaValue v = regularized_gamma(1.0, 1.0);
    CHECK(v.q == 0.36787944117144233);
    CHECK(v.method == GammaMethod::series);
    const RegGammaValue z = regularized_gamma(7.0, 0.0);
    CHECK(z.q == 1.0);
    CHECK(z.p == 0.0);
    CHECK(regularized_gamma(3.0, 10.0).method == GammaMethod::continued_fraction);
  }

  TEST_CASE("agrees with an independent implementation") {
    for (double a : {0.1, 0.5, 1.0, 2.5, 7.0, 10.0, 31.0, 101.0, 1000.0, 1e4, 1e5, 1e6}) {
      for (double f : {0.01, 0.3, 0.8, 0.95, 1.0, 1.05, 1.2, 2.0, 3.0}) {
        const double x = a * f;
        const double want = boost::math::gamma_q(a, x);
        if (want < 1e-280) {
          continue;
        }
        INFO("a = " << a << ", x = " << x);
        CHECK(rel(regularized_gamma(a, x).q, want) <= 1e-12);
      }
    }
  }

  TEST_CASE("agrees near the split point for large order") {
    for (double a : {1e3, 1e5, 1e6}) {
      for (double dx : {-3.0, -1.0, 0.0, 1.0, 1.0 + 1e-9, 2.0, 5.0}) {
        const double x = a + dx;
        INFO("a = " << a << ", x = " << x);
        CHECK(rel(regularized_gamma(a, x).q, boost::math::gamma_q(a, x)) <= 1e-12);
      }
    }
  }

  TEST_CASE("complementarity and monotonicity on the grid") {
    for (int n = 0; n <= 400; ++n) {
      double last_q = 2.0;
      for (double f : {0.0, 0.1, 0.5, 1.0, 1.5, 2.0}) {
        const RegGammaValue v = regularized_gamma(n + 1.0, f * n);
        CHECK(std::fabs(v.p + v.q - 1.0) <= 1e-13);
        CHECK(v.q <= last_q);
        last_q = v.q;
      }
    }
  }

  TEST_CASE("median exceeds one half") {
    for (int n = 1; n <= 10000; ++n) {
      REQUIRE(regularized_gamma(n + 1.0, n).q > 0.5);
    }
  }

  TEST_CASE("fixed cutoff tends to one") {
    for (int n = 40; n <= 400; n += 10) {
      CHECK(regularized_gamma(n + 1.0, 5.0).q >= 1.0 - 1e-6);
    }
  }

  TEST_CASE("lower tail below e^{-tau^2/2}") {
    for (int n = 10; n <= 2000; n = static_cast<int>(n * 1.15) + 1) {
      for (double tau : {0.5, 1.0, 2.0, 3.0}) {
        const double x = n - std::sqrt(static_cast<double>(n)) * tau;
        if (x < 0.0) {
          continue;
        }
        CHECK(1.0 - regularized_gamma(n + 1.0, x).q <= std::exp(-tau * tau / 2.0));
      }
    }
  }

  TEST_CASE("domain errors") {
    CHECK_THROWS_AS(regularized_gamma(0.0, 1.0), std::domain_error);
    CHECK_THROWS_AS(regularized_gamma(-1.0, 1.0), std::domain_error);
    CHECK_THROWS_AS(regularized_gamma(1.0, -0.5), std::domain_error);
    CHECK_THROWS_AS(regularized_gamma(std::nan(""), 1.0), std::domain_error);
    CHECK_THROWS_AS(regularized_gamma(1.0, std::numeric_limits<double>::infinity()), std::domain_error);
  }
}

TEST_SUITE("truncated exponential") {
  TEST_CASE("examples") {
    CHECK(truncated_exp_ratio(5, {0.0, 0.0}).to_complex() == std::complex<double>(1.0, 0.0));
    const std::complex<double> s(2.0, 3.0);
    CHECK(std::abs(truncated_exp_ratio(0, s).to_complex() - std::exp(-s)) <= 1e-15);
    CHECK(rel(truncated_exp_ratio(50, {40.0, 0.0}).to_complex().real(), regularized_gamma(51.0, 40.0).q) <= 1e-11);
  }

  TEST_CASE("matches the gamma path on the grid") {
    for (int n = 0; n <= 400; ++n) {
      for (double f : {0.0, 0.1, 0.5, 1.0, 1.5, 2.0}) {
        const double x = f * n;
        CHECK(rel(truncated_exp_ratio(n, {x, 0.0}).to_complex().real(), regularized_gamma(n + 1.0, x).q) <= 1e-11);
      }
    }
  }

  TEST_CASE("complex arguments against 50-digit summation") {
    std::mt19937_64 rng(3);
    std::uniform_real_distribution<double> u(-1.0, 1.0);
    for (int i = 0; i < 300; ++i) {
      const int n = 5 + i % 80;
      const double radius = (n + 1) * (0.05 + 1.4 * std::fabs(u(rng)));
      const double angle = std::numbers::pi * u(rng);
      const std::complex<double> s = std::polar(radius, angle);
      const std::complex<double> want = exact_truncated_exp(n, s);
      const std::complex<double> got = truncated_exp_ratio(n, s).to_complex();
      INFO("n = " << n << ", s = " << s);
      CHECK(std::abs(got - want) <= 1e-10 * std::abs(want));
      if (std::abs(s) < 0.9 * (n + 1)) {
        const std::complex<double> tail = truncated_exp_complement(n, s);
        CHECK(std::abs(tail - (1.0 - want)) <= 1e-12 * std::max(1.0, std::abs(1.0 - want)));
      }
    }
  }

  TEST_CASE("large arguments stay finite") {
    const ScaledComplex r = truncated_exp_ratio(2000, {1500.0, 700.0});
    CHECK(std::isfinite(r.log_modulus()));
    CHECK_THROWS_AS(truncated_exp_ratio(-1, {1.0, 0.0}), std::domain_error);
  }
}

TEST_SUITE("erfc") {
  TEST_CASE("examples") {
    CHECK(fockmz::erfc(0.0) == doctest::Approx(1.0).epsilon(1e-15));
    CHECK(fockmz::erfc(-10.0) >= 2.0 - 1e-13);
    CHECK(fockmz::erfc(-10.0) <= 2.0);
    CHECK(std::fabs(fockmz::erfc(1.0) - 0.15729920705028513) <= 1e-13);
    CHECK(std::fabs(erfc_by_quadrature(1.0) - 0.15729920705028513) <= 1e-12);
  }

  TEST_CASE("absolute accuracy") {
    for (double y = -6.0; y <= 6.0; y += 0.0625) {
      CHECK(std::fabs(fockmz::erfc(y) - boost::math::erfc(y)) <= 1e-13);
    }
  }
}

TEST_SUITE("asymptotics") {
  TEST_CASE("examples") {
    const AsymptoticGap g0 = asymptotic_gap_check(400.0, 0.0);
    CHECK(g0.limit == doctest::Approx(0.5).epsilon(1e-15));
    CHECK(g0.pass);
    const AsymptoticGap g2 = asymptotic_gap_check(100.0, 2.0);
    CHECK(std::fabs(g2.limit - 0.5 * boost::math::erfc(std::sqrt(2.0))) <= 1e-14);
    CHECK(g2.limit == doctest::Approx(0.02275).epsilon(1e-3));
    CHECK(g2.pass);
    const AsymptoticGap g1 = asymptotic_gap_check(10000.0, 1.0);
    CHECK(g1.pass);
    CHECK(g1.bound == doctest::Approx(2.0 * std::exp(-0.5) / std::sqrt(2.0 * kPi * 10000.0)));
  }

  TEST_CASE("gap shrinks like a^{-1/2}") {
    for (double tau : {0.0, 2.0, 3.0}) {
      const double g100 = asymptotic_gap_check(100.0, tau).gap;
      const double g400 = asymptotic_gap_check(400.0, tau).gap;
      const double g1600 = asymptotic_gap_check(1600.0, tau).gap;
      CHECK(g100 / g400 >= 1.8);
      CHECK(g400 / g1600 >= 1.8);
    }
  }

  TEST_CASE("preconditions") {
    CHECK_THROWS_AS(asymptotic_gap_check(9.0, 0.0), std::domain_error);
    CHECK_THROWS_AS(asymptotic_gap_check(100.0, -11.0), std::domain_error);
  }

  TEST_CASE("u - ln(1 + u) >= (1 - ln 2) u on [1, 50]") {
    for (double u = 1.0; u <= 50.0; u += 0.01) {
      CHECK(u - std::log1p(u) >= (1.0 - std::log(2.0)) * u - 1e-15);
    }
  }

  TEST_CASE("log1pmx series matches the direct form") {
    for (double t = -0.5; t <= 0.5; t += 0.01) {
      const double direct = static_cast<double>(std::log1p(static_cast<long double>(t)) - t);
      CHECK(std::fabs(log1pmx(t) - direct) <= 1e-16 + 1e-13 * std::fabs(direct));
    }
  }
}
