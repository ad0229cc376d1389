#include <doctest.h>

#include <cmath>
#include <complex>
#include <numbers>
#include <random>
#include <vector>

#include "fixtures.hpp"
#include "fockmz/gabor.hpp"
#include "fockmz/specfun.hpp"
#include "fockmz/spectral.hpp"

using namespace fockmz;
using cplx = std::complex<double>;

namespace {

constexpr double kPi = std::numbers::pi;

double bargmann_modulus(int k, TFPoint lam) {
  const double r2 = lam.x * lam.x + lam.xi * lam.xi;
  if (k == 0) {
    return std::exp(-kPi * r2 / 2.0);
  }
  return std::exp(0.5 * (k * std::log(kPi * r2) - log_factorial(k)) - kPi * r2 / 2.0);
}

// Plain trapezoid Gram of h_0..h_k on [-10, 10].
std::vector<std::vector<double>> hermite_gram(int k) {
  const int m = 8000;
  const double h = 20.0 / m;
  std::vector<std::vector<double>> g(k + 1, std::vector<double>(k + 1, 0.0));
  for (int i = 0; i <= m; ++i) {
    const auto v = hermite_values(k, -10.0 + i * h);
    for (int a = 0; a <= k; ++a)
      for (int b = 0; b <= k; ++b) g[a][b] += v[a] * v[b] * h;
  }
  return g;
}

std::vector<Point> sampling_layer(int n) {
  FamilySpec s;
  s.degrees = {n};
  const PointSet layer = build_family(s).at(n);
  return {layer.begin(), layer.end()};
}

} // namespace

TEST_SUITE("hermite functions") {
  TEST_CASE("values at the origin") {
    const auto h = hermite_values(3, 0.0);
    CHECK(h[0] == doctest::Approx(1.189207115).epsilon(1e-9));
    CHECK(h[1] == 0.0);
  }

  TEST_CASE("orthonormal up to degree 12") {
    const auto g = hermite_gram(12);
    for (int a = 0; a <= 12; ++a) {
      for (int b = 0; b <= 12; ++b) {
        CHECK(std::fabs(g[a][b] - (a == b ? 1.0 : 0.0)) <= 1e-10);
      }
    }
  }

  TEST_CASE("underflow far out") {
    for (double v : hermite_values(20, 50.0)) {
      CHECK(std::isfinite(v));
      CHECK(std::fabs(v) < 1e-300);
    }
  }
}

TEST_SUITE("time-frequency inner products") {
  TEST_CASE("examples") {
    const TFPoint zero{0.0, 0.0};
    CHECK(std::abs(tf_inner_quadrature(0, zero, QuadratureSpec::for_degree(0, 0.0)) - 1.0) <= 1e-10);
    for (int k = 1; k <= 8; ++k) {
      CHECK(std::abs(tf_inner_quadrature(k, zero, QuadratureSpec::for_degree(k, 0.0))) <= 1e-10);
    }
    const TFPoint lam{1.0, 0.5};
    CHECK(std::fabs(std::abs(tf_inner_quadrature(3, lam, QuadratureSpec::for_degree(3, 0.5))) -
                    bargmann_modulus(3, lam)) <= 1e-8);
    CHECK(tf_inner_closed_form(0, zero) == cplx(1.0, 0.0));
    const TFPoint one{1.0, 0.0};
    CHECK(std::abs(tf_inner_closed_form(2, one) - tf_inner_quadrature(2, one, QuadratureSpec::for_degree(2, 0.0))) <=
          1e-8);
  }

  TEST_CASE("modulus identity for k <= 10 and |lambda| <= 4") {
    std::mt19937_64 rng(41);
    std::uniform_real_distribution<double> u(0.0, 1.0);
    for (int trial = 0; trial < 25; ++trial) {
      const double r = 4.0 * std::sqrt(u(rng));
      const double t = 2.0 * kPi * u(rng);
      const TFPoint lam{r * std::cos(t), r * std::sin(t)};
      const auto v = tf_inner_quadrature_all(10, lam, QuadratureSpec::for_degree(10, lam.xi));
      for (int k = 0; k <= 10; ++k) {
        CHECK(std::fabs(std::abs(v[k]) - bargmann_modulus(k, lam)) <= 1e-8);
        CHECK(std::fabs(std::abs(tf_inner_closed_form(k, lam)) - bargmann_modulus(k, lam)) <=
              1e-14 + 1e-12 * bargmann_modulus(k, lam));
        // the frozen phase convention
        CHECK(std::abs(v[k] - tf_inner_closed_form(k, lam)) <= 1e-8);
      }
    }
  }

  TEST_CASE("batch and single evaluations agree") {
    const TFPoint lam{-0.7, 1.3};
    const QuadratureSpec q = QuadratureSpec::for_degree(6, lam.xi);
    const auto all = tf_inner_quadrature_all(6, lam, q);
    CHECK(tf_inner_quadrature(6, lam, q) == all[6]);
  }

  TEST_CASE("bad quadrature specs rejected") {
    CHECK_THROWS(tf_inner_quadrature(2, {}, QuadratureSpec{0.0, 0.1}));
    CHECK_THROWS(tf_inner_quadrature(2, {}, QuadratureSpec{5.0, -0.1}));
  }
}

TEST_SUITE("subspace frame") {
  TEST_CASE("examples") {
    const std::vector<Point> origin{{0.0, 0.0}};
    CHECK(std::abs(subspace_frame_matrix(0, origin, InnerProductSource::closed_form)(0, 0) - 1.0) <= 1e-15);
    CHECK(std::abs(subspace_frame_matrix(0, origin, InnerProductSource::quadrature)(0, 0) - 1.0) <= 1e-10);

    const std::vector<Point> five{{0.0, 0.0}, {0.9, 0.2}, {-0.5, 1.1}, {1.4, -1.0}, {-1.2, -0.6}};
    const HermitianMatrix q = subspace_frame_matrix(2, five, InnerProductSource::quadrature);
    const HermitianMatrix c = subspace_frame_matrix(2, five, InnerProductSource::closed_form);
    for (int j = 0; j <= 2; ++j)
      for (int k = 0; k <= 2; ++k) CHECK(std::abs(q(j, k) - c(j, k)) <= 1e-6);

    const auto layer = sampling_layer(5);
    const SpectralBounds b = extreme_eigenvalues(subspace_frame_matrix(5, layer, InnerProductSource::closed_form));
    CHECK(b.lambda_min > 0.0);
    CHECK(fixtures::within(b.lambda_min, fixtures::kGaborV5Min));
    CHECK(fixtures::within(b.lambda_max, fixtures::kGaborV5Max));
  }

  TEST_CASE("frame sum consistency on V_5") {
    std::mt19937_64 rng(42);
    std::normal_distribution<double> g;
    std::uniform_real_distribution<double> u(-2.5, 2.5);
    std::vector<Point> layer(30);
    for (auto& p : layer) p = {u(rng), u(rng)};
    const HermitianMatrix m = subspace_frame_matrix(5, layer, InnerProductSource::closed_form);
    for (int trial = 0; trial < 5; ++trial) {
      std::vector<cplx> f(6);
      for (auto& c : f) c = {g(rng), g(rng)};
      // <f, pi(lambda) h_0> = sum_k f_k <h_k, pi(lambda) h_0>
      double direct = 0.0;
      for (const Point& p : layer) {
        const TFPoint lam = TFPoint::from_point(p);
        const auto v = tf_inner_quadrature_all(5, lam, QuadratureSpec::for_degree(5, lam.xi));
        cplx s = 0.0;
        for (int k = 0; k <= 5; ++k) s += f[k] * v[k];
        direct += std::norm(s);
      }
      CHECK(std::fabs(direct - m.quadratic_form(f)) <= 1e-6 * direct);
    }
  }

  TEST_CASE("Moyal-type norm check") {
    // cell area times sum over a fine lattice of |<h_k, pi(lambda) h_0>|^2
    const double step = 0.25;
    for (int k : {0, 1, 3, 6}) {
      double sum = 0.0;
      for (int i = -48; i <= 48; ++i) {
        for (int j = -48; j <= 48; ++j) {
          sum += std::norm(tf_inner_closed_form(k, {i * step, j * step}));
        }
      }
      CHECK(std::fabs(sum * step * step - 1.0) <= 0.02);
    }
  }

  TEST_CASE("crosscheck") {
    const CrosscheckReport z = gabor_fock_crosscheck(0, std::vector<Point>{{0.0, 0.0}});
    CHECK(z.max_entry_gap <= 1e-12);
    CHECK(z.eig_gap <= 1e-12);

    const PointSet forty = closest_lattice_points(LatticeSpec::square(0.95), 40);
    const CrosscheckReport r = gabor_fock_crosscheck(10, forty.points());
    CHECK(r.count == 40);
    CHECK(r.max_inner_gap <= 1e-8);
    CHECK(r.max_entry_gap <= 1e-6);
    CHECK(r.eig_gap <= 1e-6);

    const auto layer = sampling_layer(10);
    std::vector<Point> doubled;
    for (const Point& p : layer) doubled.push_back({2.0 * p.re, 2.0 * p.im});
    const HermitianMatrix a = subspace_frame_matrix(10, layer, InnerProductSource::closed_form);
    const HermitianMatrix b = subspace_frame_matrix(10, doubled, InnerProductSource::closed_form);
    CHECK(std::abs(a(0, 0) - b(0, 0)) > 1e-3);
  }
}
