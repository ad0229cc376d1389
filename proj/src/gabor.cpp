#include "fockmz/gabor.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <stdexcept>

#include "fockmz/errors.hpp"
#include "fockmz/specfun.hpp"

namespace fockmz {

namespace {

using cplx = std::complex<double>;
constexpr double kPi = std::numbers::pi;
constexpr double kQuadTol = 1e-10;
constexpr int kMaxHalvings = 6;

// Integrand values h_k(t) h_0(t - x) e^{-2 pi i xi t}, k = 0..n, added into acc.
void accumulate_integrand(int n, TFPoint lam, double t, std::vector<cplx>& acc) {
  const std::vector<double> h = hermite_values(n, t);
  const double window = std::pow(2.0, 0.25) * std::exp(-kPi * (t - lam.x) * (t - lam.x));
  const cplx carrier = std::polar(window, -2.0 * kPi * lam.xi * t);
  for (int k = 0; k <= n; ++k) {
    acc[k] += h[k] * carrier;
  }
}

} // namespace

QuadratureSpec QuadratureSpec::for_degree(int n, double xi) {
  const double rn = std::sqrt(static_cast<double>(std::max(n, 0)));
  return {std::sqrt((n + 8.0 * rn) / kPi) + 5.0, 1.0 / (8.0 * (1.0 + std::fabs(xi) + rn))};
}

std::vector<double> hermite_values(int k_max, double t) {
  if (k_max < 0) {
    throw std::domain_error("hermite_values: negative degree");
  }
  // From Bh_k = e_k with h_0 = 2^{1/4} e^{-pi t^2}: h_k is the physicists'
  // Hermite function in sqrt(2 pi) t, i.e. 2^{1/4} H_k(sqrt(2 pi) t)
  // e^{-pi t^2} / sqrt(2^k k!). Checked against quadrature orthonormality and
  // the Bargmann modulus identity in the tests.
  std::vector<double> h(k_max + 1);
  h[0] = std::pow(2.0, 0.25) * std::exp(-kPi * t * t);
  if (k_max >= 1) {
    h[1] = 2.0 * std::sqrt(kPi) * t * h[0];
  }
  for (int k = 1; k < k_max; ++k) {
    h[k + 1] = std::sqrt(4.0 * kPi / (k + 1)) * t * h[k] - std::sqrt(static_cast<double>(k) / (k + 1)) * h[k - 1];
  }
  return h;
}

std::vector<cplx> tf_inner_quadrature_all(int n, TFPoint lam, QuadratureSpec quad) {
  if (n < 0) {
    throw std::domain_error("tf_inner_quadrature: negative degree");
  }
  if (!(quad.half_width > 0.0) || !(quad.step > 0.0)) {
    throw std::domain_error("tf_inner_quadrature: quadrature width and step must be positive");
  }
  const double t0 = -quad.half_width;
  long intervals = std::max(2L, static_cast<long>(std::ceil(2.0 * quad.half_width / quad.step)));
  double h = 2.0 * quad.half_width / intervals;

  // Raw node sums; the endpoint half-weights are irrelevant at |t| = T.
  std::vector<cplx> nodes(n + 1, 0.0);
  for (long j = 0; j <= intervals; ++j) {
    accumulate_integrand(n, lam, t0 + j * h, nodes);
  }
  std::vector<cplx> prev(n + 1);
  for (int k = 0; k <= n; ++k) {
    prev[k] = h * nodes[k];
  }
  for (int halving = 1; halving <= kMaxHalvings; ++halving) {
    for (long j = 0; j < intervals; ++j) {
      accumulate_integrand(n, lam, t0 + (j + 0.5) * h, nodes);
    }
    intervals *= 2;
    h *= 0.5;
    double change = 0.0;
    std::vector<cplx> cur(n + 1);
    for (int k = 0; k <= n; ++k) {
      cur[k] = h * nodes[k];
      change = std::max(change, std::abs(cur[k] - prev[k]));
    }
    if (change <= kQuadTol) {
      return cur;
    }
    prev = std::move(cur);
  }
  throw NumericError("tf_inner_quadrature: no convergence after 6 step halvings");
}

cplx tf_inner_quadrature(int k, TFPoint lam, QuadratureSpec quad) {
  return tf_inner_quadrature_all(k, lam, quad)[k];
}

cplx tf_inner_closed_form(int k, TFPoint lam) {
  if (k < 0) {
    throw std::domain_error("tf_inner_closed_form: negative degree");
  }
  const double r2 = lam.x * lam.x + lam.xi * lam.xi;
  const double shift_phase = -kPi * lam.x * lam.xi;
  if (k == 0) {
    return std::polar(std::exp(-0.5 * kPi * r2), shift_phase);
  }
  if (r2 == 0.0) {
    return 0.0;
  }
  const double log_mod = 0.5 * (k * std::log(kPi * r2) - log_factorial(k)) - 0.5 * kPi * r2;
  const double arg_conj = -std::atan2(lam.xi, lam.x);
  return std::polar(std::exp(log_mod), shift_phase + k * arg_conj);
}

namespace {

std::vector<cplx> inner_products(int n, const Point& p, InnerProductSource source) {
  const TFPoint lam = TFPoint::from_point(p);
  if (source == InnerProductSource::quadrature) {
    return tf_inner_quadrature_all(n, lam, QuadratureSpec::for_degree(n, lam.xi));
  }
  std::vector<cplx> v(n + 1);
  for (int k = 0; k <= n; ++k) {
    v[k] = tf_inner_closed_form(k, lam);
  }
  return v;
}

HermitianMatrix frame_from_rows(int n, const std::vector<std::vector<cplx>>& rows) {
  HermitianMatrix m(n + 1);
  for (int j = 0; j <= n; ++j) {
    for (int k = j; k <= n; ++k) {
      cplx acc = 0.0;
      for (const auto& v : rows) {
        acc += std::conj(v[j]) * v[k];
      }
      m(j, k) = acc;
      m(k, j) = std::conj(acc);
    }
  }
  m.symmetrize();
  return m;
}

} // namespace

HermitianMatrix subspace_frame_matrix(int n, std::span<const Point> layer, InnerProductSource source) {
  if (n < 0) {
    throw std::domain_error("subspace_frame_matrix: negative degree");
  }
  if (layer.empty()) {
    throw std::invalid_argument("subspace_frame_matrix: empty layer");
  }
  std::vector<std::vector<cplx>> rows;
  rows.reserve(layer.size());
  for (const Point& p : layer) {
    rows.push_back(inner_products(n, p, source));
  }
  return frame_from_rows(n, rows);
}

CrosscheckReport gabor_fock_crosscheck(int n, std::span<const Point> layer) {
  if (n < 0) {
    throw std::domain_error("gabor_fock_crosscheck: negative degree");
  }
  if (layer.empty()) {
    throw std::invalid_argument("gabor_fock_crosscheck: empty layer");
  }
  CrosscheckReport r;
  r.n = n;
  r.count = layer.size();
  std::vector<std::vector<cplx>> quad_rows;
  std::vector<std::vector<cplx>> closed_rows;
  for (const Point& p : layer) {
    quad_rows.push_back(inner_products(n, p, InnerProductSource::quadrature));
    closed_rows.push_back(inner_products(n, p, InnerProductSource::closed_form));
    for (int k = 0; k <= n; ++k) {
      r.max_inner_gap = std::max(r.max_inner_gap, std::abs(quad_rows.back()[k] - closed_rows.back()[k]));
    }
  }
  const HermitianMatrix mq = frame_from_rows(n, quad_rows);
  const HermitianMatrix mc = frame_from_rows(n, closed_rows);
  for (int j = 0; j <= n; ++j) {
    for (int k = 0; k <= n; ++k) {
      r.max_entry_gap = std::max(r.max_entry_gap, std::abs(mq(j, k) - mc(j, k)));
    }
  }
  const SpectralBounds bq = extreme_eigenvalues(mq);
  const SpectralBounds bc = extreme_eigenvalues(mc);
  r.eig_gap = std::max(std::fabs(bq.lambda_min - bc.lambda_min), std::fabs(bq.lambda_max - bc.lambda_max));
  r.lambda_min = bc.lambda_min;
  r.lambda_max = bc.lambda_max;
  return r;
}

} // namespace fockmz
