#include "fockmz/spectral.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <random>
#include <stdexcept>

#include "fockmz/errors.hpp"
#include "fockmz/specfun.hpp"

namespace fockmz {

namespace {

using cplx = std::complex<double>;
constexpr double kPi = std::numbers::pi;

void require_layer(std::span<const Point> layer, const char* who) {
  if (layer.empty()) {
    throw std::invalid_argument(std::string(who) + ": empty layer");
  }
}

// ln Q(n+1, pi |lambda|^2) per point.
std::vector<double> log_diag_ratios(int n, std::span<const Point> layer) {
  std::vector<double> out(layer.size());
  for (std::size_t i = 0; i < layer.size(); ++i) {
    out[i] = std::log(regularized_gamma(n + 1.0, kPi * layer[i].norm_sq()).q);
  }
  return out;
}

} // namespace

HermitianMatrix::HermitianMatrix(int dim) : dim_(dim) {
  if (dim < 0) {
    throw std::invalid_argument("HermitianMatrix: negative dimension");
  }
  a_.assign(static_cast<std::size_t>(dim) * static_cast<std::size_t>(dim), cplx(0.0));
}

HermitianMatrix HermitianMatrix::identity(int dim) {
  HermitianMatrix m(dim);
  for (int i = 0; i < dim; ++i) {
    m(i, i) = 1.0;
  }
  return m;
}

void HermitianMatrix::symmetrize() {
  for (int i = 0; i < dim_; ++i) {
    (*this)(i, i) = (*this)(i, i).real();
    for (int j = i + 1; j < dim_; ++j) {
      const cplx avg = 0.5 * ((*this)(i, j) + std::conj((*this)(j, i)));
      (*this)(i, j) = avg;
      (*this)(j, i) = std::conj(avg);
    }
  }
}

double HermitianMatrix::hermitian_defect() const {
  double worst = 0.0;
  for (int i = 0; i < dim_; ++i) {
    for (int j = i; j < dim_; ++j) {
      worst = std::max(worst, std::abs((*this)(i, j) - std::conj((*this)(j, i))));
    }
  }
  return worst;
}

std::vector<cplx> HermitianMatrix::apply(std::span<const cplx> x) const {
  if (static_cast<int>(x.size()) != dim_) {
    throw std::invalid_argument("HermitianMatrix::apply: dimension mismatch");
  }
  std::vector<cplx> y(dim_, 0.0);
  for (int i = 0; i < dim_; ++i) {
    cplx s = 0.0;
    for (int j = 0; j < dim_; ++j) {
      s += (*this)(i, j) * x[j];
    }
    y[i] = s;
  }
  return y;
}

double HermitianMatrix::quadratic_form(std::span<const cplx> x) const {
  const auto y = apply(x);
  cplx s = 0.0;
  for (int i = 0; i < dim_; ++i) {
    s += std::conj(x[i]) * y[i];
  }
  return s.real();
}

HermitianMatrix mz_frame_matrix(int n, std::span<const Point> layer) {
  if (n < 0) {
    throw std::domain_error("mz_frame_matrix: negative degree");
  }
  require_layer(layer, "mz_frame_matrix");
  const int dim = n + 1;
  std::vector<double> log_fact(dim);
  for (int k = 0; k < dim; ++k) {
    log_fact[k] = log_factorial(k);
  }
  const std::vector<double> log_q = log_diag_ratios(n, layer);

  // Rows w(lambda) = u(lambda)/sqrt(q_lambda); S = W^H W.
  const std::size_t npts = layer.size();
  std::vector<cplx> w(npts * dim, cplx(0.0));
  for (std::size_t p = 0; p < npts; ++p) {
    const double r2 = layer[p].norm_sq();
    cplx* row = &w[p * dim];
    if (r2 == 0.0) {
      row[0] = std::exp(-0.5 * log_q[p]);
      continue;
    }
    const double log_area = std::log(kPi * r2);
    const double theta = std::atan2(layer[p].im, layer[p].re);
    for (int k = 0; k < dim; ++k) {
      const double lm = 0.5 * (k * log_area - log_fact[k]) - 0.5 * kPi * r2 - 0.5 * log_q[p];
      row[k] = std::polar(std::exp(lm), k * theta);
    }
  }

  HermitianMatrix s(dim);
  for (int k = 0; k < dim; ++k) {
    for (int l = k; l < dim; ++l) {
      cplx acc = 0.0;
      for (std::size_t p = 0; p < npts; ++p) {
        acc += std::conj(w[p * dim + k]) * w[p * dim + l];
      }
      s(k, l) = acc;
      s(l, k) = std::conj(acc);
    }
  }
  s.symmetrize();
  return s;
}

HermitianMatrix gram_matrix(int n, std::span<const Point> layer) {
  if (n < 0) {
    throw std::domain_error("gram_matrix: negative degree");
  }
  require_layer(layer, "gram_matrix");
  const int dim = static_cast<int>(layer.size());
  const std::vector<double> log_q = log_diag_ratios(n, layer);
  HermitianMatrix g(dim);
  for (int i = 0; i < dim; ++i) {
    g(i, i) = 1.0;
    for (int j = i + 1; j < dim; ++j) {
      const ScaledComplex k = normalized_poly_kernel(n, layer[i], layer[j]);
      const ScaledComplex scaled(k.log_modulus() - 0.5 * (log_q[i] + log_q[j]), k.phase());
      const cplx v = k.is_zero() ? cplx(0.0) : scaled.to_complex();
      g(i, j) = v;
      g(j, i) = std::conj(v);
    }
  }
  return g;
}

double mz_quadratic_form_gap(int n, std::span<const Point> layer, const HermitianMatrix& frame,
                             int samples, std::uint64_t seed) {
  if (frame.dim() != n + 1) {
    throw std::invalid_argument("mz_quadratic_form_gap: frame dimension does not match degree");
  }
  std::mt19937_64 rng(seed);
  std::normal_distribution<double> normal;
  std::vector<double> kdiag(layer.size());
  for (std::size_t p = 0; p < layer.size(); ++p) {
    kdiag[p] = normalized_poly_kernel(n, layer[p], layer[p]).to_complex().real();
  }
  double worst = 0.0;
  for (int s = 0; s < samples; ++s) {
    std::vector<cplx> a(n + 1);
    for (auto& ak : a) {
      ak = {normal(rng), normal(rng)};
    }
    const CoefficientVector coeffs(a);
    double direct = 0.0;
    for (std::size_t p = 0; p < layer.size(); ++p) {
      direct += std::norm(coeffs.weighted_value(layer[p])) / kdiag[p];
    }
    const double via_matrix = frame.quadratic_form(a);
    worst = std::max(worst, std::fabs(via_matrix - direct) / std::fabs(direct));
  }
  return worst;
}

std::vector<FrameReport> mz_report(const Family& family) {
  std::vector<FrameReport> rows;
  for (const auto& [n, layer] : family) {
    const HermitianMatrix s = mz_frame_matrix(n, layer.points());
    const double gap = mz_quadratic_form_gap(n, layer.points(), s, 5, 0x5eed0000u + n);
    if (gap > 1e-9) {
      throw NumericError("mz_report: frame matrix disagrees with pointwise sampling sum at n=" +
                         std::to_string(n));
    }
    const SpectralBounds b = extreme_eigenvalues(s);
    rows.push_back({n, layer.size(), b.lambda_min, b.lambda_max, b.lambda_max / b.lambda_min});
  }
  return rows;
}

std::vector<FrameReport> mz_report(const FamilySpec& spec) {
  if (spec.mode != Mode::sampling) {
    throw std::domain_error("mz_report: family must be in sampling mode");
  }
  return mz_report(build_family(spec));
}

std::vector<InterpReport> interp_report(const Family& family) {
  std::vector<InterpReport> rows;
  for (const auto& [n, layer] : family) {
    const SpectralBounds b = extreme_eigenvalues(gram_matrix(n, layer.points()));
    rows.push_back({n, layer.size(), b.lambda_min, b.lambda_max});
  }
  return rows;
}

std::vector<InterpReport> interp_report(const FamilySpec& spec) {
  if (spec.mode != Mode::interpolation) {
    throw std::domain_error("interp_report: family must be in interpolation mode");
  }
  return interp_report(build_family(spec));
}

PointSet closest_lattice_points(const LatticeSpec& lattice, int count) {
  if (count < 1) {
    throw std::domain_error("closest_lattice_points: count must be positive");
  }
  const auto& b = lattice.basis();
  const double span = std::max(std::hypot(b[0][0], b[1][0]), std::hypot(b[0][1], b[1][1]));
  double rho = std::sqrt(count / (kPi * lattice.density())) + 2.0 * span;
  PointSet disk = lattice_points_in_disk(lattice, rho);
  while (disk.size() < static_cast<std::size_t>(count)) {
    rho *= 2.0;
    disk = lattice_points_in_disk(lattice, rho);
  }
  std::vector<Point> pts(disk.begin(), disk.end());
  // Squared norms of equal-modulus lattice points may differ in the last bits.
  const double tol = 1e-12 * rho * rho;
  std::sort(pts.begin(), pts.end(), [tol](const Point& x, const Point& y) {
    const double nx = x.norm_sq();
    const double ny = y.norm_sq();
    if (std::fabs(nx - ny) > tol) {
      return nx < ny;
    }
    return x.re < y.re || (x.re == y.re && x.im < y.im);
  });
  pts.resize(count);
  return PointSet(std::move(pts));
}

std::vector<FrameReport> square_case_scan(const LatticeSpec& lattice, std::span<const int> degrees) {
  if (degrees.empty()) {
    throw std::invalid_argument("square_case_scan: empty degree list");
  }
  std::vector<FrameReport> rows;
  for (int n : degrees) {
    if (n < 0) {
      throw std::domain_error("square_case_scan: negative degree");
    }
    const PointSet layer = closest_lattice_points(lattice, n + 1);
    const SpectralBounds b = extreme_eigenvalues(mz_frame_matrix(n, layer.points()));
    rows.push_back({n, layer.size(), b.lambda_min, b.lambda_max, b.lambda_max / b.lambda_min});
  }
  return rows;
}

} // namespace fockmz
