#pragma once

#include <complex>
#include <cstdint>
#include <span>
#include <vector>

#include "fockmz/fock.hpp"
#include "fockmz/pointsets.hpp"

namespace fockmz {

/// Dense Hermitian matrix, row-major.
class HermitianMatrix {
public:
  HermitianMatrix() = default;
  explicit HermitianMatrix(int dim);

  static HermitianMatrix identity(int dim);

  int dim() const { return dim_; }
  std::complex<double>& operator()(int i, int j) { return a_[index(i, j)]; }
  const std::complex<double>& operator()(int i, int j) const { return a_[index(i, j)]; }

  /// Replaces each pair (i, j), (j, i) by its Hermitian average and zeroes
  /// the imaginary part of the diagonal.
  void symmetrize();

  /// max |a_ij - conj(a_ji)|.
  double hermitian_defect() const;

  /// x^H A x.
  double quadratic_form(std::span<const std::complex<double>> x) const;
  std::vector<std::complex<double>> apply(std::span<const std::complex<double>> x) const;

private:
  std::size_t index(int i, int j) const {
    return static_cast<std::size_t>(i) * static_cast<std::size_t>(dim_) + static_cast<std::size_t>(j);
  }

  int dim_ = 0;
  std::vector<std::complex<double>> a_;
};

struct SpectralBounds {
  double lambda_min = 0.0;
  double lambda_max = 0.0;
  double residual = 0.0;  ///< max ||M v - lambda v|| / ||v|| over the two extreme pairs
};

/// All eigenvalues, ascending. Householder reduction to real tridiagonal
/// form followed by implicit-shift QL. Throws NumericError when QL exceeds
/// 50 * dim sweeps.
std::vector<double> eigenvalues(const HermitianMatrix& m);

/// Extreme eigenpairs; eigenvectors by inverse iteration on the tridiagonal
/// form, mapped back through the Householder reflectors.
SpectralBounds extreme_eigenvalues(const HermitianMatrix& m);

struct FrameReport {
  int n = 0;
  std::size_t count = 0;
  double a = 0.0;
  double b = 0.0;
  double cond = 0.0;  ///< b / a
};

struct InterpReport {
  int n = 0;
  std::size_t count = 0;
  double lambda_min = 0.0;
  double lambda_max = 0.0;
};

/// Frame matrix of the weighted sampling sum over a layer, in the e_k basis:
///   S_kl = sum_lambda conj(u_k(lambda)) u_l(lambda) / Q(n+1, pi |lambda|^2)
/// with u_k(lambda) = e_k(lambda) e^{-pi |lambda|^2 / 2}, so that
/// a^H S a = sum_lambda |p(lambda)|^2 / k_n(lambda, lambda).
HermitianMatrix mz_frame_matrix(int n, std::span<const Point> layer);

/// Gram matrix of normalized polynomial kernels,
///   G_{mu,lambda} = K_n(mu, lambda) / sqrt(q_lambda q_mu),  diagonal exactly 1.
HermitianMatrix gram_matrix(int n, std::span<const Point> layer);

/// Largest relative gap between a^H S a and the pointwise sum
/// sum_lambda |p(lambda) e^{-pi|lambda|^2/2}|^2 / K_n(lambda, lambda) over
/// `samples` random coefficient vectors drawn from `seed`.
double mz_quadratic_form_gap(int n, std::span<const Point> layer, const HermitianMatrix& frame,
                             int samples, std::uint64_t seed);

/// Frame bounds per layer. Each layer is also checked against the pointwise
/// quadratic-form path (5 random vectors); a gap above 1e-9 throws NumericError.
std::vector<FrameReport> mz_report(const Family& family);
/// Builds the family first; requires sampling mode.
std::vector<FrameReport> mz_report(const FamilySpec& spec);

std::vector<InterpReport> interp_report(const Family& family);
/// Builds the family first; requires interpolation mode.
std::vector<InterpReport> interp_report(const FamilySpec& spec);

/// The n+1 lattice points closest to the origin, ties broken on (|z|, re, im).
PointSet closest_lattice_points(const LatticeSpec& lattice, int count);

/// Frame bounds for layers of exactly n+1 points.
std::vector<FrameReport> square_case_scan(const LatticeSpec& lattice, std::span<const int> degrees);

} // namespace fockmz
