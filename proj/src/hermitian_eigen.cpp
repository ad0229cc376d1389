#include <algorithm>
#include <cmath>
#include <limits>
#include <stdexcept>

#include "fockmz/errors.hpp"
#include "fockmz/spectral.hpp"

namespace fockmz {

namespace {

using cplx = std::complex<double>;

// A = Q T Q^H with T real symmetric tridiagonal after a diagonal unitary
// rescaling. Q is stored as the list of Householder reflectors
// H_k = I - tau_k v_k v_k^H acting on indices k+1..n-1.
struct Tridiagonal {
  std::vector<double> diag;
  std::vector<double> off;           // off[i] couples i and i+1, size n-1
  std::vector<cplx> phase;           // d_i of the rescaling T_real = D^H T D
  std::vector<std::vector<cplx>> v;  // reflector vectors
  std::vector<double> tau;
};

Tridiagonal reduce(const HermitianMatrix& m) {
  const int n = m.dim();
  std::vector<cplx> a(static_cast<std::size_t>(n) * n);
  auto at = [&](int i, int j) -> cplx& { return a[static_cast<std::size_t>(i) * n + j]; };
  for (int i = 0; i < n; ++i) {
    for (int j = 0; j < n; ++j) {
      at(i, j) = m(i, j);
    }
  }

  Tridiagonal t;
  t.diag.assign(n, 0.0);
  t.off.assign(std::max(n - 1, 0), 0.0);
  t.phase.assign(n, cplx(1.0, 0.0));
  std::vector<cplx> sub(std::max(n - 1, 0));

  for (int k = 0; k + 2 < n; ++k) {
    const int len = n - k - 1;
    std::vector<cplx> x(len);
    double xnorm_sq = 0.0;
    for (int i = 0; i < len; ++i) {
      x[i] = at(k + 1 + i, k);
      xnorm_sq += std::norm(x[i]);
    }
    const double xnorm = std::sqrt(xnorm_sq);
    if (xnorm == 0.0) {
      sub[k] = 0.0;
      t.v.emplace_back();
      t.tau.push_back(0.0);
      continue;
    }
    const double ax0 = std::abs(x[0]);
    const cplx unit = ax0 > 0.0 ? x[0] / ax0 : cplx(1.0, 0.0);
    const cplx beta = -unit * xnorm;
    std::vector<cplx> v = x;
    v[0] -= beta;
    double vnorm_sq = 0.0;
    for (const auto& vi : v) {
      vnorm_sq += std::norm(vi);
    }
    const double tau = 2.0 / vnorm_sq;

    // Trailing block update A22 <- H A22 H via w = p - (tau/2)(v^H p) v.
    std::vector<cplx> p(len, 0.0);
    for (int i = 0; i < len; ++i) {
      cplx s = 0.0;
      for (int j = 0; j < len; ++j) {
        s += at(k + 1 + i, k + 1 + j) * v[j];
      }
      p[i] = tau * s;
    }
    cplx vhp = 0.0;
    for (int i = 0; i < len; ++i) {
      vhp += std::conj(v[i]) * p[i];
    }
    const double c = 0.5 * tau * vhp.real();
    std::vector<cplx> w(len);
    for (int i = 0; i < len; ++i) {
      w[i] = p[i] - c * v[i];
    }
    for (int i = 0; i < len; ++i) {
      for (int j = 0; j < len; ++j) {
        at(k + 1 + i, k + 1 + j) -= v[i] * std::conj(w[j]) + w[i] * std::conj(v[j]);
      }
    }
    for (int i = 0; i < len; ++i) {
      at(k + 1 + i, k) = i == 0 ? beta : cplx(0.0);
      at(k, k + 1 + i) = i == 0 ? std::conj(beta) : cplx(0.0);
    }
    sub[k] = beta;
    t.v.push_back(std::move(v));
    t.tau.push_back(tau);
  }
  if (n >= 2) {
    sub[n - 2] = at(n - 1, n - 2);
  }
  for (int i = 0; i < n; ++i) {
    t.diag[i] = at(i, i).real();
  }
  for (int k = 0; k + 1 < n; ++k) {
    const double mag = std::abs(sub[k]);
    t.off[k] = mag;
    t.phase[k + 1] = mag > 0.0 ? t.phase[k] * (sub[k] / mag) : t.phase[k];
  }
  return t;
}

// Implicit-shift QL on a real symmetric tridiagonal matrix, eigenvalues only.
std::vector<double> tridiagonal_ql(std::vector<double> d, std::vector<double> off) {
  const int n = static_cast<int>(d.size());
  std::vector<double> e(n, 0.0);
  std::copy(off.begin(), off.end(), e.begin());
  constexpr double eps = std::numeric_limits<double>::epsilon();
  const long max_iter = 50L * std::max(n, 1);
  long iter = 0;

  for (int l = 0; l < n; ++l) {
    int m = l;
    do {
      for (m = l; m < n - 1; ++m) {
        const double dd = std::fabs(d[m]) + std::fabs(d[m + 1]);
        if (std::fabs(e[m]) <= eps * dd) {
          break;
        }
      }
      if (m != l) {
        if (++iter > max_iter) {
          throw NumericError("eigensolver: QL iteration did not converge");
        }
        double g = (d[l + 1] - d[l]) / (2.0 * e[l]);
        double r = std::hypot(g, 1.0);
        g = d[m] - d[l] + e[l] / (g + std::copysign(r, g));
        double s = 1.0;
        double c = 1.0;
        double p = 0.0;
        int i = m - 1;
        for (; i >= l; --i) {
          double f = s * e[i];
          const double b = c * e[i];
          r = std::hypot(f, g);
          e[i + 1] = r;
          if (r == 0.0) {
            d[i + 1] -= p;
            e[m] = 0.0;
            break;
          }
          s = f / r;
          c = g / r;
          g = d[i + 1] - p;
          r = (d[i] - g) * s + 2.0 * c * b;
          p = s * r;
          d[i + 1] = g + p;
          g = c * r - b;
        }
        if (r == 0.0 && i >= l) {
          continue;
        }
        d[l] -= p;
        e[l] = g;
        e[m] = 0.0;
      }
    } while (m != l);
  }
  std::sort(d.begin(), d.end());
  return d;
}

// Inverse iteration on (T - sigma I) with partial pivoting; returns a unit vector.
std::vector<double> tridiagonal_eigenvector(const std::vector<double>& d,
                                            const std::vector<double>& off, double sigma) {
  const int n = static_cast<int>(d.size());
  if (n == 1) {
    return {1.0};
  }
  double tnorm = 0.0;
  for (int i = 0; i < n; ++i) {
    tnorm = std::max(tnorm, std::fabs(d[i]) + (i > 0 ? off[i - 1] : 0.0) +
                                (i + 1 < n ? off[i] : 0.0));
  }
  const double tiny = std::max(tnorm, 1.0) * std::numeric_limits<double>::epsilon();

  std::vector<double> u0(n), u1(n, 0.0), u2(n, 0.0), mult(n, 0.0);
  std::vector<char> swapped(n, 0);
  double cur0 = d[0] - sigma;
  double cur1 = off[0];
  for (int i = 0; i + 1 < n; ++i) {
    const double sub = off[i];
    const double nd = d[i + 1] - sigma;
    const double nsup = i + 2 < n ? off[i + 1] : 0.0;
    double r0, r1, r2, o0, o1, o2;
    if (std::fabs(sub) > std::fabs(cur0)) {
      swapped[i] = 1;
      r0 = sub, r1 = nd, r2 = nsup;
      o0 = cur0, o1 = cur1, o2 = 0.0;
    } else {
      r0 = cur0, r1 = cur1, r2 = 0.0;
      o0 = sub, o1 = nd, o2 = nsup;
    }
    if (std::fabs(r0) < tiny) {
      r0 = std::copysign(tiny, r0 == 0.0 ? 1.0 : r0);
    }
    const double mlt = o0 / r0;
    u0[i] = r0;
    u1[i] = r1;
    u2[i] = r2;
    mult[i] = mlt;
    cur0 = o1 - mlt * r1;
    cur1 = o2 - mlt * r2;
  }
  u0[n - 1] = std::fabs(cur0) < tiny ? std::copysign(tiny, cur0 == 0.0 ? 1.0 : cur0) : cur0;

  auto solve = [&](std::vector<double> rhs) {
    for (int i = 0; i + 1 < n; ++i) {
      if (swapped[i]) {
        std::swap(rhs[i], rhs[i + 1]);
      }
      rhs[i + 1] -= mult[i] * rhs[i];
    }
    std::vector<double> x(n);
    for (int i = n - 1; i >= 0; --i) {
      double s = rhs[i];
      if (i + 1 < n) {
        s -= u1[i] * x[i + 1];
      }
      if (i + 2 < n) {
        s -= u2[i] * x[i + 2];
      }
      x[i] = s / u0[i];
    }
    return x;
  };
  auto normalize = [](std::vector<double>& x) {
    double s = 0.0;
    for (double xi : x) {
      s += xi * xi;
    }
    s = std::sqrt(s);
    for (double& xi : x) {
      xi /= s;
    }
  };

  // Deterministic, non-degenerate start vector.
  std::vector<double> x(n);
  for (int i = 0; i < n; ++i) {
    x[i] = 1.0 + 0.5 * std::sin(1.0 + 0.7 * i);
  }
  normalize(x);
  for (int it = 0; it < 3; ++it) {
    x = solve(x);
    normalize(x);
  }
  return x;
}

std::vector<cplx> back_transform(const Tridiagonal& t, const std::vector<double>& y) {
  const int n = static_cast<int>(y.size());
  std::vector<cplx> v(n);
  for (int i = 0; i < n; ++i) {
    v[i] = t.phase[i] * y[i];
  }
  for (int k = static_cast<int>(t.v.size()) - 1; k >= 0; --k) {
    const auto& hv = t.v[k];
    if (hv.empty()) {
      continue;
    }
    cplx s = 0.0;
    for (std::size_t i = 0; i < hv.size(); ++i) {
      s += std::conj(hv[i]) * v[k + 1 + i];
    }
    s *= t.tau[k];
    for (std::size_t i = 0; i < hv.size(); ++i) {
      v[k + 1 + i] -= s * hv[i];
    }
  }
  return v;
}

double residual(const HermitianMatrix& m, const std::vector<cplx>& v, double lambda) {
  const auto mv = m.apply(v);
  double num = 0.0;
  double den = 0.0;
  for (std::size_t i = 0; i < v.size(); ++i) {
    num += std::norm(mv[i] - lambda * v[i]);
    den += std::norm(v[i]);
  }
  return std::sqrt(num / den);
}

} // namespace

std::vector<double> eigenvalues(const HermitianMatrix& m) {
  if (m.dim() < 1) {
    throw std::invalid_argument("eigenvalues: empty matrix");
  }
  const Tridiagonal t = reduce(m);
  return tridiagonal_ql(t.diag, t.off);
}

SpectralBounds extreme_eigenvalues(const HermitianMatrix& m) {
  if (m.dim() < 1) {
    throw std::invalid_argument("extreme_eigenvalues: empty matrix");
  }
  const Tridiagonal t = reduce(m);
  const std::vector<double> ev = tridiagonal_ql(t.diag, t.off);
  SpectralBounds out;
  out.lambda_min = ev.front();
  out.lambda_max = ev.back();
  for (double lambda : {out.lambda_min, out.lambda_max}) {
    const auto y = tridiagonal_eigenvector(t.diag, t.off, lambda);
    out.residual = std::max(out.residual, residual(m, back_transform(t, y), lambda));
  }
  return out;
}

} // namespace fockmz
