#include "fockmz/pointsets.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <stdexcept>

#include <json.hpp>

namespace fockmz {

namespace {

constexpr double kPi = std::numbers::pi;
constexpr int kBoundarySamples = 4096;

double interpolation_radicand(int n, double tau) {
  const double rn = std::sqrt(static_cast<double>(n));
  return n - rn * (std::sqrt(2.0 * std::log(static_cast<double>(n))) + tau);
}

bool lex_less(const Point& a, const Point& b) {
  return a.re < b.re || (a.re == b.re && a.im < b.im);
}

double dist(const Point& a, const Point& b) { return std::hypot(a.re - b.re, a.im - b.im); }

} // namespace

std::string_view to_string(Mode mode) {
  return mode == Mode::sampling ? "sampling" : "interpolation";
}

Mode parse_mode(std::string_view text) {
  if (text == "sampling") {
    return Mode::sampling;
  }
  if (text == "interpolation") {
    return Mode::interpolation;
  }
  throw std::invalid_argument("unknown mode '" + std::string(text) + "'");
}

LatticeSpec LatticeSpec::square(double alpha) {
  if (!(alpha > 0.0) || !std::isfinite(alpha)) {
    throw std::domain_error("lattice spacing must be positive and finite");
  }
  return LatticeSpec(Basis{{{alpha, 0.0}, {0.0, alpha}}}, alpha);
}

LatticeSpec LatticeSpec::from_basis(const Basis& basis) {
  for (const auto& row : basis) {
    for (double v : row) {
      if (!std::isfinite(v)) {
        throw std::domain_error("lattice basis must be finite");
      }
    }
  }
  const double det = basis[0][0] * basis[1][1] - basis[0][1] * basis[1][0];
  if (det == 0.0) {
    throw std::domain_error("lattice basis is singular");
  }
  const bool square = basis[0][1] == 0.0 && basis[1][0] == 0.0 && basis[0][0] == basis[1][1] &&
                      basis[0][0] > 0.0;
  return LatticeSpec(basis, square ? basis[0][0] : 0.0);
}

double LatticeSpec::density() const {
  const double det = basis_[0][0] * basis_[1][1] - basis_[0][1] * basis_[1][0];
  return 1.0 / std::fabs(det);
}

PointSet::PointSet(std::vector<Point> points) : points_(std::move(points)) {
  std::sort(points_.begin(), points_.end(), lex_less);
  if (std::adjacent_find(points_.begin(), points_.end()) != points_.end()) {
    throw std::invalid_argument("PointSet: duplicate point");
  }
}

void FamilySpec::validate() const {
  if (!(tau > 0.0) || !std::isfinite(tau)) {
    throw std::domain_error("tau must be positive and finite");
  }
  if (mode == Mode::sampling && !(lattice.density() > 1.0)) {
    throw std::domain_error("sampling mode requires lattice density > 1");
  }
  if (mode == Mode::interpolation && !(lattice.density() < 1.0)) {
    throw std::domain_error("interpolation mode requires lattice density < 1");
  }
  for (std::size_t i = 0; i < degrees.size(); ++i) {
    if (degrees[i] < 1) {
      throw std::domain_error("degrees must be positive");
    }
    if (i > 0 && degrees[i] <= degrees[i - 1]) {
      throw std::domain_error("degrees must be strictly increasing");
    }
    if (mode == Mode::interpolation) {
      truncation_radius(degrees[i], tau, mode);  // throws with the admissible minimum
    }
  }
}

int smallest_interpolation_degree(double tau) {
  // sqrt(n) - sqrt(2 ln n) is increasing for n >= 3, so past that point the
  // radicand changes sign at most once.
  int n = 3;
  while (interpolation_radicand(n, tau) <= 0.0) {
    n = n < (1 << 29) ? n * 2 : n + (1 << 29);
  }
  int lo = 3;
  int hi = n;
  while (lo < hi) {
    const int mid = lo + (hi - lo) / 2;
    if (interpolation_radicand(mid, tau) > 0.0) {
      hi = mid;
    } else {
      lo = mid + 1;
    }
  }
  if (lo == 3) {
    while (lo > 1 && interpolation_radicand(lo - 1, tau) > 0.0) {
      --lo;
    }
  }
  return lo;
}

double truncation_radius(int n, double tau, Mode mode) {
  if (n < 1) {
    throw std::domain_error("truncation_radius: degree must be at least 1");
  }
  if (!std::isfinite(tau)) {
    throw std::domain_error("truncation_radius: non-finite tau");
  }
  const double area =
      mode == Mode::sampling ? n + std::sqrt(static_cast<double>(n)) * tau
                             : interpolation_radicand(n, tau);
  if (!(area > 0.0)) {
    std::string msg = "truncation_radius: non-positive radicand for n=" + std::to_string(n);
    if (mode == Mode::interpolation) {
      msg += "; smallest admissible degree for this tau is " +
             std::to_string(smallest_interpolation_degree(tau));
    }
    throw std::domain_error(msg);
  }
  return std::sqrt(area / kPi);
}

PointSet lattice_points_in_disk(const LatticeSpec& lattice, double rho) {
  if (!(rho > 0.0) || !std::isfinite(rho)) {
    throw std::domain_error("lattice_points_in_disk: radius must be positive");
  }
  const auto& b = lattice.basis();
  const double det = b[0][0] * b[1][1] - b[0][1] * b[1][0];
  // Rows of the inverse basis bound the integer coordinates of any point with |p| <= rho.
  const double row_i = std::hypot(b[1][1], b[0][1]) / std::fabs(det);
  const double row_j = std::hypot(b[1][0], b[0][0]) / std::fabs(det);
  const long imax = static_cast<long>(std::floor(rho * row_i)) + 1;
  const long jmax = static_cast<long>(std::floor(rho * row_j)) + 1;
  const double rho_sq = rho * rho;

  std::vector<Point> pts;
  for (long i = -imax; i <= imax; ++i) {
    for (long j = -jmax; j <= jmax; ++j) {
      const Point p = lattice.at(i, j);
      if (p.norm_sq() <= rho_sq) {
        pts.push_back(p);
      }
    }
  }
  return PointSet(std::move(pts));
}

Family build_family(const FamilySpec& spec) {
  spec.validate();
  Family family;
  for (int n : spec.degrees) {
    family.emplace(n, lattice_points_in_disk(spec.lattice, truncation_radius(n, spec.tau, spec.mode)));
  }
  return family;
}

std::vector<CardinalityRow> cardinality_report(const Family& family) {
  if (family.empty()) {
    throw std::invalid_argument("cardinality_report: empty family");
  }
  std::vector<CardinalityRow> rows;
  rows.reserve(family.size());
  for (const auto& [n, layer] : family) {
    rows.push_back({n, layer.size(), static_cast<double>(layer.size()) / (n + 1.0)});
  }
  return rows;
}

LocalCounts local_count_diagnostics(const PointSet& layer, int n, double epsilon, double rho,
                                    double tau) {
  if (!(epsilon > 0.0 && epsilon < 1.0)) {
    throw std::domain_error("local_count_diagnostics: epsilon must lie in (0, 1)");
  }
  if (!(rho > 0.0)) {
    throw std::domain_error("local_count_diagnostics: rho must be positive");
  }
  LocalCounts out;
  if (layer.empty()) {
    return out;
  }

  const double bulk_sq = n * (1.0 - epsilon) / kPi;
  const double lo = n - std::sqrt(static_cast<double>(n)) * tau;
  const double hi = n + std::sqrt(static_cast<double>(n)) * tau;
  for (const Point& p : layer) {
    if (p.norm_sq() > bulk_sq) {
      ++out.outside_bulk_count;
    }
    const double area = kPi * p.norm_sq();
    if (area >= lo && area <= hi) {
      ++out.transition_count;
    }
  }

  for (std::size_t i = 0; i < layer.size(); ++i) {
    for (std::size_t j = i + 1; j < layer.size(); ++j) {
      out.min_separation = std::min(out.min_separation, dist(layer[i], layer[j]));
    }
  }

  auto count_near = [&](const Point& c) {
    std::size_t k = 0;
    for (const Point& p : layer) {
      if (dist(p, c) <= rho) {
        ++k;
      }
    }
    return k;
  };
  for (const Point& p : layer) {
    out.max_disk_count = std::max(out.max_disk_count, count_near(p));
  }
  double xmin = layer[0].re, xmax = layer[0].re, ymin = layer[0].im, ymax = layer[0].im;
  for (const Point& p : layer) {
    xmin = std::min(xmin, p.re);
    xmax = std::max(xmax, p.re);
    ymin = std::min(ymin, p.im);
    ymax = std::max(ymax, p.im);
  }
  const double step = 0.5 * rho;
  const long nx = static_cast<long>(std::ceil((xmax - xmin + 2.0 * rho) / step));
  const long ny = static_cast<long>(std::ceil((ymax - ymin + 2.0 * rho) / step));
  for (long ix = 0; ix <= nx; ++ix) {
    for (long iy = 0; iy <= ny; ++iy) {
      const Point c{xmin - rho + ix * step, ymin - rho + iy * step};
      out.max_disk_count = std::max(out.max_disk_count, count_near(c));
    }
  }
  return out;
}

double hausdorff_distance(const PointSet& s, const PointSet& t, Point center, double radius) {
  if (!(radius > 0.0)) {
    throw std::domain_error("hausdorff_distance: radius must be positive");
  }
  std::vector<Point> boundary;
  boundary.reserve(kBoundarySamples);
  for (int k = 0; k < kBoundarySamples; ++k) {
    const double th = 2.0 * kPi * k / kBoundarySamples;
    boundary.push_back({center.re + radius * std::cos(th), center.im + radius * std::sin(th)});
  }
  auto clip = [&](const PointSet& set) {
    std::vector<Point> out;
    for (const Point& p : set) {
      if (dist(p, center) <= radius) {
        out.push_back(p);
      }
    }
    return out;
  };
  const std::vector<Point> cs = clip(s);
  const std::vector<Point> ct = clip(t);

  // Boundary samples belong to both sides, so only interior points can be
  // far from the other set.
  auto directed = [&](const std::vector<Point>& from, const std::vector<Point>& to) {
    double worst = 0.0;
    for (const Point& a : from) {
      double best = std::numeric_limits<double>::infinity();
      for (const Point& b : to) {
        best = std::min(best, dist(a, b));
      }
      for (const Point& b : boundary) {
        best = std::min(best, dist(a, b));
      }
      worst = std::max(worst, best);
    }
    return worst;
  };
  return std::max(directed(cs, ct), directed(ct, cs));
}

std::string family_spec_to_json(const FamilySpec& spec) {
  nlohmann::ordered_json j;
  j["version"] = 1;
  if (spec.lattice.is_square()) {
    j["lattice"] = {{"alpha", spec.lattice.alpha()}};
  } else {
    const auto& b = spec.lattice.basis();
    j["lattice"] = {{"basis", {{b[0][0], b[0][1]}, {b[1][0], b[1][1]}}}};
  }
  j["mode"] = std::string(to_string(spec.mode));
  j["tau"] = spec.tau;
  j["degrees"] = spec.degrees;
  return j.dump() + "\n";
}

FamilySpec family_spec_from_json(std::string_view text) {
  FamilySpec spec;
  try {
    const auto j = nlohmann::json::parse(text);
    if (j.at("version").get<int>() != 1) {
      throw std::invalid_argument("unsupported FamilySpec version");
    }
    const auto& lat = j.at("lattice");
    if (lat.contains("basis")) {
      const auto rows = lat.at("basis").get<std::vector<std::vector<double>>>();
      if (rows.size() != 2 || rows[0].size() != 2 || rows[1].size() != 2) {
        throw std::invalid_argument("lattice basis must be 2x2");
      }
      spec.lattice = LatticeSpec::from_basis({{{rows[0][0], rows[0][1]}, {rows[1][0], rows[1][1]}}});
    } else {
      spec.lattice = LatticeSpec::square(lat.at("alpha").get<double>());
    }
    spec.mode = parse_mode(j.at("mode").get<std::string>());
    spec.tau = j.at("tau").get<double>();
    spec.degrees = j.at("degrees").get<std::vector<int>>();
  } catch (const nlohmann::json::exception& e) {
    throw std::invalid_argument(std::string("malformed FamilySpec: ") + e.what());
  }
  spec.validate();
  return spec;
}

std::string point_set_to_json(const PointSet& points) {
  nlohmann::json j = nlohmann::json::array();
  for (const Point& p : points) {
    j.push_back({p.re, p.im});
  }
  return j.dump() + "\n";
}

PointSet point_set_from_json(std::string_view text) {
  std::vector<Point> pts;
  try {
    const auto j = nlohmann::json::parse(text);
    for (const auto& pair : j) {
      if (pair.size() != 2) {
        throw std::invalid_argument("point must be an [re, im] pair");
      }
      pts.push_back({pair[0].get<double>(), pair[1].get<double>()});
    }
  } catch (const nlohmann::json::exception& e) {
    throw std::invalid_argument(std::string("malformed point set: ") + e.what());
  }
  return PointSet(std::move(pts));
}

} // namespace fockmz
