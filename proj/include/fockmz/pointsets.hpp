#pragma once

#include <array>
#include <limits>
#include <map>
#include <span>
#include <string>
#include <string_view>
#include <vector>

#include "fockmz/fock.hpp"

namespace fockmz {

enum class Mode { sampling, interpolation };

std::string_view to_string(Mode mode);
Mode parse_mode(std::string_view text);

/// Planar lattice {i b_0 + j b_1 : i, j in Z}; b_0, b_1 are the basis columns.
class LatticeSpec {
public:
  using Basis = std::array<std::array<double, 2>, 2>;  // basis[row][col]

  /// alpha * Z^2.
  static LatticeSpec square(double alpha);
  static LatticeSpec from_basis(const Basis& basis);

  const Basis& basis() const { return basis_; }
  /// Spacing for square lattices; 0 for a general basis.
  double alpha() const { return alpha_; }
  bool is_square() const { return alpha_ > 0.0; }
  double density() const;

  Point at(long i, long j) const {
    return {i * basis_[0][0] + j * basis_[0][1], i * basis_[1][0] + j * basis_[1][1]};
  }

private:
  LatticeSpec(const Basis& basis, double alpha) : basis_(basis), alpha_(alpha) {}

  Basis basis_{};
  double alpha_ = 0.0;
};

/// Finite point configuration, sorted by (re, im), without duplicates.
class PointSet {
public:
  PointSet() = default;
  /// Sorts; throws std::invalid_argument on duplicate points.
  explicit PointSet(std::vector<Point> points);

  std::span<const Point> points() const { return points_; }
  std::size_t size() const { return points_.size(); }
  bool empty() const { return points_.empty(); }
  const Point& operator[](std::size_t i) const { return points_[i]; }

  auto begin() const { return points_.begin(); }
  auto end() const { return points_.end(); }

  friend bool operator==(const PointSet&, const PointSet&) = default;

private:
  std::vector<Point> points_;
};

struct FamilySpec {
  LatticeSpec lattice = LatticeSpec::square(0.95);
  Mode mode = Mode::sampling;
  double tau = 6.0;
  std::vector<int> degrees;  ///< sorted, positive, distinct

  /// Throws std::domain_error when an invariant fails, including a
  /// non-positive interpolation radicand for any listed degree.
  void validate() const;
};

using Family = std::map<int, PointSet>;

/// Radius with pi rho^2 = n + sqrt(n) tau (sampling) or
/// n - sqrt(n)(sqrt(2 ln n) + tau) (interpolation).
double truncation_radius(int n, double tau, Mode mode);

/// Smallest n such that the interpolation radicand is positive for all m >= n.
int smallest_interpolation_degree(double tau);

/// Lattice points in the closed disk |z| <= rho.
PointSet lattice_points_in_disk(const LatticeSpec& lattice, double rho);

Family build_family(const FamilySpec& spec);

struct CardinalityRow {
  int n = 0;
  std::size_t count = 0;
  double ratio = 0.0;  ///< count / (n + 1)
};

std::vector<CardinalityRow> cardinality_report(const Family& family);

struct LocalCounts {
  std::size_t max_disk_count = 0;
  std::size_t outside_bulk_count = 0;
  std::size_t transition_count = 0;
  double min_separation = std::numeric_limits<double>::infinity();
};

/// Counting diagnostics for one layer.
///
/// max_disk_count: largest number of layer points within distance rho of a
/// center, centers being the layer points plus a grid of spacing rho/2.
/// outside_bulk_count: points with |lambda|^2 > n (1 - epsilon)/pi.
/// transition_count: points with n - sqrt(n) tau <= pi |lambda|^2 <= n + sqrt(n) tau.
LocalCounts local_count_diagnostics(const PointSet& layer, int n, double epsilon, double rho,
                                    double tau);

/// Symmetric Hausdorff distance between (s cap B) u dB and (t cap B) u dB,
/// B the closed disk, dB discretized by 4096 samples.
double hausdorff_distance(const PointSet& s, const PointSet& t, Point center, double radius);

// JSON documents. FamilySpec:
//   {"version":1, "lattice":{"alpha":0.95}, "mode":"sampling", "tau":6.0, "degrees":[25,50]}
// A general lattice writes "basis":[[b00,b01],[b10,b11]] in place of "alpha".
// PointSet: [[re, im], ...].
std::string family_spec_to_json(const FamilySpec& spec);
FamilySpec family_spec_from_json(std::string_view text);
std::string point_set_to_json(const PointSet& points);
PointSet point_set_from_json(std::string_view text);

} // namespace fockmz
