#pragma once

#include <optional>
#include <span>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

#include "holotel/numerics.hpp"

namespace holotel {

/// Identifies one real coordinate. theta/phi belong to the CP^n model
/// (index alpha = 1..n); position_x, position_y and squeeze are the optical
/// (x, y, r_1) coordinates, which only take part in area evaluations.
enum class CoordinateKind { theta, phi, position_x, position_y, squeeze };

struct CoordinateId {
  CoordinateKind kind = CoordinateKind::theta;
  int index = 1;

  static CoordinateId theta(int alpha) { return {CoordinateKind::theta, alpha}; }
  static CoordinateId phi(int alpha) { return {CoordinateKind::phi, alpha}; }
  static CoordinateId x() { return {CoordinateKind::position_x, 0}; }
  static CoordinateId y() { return {CoordinateKind::position_y, 0}; }
  static CoordinateId r(int mode) { return {CoordinateKind::squeeze, mode}; }

  /// "theta2", "phi1", "x", "y", "r1"
  static CoordinateId parse(std::string_view name);
  std::string name() const;
  bool is_manifold() const { return kind == CoordinateKind::theta || kind == CoordinateKind::phi; }

  friend bool operator==(const CoordinateId&, const CoordinateId&) = default;
};

/// Point z = (z_1..z_n), z_alpha = theta_alpha e^{i phi_alpha}, of the CP^n
/// control manifold. The model Hamiltonian is eps0 |n+1><n+1|; only its
/// eigenvector structure matters for holonomies, so eps0 is carried as
/// metadata.
class ControlPoint {
 public:
  explicit ControlPoint(int n);
  ControlPoint(std::vector<double> theta, std::vector<double> phi);

  int degeneracy() const { return static_cast<int>(theta_.size()); }
  int excited_level() const { return degeneracy() + 1; }
  double reference_energy() const { return reference_energy_; }

  double theta(int alpha) const { return theta_.at(static_cast<std::size_t>(alpha - 1)); }
  double phi(int alpha) const { return phi_.at(static_cast<std::size_t>(alpha - 1)); }
  Complex z(int alpha) const { return std::polar(theta(alpha), phi(alpha)); }

  double get(CoordinateId id) const;
  void set(CoordinateId id, double value);

  friend bool operator==(const ControlPoint&, const ControlPoint&) = default;

 private:
  std::vector<double> theta_;
  std::vector<double> phi_;
  double reference_energy_ = 1.0;
};

/// Integrands for the enclosed-area functionals of a rectangle.
enum class AreaKind {
  sphere_cosine,         ///< cos(theta) dtheta dphi
  half_solid_angle,      ///< sin(2 theta) dtheta dphi: half the solid angle on the (2 theta, phi) sphere
  plane_cosine,          ///< cos(first plane coordinate) du1 du2
  squeezed_exponential,  ///< 2 exp(-2 r) dx dr
};

std::string to_string(AreaKind kind);
AreaKind parse_area_kind(std::string_view name);

struct Interval {
  double lo = 0.0;
  double hi = 0.0;
  double width() const { return hi - lo; }
  friend bool operator==(const Interval&, const Interval&) = default;
};

/// Axis-aligned rectangle on a coordinate plane, traversed from the corner
/// (first.lo, second.lo). Orientation +1 runs along `first` before `second`
/// (counter-clockwise in the ordered plane); -1 is the reverse path.
struct LoopSpec {
  int n = 2;
  std::pair<CoordinateId, CoordinateId> plane{CoordinateId::theta(1), CoordinateId::phi(1)};
  Interval first;
  Interval second;
  std::vector<std::pair<CoordinateId, double>> fixed;
  int steps = 1024;
  int orientation = 1;
  AreaKind kind = AreaKind::half_solid_angle;

  static constexpr int kMinSteps = 16;

  /// Throws std::invalid_argument naming the offending field.
  void validate() const;
  bool on_manifold() const { return plane.first.is_manifold() && plane.second.is_manifold(); }
  /// Off-plane coordinates applied to the origin.
  ControlPoint base_point() const;

  friend bool operator==(const LoopSpec&, const LoopSpec&) = default;
};

struct HolonomyResult {
  ComplexMatrix matrix;        ///< n x n unitary on the degenerate subspace
  int steps = 0;               ///< steps per edge used for `matrix`
  double error_estimate = 0.0; ///< Richardson estimate from steps vs 2*steps (max-norm)
};

inline constexpr double kDefaultFdStep = 1e-5;

/// U(z) = U_1(z_1) ... U_n(z_n), U_a = exp(z_a |a><n+1| - conj(z_a) |n+1><a|).
ComplexMatrix unitary_at(const ControlPoint& p);

/// Degenerate block of U^dag dU/dmu by central differences.
ComplexMatrix connection_at(const ControlPoint& p, CoordinateId mu, double fd_step = kDefaultFdStep);

/// Closed discretization of the rectangle: 4*steps+1 points, first == last.
std::vector<ControlPoint> discretize(const LoopSpec& loop, int steps);

/// Ordered product of exp(sum_mu A^mu(midpoint) dz^mu) along `path`, later
/// steps multiplying from the left. Throws if the path is not closed.
ComplexMatrix path_ordered_exponential(std::span<const ControlPoint> path,
                                       double fd_step = kDefaultFdStep);

HolonomyResult holonomy(const LoopSpec& loop, double fd_step = kDefaultFdStep);

/// log2 of ||G_N - G_2N|| / ||G_2N - G_4N||, N = loop.steps.
double measured_convergence_order(const LoopSpec& loop, double fd_step = kDefaultFdStep);

double area(const LoopSpec& loop, AreaKind kind);
/// Area with first.hi -> first.hi + shift_first and second.hi -> second.hi + shift_second.
double perturbed_area(const LoopSpec& loop, AreaKind kind, double shift_first, double shift_second);

struct AreaGradient {
  double d_first_hi = 0.0;
  double d_second_hi = 0.0;
};
/// Analytic derivatives of the area with respect to the two upper edges.
AreaGradient area_gradient(const LoopSpec& loop, AreaKind kind);

enum class Edge { first_lo, first_hi, second_lo, second_hi };
/// |area(edge moved by shift) - area(loop)|
double flux_sensitivity(const LoopSpec& loop, AreaKind kind, Edge edge, double shift);

/// Closed-form holonomy for loops of the four analytically known families.
struct ClosedFormHolonomy {
  std::string family;  ///< "C1" .. "C4"
  double area = 0.0;   ///< unsigned enclosed area entering the exponent
  ComplexMatrix matrix;
};

/// Recognizes abelian (theta_b, phi_b) loops [C1], abelian (theta_c, phi_b)
/// loops at theta_b = pi/2 with b < c [C2], and (theta_b, theta_c) loops at
/// phi_b = 0 [C3] or phi_b = pi/2 [C4]. All other manifold coordinates must
/// be zero. Returns nullopt otherwise.
std::optional<ClosedFormHolonomy> closed_form_holonomy(const LoopSpec& loop);

}  // namespace holotel
