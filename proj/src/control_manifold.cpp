#include "holotel/control_manifold.hpp"

#include <algorithm>
#include <cmath>
#include <functional>
#include <numbers>
#include <stdexcept>
#include <string>

namespace holotel {
namespace {

constexpr double kPi = std::numbers::pi;

int parse_index(std::string_view digits, std::string_view whole) {
  if (digits.empty() || !std::all_of(digits.begin(), digits.end(), [](char c) { return c >= '0' && c <= '9'; })) {
    throw std::invalid_argument("unknown coordinate '" + std::string(whole) + "'");
  }
  if (digits.size() > 4 || digits.front() == '0') {
    throw std::invalid_argument("bad coordinate index in '" + std::string(whole) + "'");
  }
  return std::stoi(std::string(digits));
}

// Closed interval a coordinate may take; perturbed rectangles must stay inside.
Interval coordinate_domain(CoordinateId id) {
  switch (id.kind) {
    case CoordinateKind::theta: return {0.0, kPi};
    case CoordinateKind::phi: return {0.0, 2.0 * kPi};
    case CoordinateKind::squeeze: return {0.0, INFINITY};
    default: return {-INFINITY, INFINITY};
  }
}

bool inside(Interval domain, Interval iv) {
  constexpr double slack = 1e-12;
  return iv.lo >= domain.lo - slack && iv.hi <= domain.hi + slack;
}

// A rectangle area is weight(u) du dv integrated over the box, where u is
// one of the two plane coordinates. `weighted_first` tells which.
struct SeparableIntegrand {
  bool weighted_first;
  std::function<double(double)> weight;
  std::function<double(double)> antiderivative;
};

SeparableIntegrand integrand_for(const LoopSpec& loop, AreaKind kind) {
  const auto [a, b] = loop.plane;
  auto theta_first = [&]() {
    if (a.kind == CoordinateKind::theta && b.kind == CoordinateKind::phi) return true;
    if (a.kind == CoordinateKind::phi && b.kind == CoordinateKind::theta) return false;
    throw std::invalid_argument("kind: " + to_string(kind) + " needs a (theta, phi) plane");
  };
  switch (kind) {
    case AreaKind::sphere_cosine:
      return {theta_first(), [](double u) { return std::cos(u); }, [](double u) { return std::sin(u); }};
    case AreaKind::half_solid_angle:
      return {theta_first(), [](double u) { return std::sin(2.0 * u); },
              [](double u) { return -0.5 * std::cos(2.0 * u); }};
    case AreaKind::plane_cosine:
      return {true, [](double u) { return std::cos(u); }, [](double u) { return std::sin(u); }};
    case AreaKind::squeezed_exponential: {
      bool first;
      if (a.kind == CoordinateKind::squeeze && b.kind != CoordinateKind::squeeze) first = true;
      else if (b.kind == CoordinateKind::squeeze && a.kind != CoordinateKind::squeeze) first = false;
      else throw std::invalid_argument("kind: squeezed-exponential needs exactly one r coordinate in the plane");
      return {first, [](double r) { return 2.0 * std::exp(-2.0 * r); },
              [](double r) { return -std::exp(-2.0 * r); }};
    }
  }
  throw std::invalid_argument("kind: unknown area kind");
}

double rectangle_area(const SeparableIntegrand& f, Interval first, Interval second) {
  const Interval weighted = f.weighted_first ? first : second;
  const Interval other = f.weighted_first ? second : first;
  return (f.antiderivative(weighted.hi) - f.antiderivative(weighted.lo)) * other.width();
}

void check_in_domain(const LoopSpec& loop, Interval first, Interval second) {
  if (!inside(coordinate_domain(loop.plane.first), first) ||
      !inside(coordinate_domain(loop.plane.second), second)) {
    throw std::domain_error("perturbed rectangle leaves the coordinate domain");
  }
}

ControlPoint midpoint(const ControlPoint& a, const ControlPoint& b) {
  const int n = a.degeneracy();
  std::vector<double> th(static_cast<std::size_t>(n)), ph(static_cast<std::size_t>(n));
  for (int k = 1; k <= n; ++k) {
    th[static_cast<std::size_t>(k - 1)] = 0.5 * (a.theta(k) + b.theta(k));
    ph[static_cast<std::size_t>(k - 1)] = 0.5 * (a.phi(k) + b.phi(k));
  }
  return ControlPoint(std::move(th), std::move(ph));
}

std::vector<double> uniform_grid(Interval iv, int steps) {
  std::vector<double> g(static_cast<std::size_t>(steps) + 1);
  for (int s = 0; s <= steps; ++s) g[static_cast<std::size_t>(s)] = iv.lo + iv.width() * s / steps;
  g.back() = iv.hi;
  return g;
}

}  // namespace

// ---------------------------------------------------------------- coordinates

CoordinateId CoordinateId::parse(std::string_view name) {
  if (name == "x") return x();
  if (name == "y") return y();
  if (name.starts_with("theta")) return theta(parse_index(name.substr(5), name));
  if (name.starts_with("phi")) return phi(parse_index(name.substr(3), name));
  if (name.starts_with("r")) return r(parse_index(name.substr(1), name));
  throw std::invalid_argument("unknown coordinate '" + std::string(name) + "'");
}

std::string CoordinateId::name() const {
  switch (kind) {
    case CoordinateKind::theta: return "theta" + std::to_string(index);
    case CoordinateKind::phi: return "phi" + std::to_string(index);
    case CoordinateKind::position_x: return "x";
    case CoordinateKind::position_y: return "y";
    case CoordinateKind::squeeze: return "r" + std::to_string(index);
  }
  return "?";
}

std::string to_string(AreaKind kind) {
  switch (kind) {
    case AreaKind::sphere_cosine: return "sphere-cosine";
    case AreaKind::half_solid_angle: return "half-solid-angle";
    case AreaKind::plane_cosine: return "plane-cosine";
    case AreaKind::squeezed_exponential: return "squeezed-exponential";
  }
  return "?";
}

AreaKind parse_area_kind(std::string_view name) {
  if (name == "sphere-cosine") return AreaKind::sphere_cosine;
  if (name == "half-solid-angle") return AreaKind::half_solid_angle;
  if (name == "plane-cosine") return AreaKind::plane_cosine;
  if (name == "squeezed-exponential") return AreaKind::squeezed_exponential;
  throw std::invalid_argument("unknown area kind '" + std::string(name) + "'");
}

// ------------------------------------------------------------- control point

ControlPoint::ControlPoint(int n)
    : theta_(static_cast<std::size_t>(n), 0.0), phi_(static_cast<std::size_t>(n), 0.0) {
  if (n < 1) throw std::invalid_argument("ControlPoint: degeneracy must be positive");
}

ControlPoint::ControlPoint(std::vector<double> theta, std::vector<double> phi)
    : theta_(std::move(theta)), phi_(std::move(phi)) {
  if (theta_.empty() || theta_.size() != phi_.size()) {
    throw std::invalid_argument("ControlPoint: theta and phi need the same positive length");
  }
}

double ControlPoint::get(CoordinateId id) const {
  if (id.kind == CoordinateKind::theta) return theta(id.index);
  if (id.kind == CoordinateKind::phi) return phi(id.index);
  throw std::invalid_argument("coordinate " + id.name() + " is not part of the CP^n model");
}

void ControlPoint::set(CoordinateId id, double value) {
  if (!id.is_manifold() || id.index < 1 || id.index > degeneracy()) {
    throw std::invalid_argument("coordinate " + id.name() + " is not part of this CP^n model");
  }
  auto& target = id.kind == CoordinateKind::theta ? theta_ : phi_;
  target[static_cast<std::size_t>(id.index - 1)] = value;
}

// ----------------------------------------------------------------- loop spec

void LoopSpec::validate() const {
  if (n < 1 || n > 63) throw std::invalid_argument("n: degeneracy must be in [1, 63]");
  auto check_coord = [&](CoordinateId id, const std::string& field) {
    if (id.is_manifold() && (id.index < 1 || id.index > n)) {
      throw std::invalid_argument(field + ": coordinate " + id.name() + " outside n=" + std::to_string(n));
    }
    if (id.kind == CoordinateKind::squeeze && id.index < 1) {
      throw std::invalid_argument(field + ": bad squeeze index");
    }
  };
  check_coord(plane.first, "plane");
  check_coord(plane.second, "plane");
  if (plane.first == plane.second) throw std::invalid_argument("plane: coordinates must differ");
  if (plane.first.is_manifold() != plane.second.is_manifold()) {
    throw std::invalid_argument("plane: cannot mix CP^n and optical coordinates");
  }
  for (const auto* iv : {&first, &second}) {
    if (!std::isfinite(iv->lo) || !std::isfinite(iv->hi) || iv->lo > iv->hi) {
      throw std::invalid_argument("bounds: each interval needs finite lo <= hi");
    }
  }
  if (!inside(coordinate_domain(plane.first), first) || !inside(coordinate_domain(plane.second), second)) {
    throw std::invalid_argument("bounds: rectangle leaves the coordinate domain");
  }
  for (std::size_t k = 0; k < fixed.size(); ++k) {
    const auto& [id, value] = fixed[k];
    check_coord(id, "fixed");
    if (id == plane.first || id == plane.second) {
      throw std::invalid_argument("fixed: " + id.name() + " is a plane coordinate");
    }
    if (!std::isfinite(value)) throw std::invalid_argument("fixed: " + id.name() + " is not finite");
    for (std::size_t j = 0; j < k; ++j) {
      if (fixed[j].first == id) throw std::invalid_argument("fixed: duplicate coordinate " + id.name());
    }
  }
  if (steps < kMinSteps) throw std::invalid_argument("steps: must be >= " + std::to_string(kMinSteps));
  if (orientation != 1 && orientation != -1) throw std::invalid_argument("orientation: must be +1 or -1");
  (void)integrand_for(*this, kind);
}

ControlPoint LoopSpec::base_point() const {
  ControlPoint p(n);
  for (const auto& [id, value] : fixed) {
    if (id.is_manifold()) p.set(id, value);
  }
  return p;
}

// ------------------------------------------------------------------- U and A

ComplexMatrix unitary_at(const ControlPoint& p) {
  const int n = p.degeneracy();
  const Eigen::Index dim = n + 1;
  ComplexMatrix u = ComplexMatrix::Identity(dim, dim);
  for (int alpha = 1; alpha <= n; ++alpha) {
    const Complex z = p.z(alpha);
    if (z == Complex{}) continue;
    ComplexMatrix g = ComplexMatrix::Zero(dim, dim);
    g(alpha - 1, n) = z;
    g(n, alpha - 1) = -std::conj(z);
    u = u * expm_anti_hermitian(g);
  }
  return u;
}

ComplexMatrix connection_at(const ControlPoint& p, CoordinateId mu, double fd_step) {
  if (!(fd_step >= 1e-7 && fd_step <= 1e-3)) {
    throw std::invalid_argument("connection_at: fd_step must lie in [1e-7, 1e-3]");
  }
  if (!mu.is_manifold() || mu.index < 1 || mu.index > p.degeneracy()) {
    throw std::invalid_argument("connection_at: coordinate " + mu.name() + " not in model");
  }
  ControlPoint plus = p, minus = p;
  plus.set(mu, p.get(mu) + fd_step);
  minus.set(mu, p.get(mu) - fd_step);
  const ComplexMatrix du = (unitary_at(plus) - unitary_at(minus)) / (2.0 * fd_step);
  const int n = p.degeneracy();
  return (unitary_at(p).adjoint() * du).topLeftCorner(n, n);
}

// ---------------------------------------------------------------- holonomies

std::vector<ControlPoint> discretize(const LoopSpec& loop, int steps) {
  if (!loop.on_manifold()) throw std::invalid_argument("discretize: loop plane is not on the CP^n manifold");
  const auto g1 = uniform_grid(loop.first, steps);
  const auto g2 = uniform_grid(loop.second, steps);
  const ControlPoint base = loop.base_point();
  const auto [c1, c2] = loop.plane;
  auto at = [&](double u, double v) {
    ControlPoint p = base;
    p.set(c1, u);
    p.set(c2, v);
    return p;
  };
  const auto N = static_cast<std::size_t>(steps);
  std::vector<ControlPoint> path;
  path.reserve(4 * N + 1);
  for (std::size_t s = 0; s < N; ++s) path.push_back(at(g1[s], loop.second.lo));
  for (std::size_t s = 0; s < N; ++s) path.push_back(at(loop.first.hi, g2[s]));
  for (std::size_t s = 0; s < N; ++s) path.push_back(at(g1[N - s], loop.second.hi));
  for (std::size_t s = 0; s < N; ++s) path.push_back(at(loop.first.lo, g2[N - s]));
  path.push_back(path.front());
  if (loop.orientation < 0) std::reverse(path.begin(), path.end());
  return path;
}

ComplexMatrix path_ordered_exponential(std::span<const ControlPoint> path, double fd_step) {
  if (path.size() < 2 || !(path.front() == path.back())) {
    throw std::invalid_argument("path_ordered_exponential: path is not closed");
  }
  const int n = path.front().degeneracy();
  ComplexMatrix result = ComplexMatrix::Identity(n, n);
  for (std::size_t k = 0; k + 1 < path.size(); ++k) {
    const ControlPoint& a = path[k];
    const ControlPoint& b = path[k + 1];
    ComplexMatrix generator = ComplexMatrix::Zero(n, n);
    bool moved = false;
    const ControlPoint mid = midpoint(a, b);
    for (int alpha = 1; alpha <= n; ++alpha) {
      for (CoordinateId mu : {CoordinateId::theta(alpha), CoordinateId::phi(alpha)}) {
        const double dz = b.get(mu) - a.get(mu);
        if (dz == 0.0) continue;
        generator += connection_at(mid, mu, fd_step) * dz;
        moved = true;
      }
    }
    if (!moved) continue;
    // The finite-difference connection is anti-Hermitian only up to O(h^2).
    generator = 0.5 * (generator - generator.adjoint());
    result = expm_anti_hermitian(generator) * result;
  }
  return result;
}

HolonomyResult holonomy(const LoopSpec& loop, double fd_step) {
  loop.validate();
  if (!loop.on_manifold()) throw std::invalid_argument("holonomy: loop plane is not on the CP^n manifold");
  const auto coarse = discretize(loop, loop.steps);
  const auto fine = discretize(loop, 2 * loop.steps);
  HolonomyResult out;
  out.matrix = path_ordered_exponential(coarse, fd_step);
  const ComplexMatrix refined = path_ordered_exponential(fine, fd_step);
  // Midpoint steps are second order: err(N) ~ (4/3) |G_N - G_2N|.
  out.error_estimate = 4.0 / 3.0 * max_norm(out.matrix - refined);
  out.steps = loop.steps;
  return out;
}

double measured_convergence_order(const LoopSpec& loop, double fd_step) {
  loop.validate();
  const ComplexMatrix g1 = path_ordered_exponential(discretize(loop, loop.steps), fd_step);
  const ComplexMatrix g2 = path_ordered_exponential(discretize(loop, 2 * loop.steps), fd_step);
  const ComplexMatrix g4 = path_ordered_exponential(discretize(loop, 4 * loop.steps), fd_step);
  return std::log2(max_norm(g1 - g2) / max_norm(g2 - g4));
}

// --------------------------------------------------------------------- areas

double area(const LoopSpec& loop, AreaKind kind) {
  return rectangle_area(integrand_for(loop, kind), loop.first, loop.second);
}

double perturbed_area(const LoopSpec& loop, AreaKind kind, double shift_first, double shift_second) {
  if (std::abs(shift_first) > 0.1 || std::abs(shift_second) > 0.1) {
    throw std::invalid_argument("perturbed_area: edge shifts must satisfy |shift| <= 0.1");
  }
  Interval first = loop.first, second = loop.second;
  first.hi += shift_first;
  second.hi += shift_second;
  check_in_domain(loop, first, second);
  return rectangle_area(integrand_for(loop, kind), first, second);
}

AreaGradient area_gradient(const LoopSpec& loop, AreaKind kind) {
  const auto f = integrand_for(loop, kind);
  const Interval weighted = f.weighted_first ? loop.first : loop.second;
  const Interval other = f.weighted_first ? loop.second : loop.first;
  const double d_weighted = f.weight(weighted.hi) * other.width();
  const double d_other = f.antiderivative(weighted.hi) - f.antiderivative(weighted.lo);
  return f.weighted_first ? AreaGradient{d_weighted, d_other} : AreaGradient{d_other, d_weighted};
}

double flux_sensitivity(const LoopSpec& loop, AreaKind kind, Edge edge, double shift) {
  Interval first = loop.first, second = loop.second;
  switch (edge) {
    case Edge::first_lo: first.lo += shift; break;
    case Edge::first_hi: first.hi += shift; break;
    case Edge::second_lo: second.lo += shift; break;
    case Edge::second_hi: second.hi += shift; break;
  }
  check_in_domain(loop, first, second);
  const auto f = integrand_for(loop, kind);
  return std::abs(rectangle_area(f, first, second) - rectangle_area(f, loop.first, loop.second));
}

// -------------------------------------------------------------- closed forms

std::optional<ClosedFormHolonomy> closed_form_holonomy(const LoopSpec& loop) {
  if (!loop.on_manifold()) return std::nullopt;
  loop.validate();
  const auto [a, b] = loop.plane;
  const ControlPoint base = loop.base_point();
  const int n = loop.n;
  constexpr double tol = 1e-12;

  auto others_zero = [&](std::initializer_list<CoordinateId> allowed) {
    for (int alpha = 1; alpha <= n; ++alpha) {
      for (CoordinateId id : {CoordinateId::theta(alpha), CoordinateId::phi(alpha)}) {
        if (id == a || id == b) continue;
        if (std::find(allowed.begin(), allowed.end(), id) != allowed.end()) continue;
        if (id.kind == CoordinateKind::phi && base.theta(alpha) == 0.0 && !(CoordinateId::theta(alpha) == a) &&
            !(CoordinateId::theta(alpha) == b)) {
          continue;  // phase of a vanishing z is irrelevant
        }
        if (std::abs(base.get(id)) > tol) return false;
      }
    }
    return true;
  };
  auto interval_of = [&](CoordinateId id) { return id == a ? loop.first : loop.second; };
  // +1 when the given (u, v) order matches the plane order, -1 when swapped.
  auto order_sign = [&](CoordinateId u) { return u == a ? 1 : -1; };

  ClosedFormHolonomy out;
  out.matrix = ComplexMatrix::Identity(n, n);

  if (a.kind != b.kind) {
    const CoordinateId th = a.kind == CoordinateKind::theta ? a : b;
    const CoordinateId ph = a.kind == CoordinateKind::phi ? a : b;
    const Interval ti = interval_of(th);
    const double sigma = 0.5 * (std::cos(2.0 * ti.lo) - std::cos(2.0 * ti.hi)) * interval_of(ph).width();
    const double s = loop.orientation * order_sign(th);
    if (th.index == ph.index) {
      if (!others_zero({})) return std::nullopt;
      out.family = "C1";
      out.area = sigma;
      out.matrix(th.index - 1, th.index - 1) = std::polar(1.0, -s * sigma);
      return out;
    }
    if (ph.index < th.index) {
      const CoordinateId lower_theta = CoordinateId::theta(ph.index);
      if (std::abs(base.get(lower_theta) - std::numbers::pi / 2) > tol) return std::nullopt;
      if (!others_zero({lower_theta})) return std::nullopt;
      out.family = "C2";
      out.area = sigma;
      out.matrix(th.index - 1, th.index - 1) = std::polar(1.0, s * sigma);
      return out;
    }
    return std::nullopt;
  }

  if (a.kind == CoordinateKind::theta && b.kind == CoordinateKind::theta) {
    const CoordinateId lo_id = a.index < b.index ? a : b;
    const CoordinateId hi_id = a.index < b.index ? b : a;
    const int lo = lo_id.index - 1, hi = hi_id.index - 1;
    const CoordinateId phase = CoordinateId::phi(lo_id.index);
    if (!others_zero({phase})) return std::nullopt;
    const Interval hi_iv = interval_of(hi_id);
    const double sigma = (std::sin(hi_iv.hi) - std::sin(hi_iv.lo)) * interval_of(lo_id).width();
    const double angle = loop.orientation * order_sign(hi_id) * sigma;
    const double c = std::cos(angle), sn = std::sin(angle);
    out.area = sigma;
    if (std::abs(base.get(phase)) <= tol) {
      out.family = "C3";
      out.matrix(lo, lo) = c;
      out.matrix(lo, hi) = -sn;
      out.matrix(hi, lo) = sn;
      out.matrix(hi, hi) = c;
      return out;
    }
    if (std::abs(base.get(phase) - std::numbers::pi / 2) <= tol) {
      out.family = "C4";
      out.matrix(lo, lo) = c;
      out.matrix(lo, hi) = Complex(0.0, -sn);
      out.matrix(hi, lo) = Complex(0.0, -sn);
      out.matrix(hi, hi) = c;
      return out;
    }
  }
  return std::nullopt;
}

}  // namespace holotel
