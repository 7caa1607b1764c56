#include "holotel/gates.hpp"

#include <cmath>
#include <numbers>
#include <stdexcept>

namespace holotel {

namespace {
constexpr double kInvSqrt2 = 1.0 / std::numbers::sqrt2;
constexpr Complex kI{0.0, 1.0};
}  // namespace

std::string to_string(GateMode mode) {
  return mode == GateMode::first_order ? "first-order" : "exact-area";
}

GateMode parse_gate_mode(std::string_view name) {
  if (name == "first-order") return GateMode::first_order;
  if (name == "exact-area") return GateMode::exact_area;
  throw std::invalid_argument("mode: unknown gate mode '" + std::string(name) + "'");
}

void GateErrorParams::validate(GateMode mode) const {
  if (!std::isfinite(epsilon) || !std::isfinite(delta)) {
    throw std::invalid_argument("gate errors must be finite");
  }
  if (std::abs(delta) > kFirstOrderBound) {
    throw std::invalid_argument("|delta| exceeds the first-order bound 0.2");
  }
  if (mode == GateMode::first_order && std::abs(epsilon) > kFirstOrderBound) {
    throw std::invalid_argument("|epsilon| exceeds the first-order bound 0.2");
  }
}

ComplexMatrix hadamard_ideal() {
  ComplexMatrix h(2, 2);
  h << kInvSqrt2, kInvSqrt2, kInvSqrt2, -kInvSqrt2;
  return h;
}

ComplexMatrix hadamard_deviation() {
  ComplexMatrix h(2, 2);
  h << -kInvSqrt2, kInvSqrt2, kInvSqrt2, kInvSqrt2;
  return h;
}

ComplexMatrix hadamard_from_area(double sigma) {
  ComplexMatrix m(2, 2);
  m << std::cos(sigma), std::sin(sigma), std::sin(sigma), -std::cos(sigma);
  return m;
}

ComplexMatrix hadamard_imperfect(double epsilon, GateMode mode) {
  if (mode == GateMode::exact_area) return hadamard_from_area(std::numbers::pi / 4 + epsilon);
  if (std::abs(epsilon) > GateErrorParams::kFirstOrderBound) {
    throw std::invalid_argument("hadamard_imperfect: first-order mode needs |epsilon| <= 0.2");
  }
  return hadamard_ideal() + epsilon * hadamard_deviation();
}

ComplexMatrix cnot_ideal() {
  ComplexMatrix m = ComplexMatrix::Zero(4, 4);
  m(0, 0) = 1.0;
  m(1, 1) = 1.0;
  m(2, 3) = 1.0;
  m(3, 2) = 1.0;
  return m;
}

ComplexMatrix cnot_deviation() {
  ComplexMatrix m = ComplexMatrix::Zero(4, 4);
  m(2, 2) = -kI;
  m(3, 3) = -kI;
  return m;
}

ComplexMatrix cnot_imperfect(double delta) {
  if (std::abs(delta) > GateErrorParams::kFirstOrderBound) {
    throw std::invalid_argument("cnot_imperfect: needs |delta| <= 0.2");
  }
  return cnot_ideal() + delta * cnot_deviation();
}

ComplexMatrix phase_gate_from_c1(double sigma1) {
  ComplexMatrix m = ComplexMatrix::Identity(2, 2);
  m(0, 0) = std::polar(1.0, -sigma1);
  return m;
}

LoopSpec hadamard_rotation_loop(int steps, double area_shift) {
  LoopSpec loop;
  loop.n = 2;
  loop.plane = {CoordinateId::theta(2), CoordinateId::theta(1)};
  loop.first = {0.0, std::numbers::pi / 2};
  loop.second = {0.0, std::numbers::pi / 4 + area_shift};
  loop.fixed = {{CoordinateId::phi(1), 0.0}, {CoordinateId::phi(2), 0.0}};
  loop.steps = steps;
  loop.orientation = 1;
  loop.kind = AreaKind::plane_cosine;
  return loop;
}

LoopSpec hadamard_phase_loop(int steps) {
  LoopSpec loop;
  loop.n = 2;
  loop.plane = {CoordinateId::theta(1), CoordinateId::phi(1)};
  loop.first = {0.0, std::numbers::pi / 2};
  loop.second = {0.0, std::numbers::pi};
  loop.fixed = {{CoordinateId::theta(2), 0.0}, {CoordinateId::phi(2), 0.0}};
  loop.steps = steps;
  loop.orientation = 1;
  loop.kind = AreaKind::half_solid_angle;
  return loop;
}

HadamardSynthesis synthesize_hadamard(int steps, double area_shift) {
  const HolonomyResult rotation = holonomy(hadamard_rotation_loop(steps, area_shift));
  const HolonomyResult phase = holonomy(hadamard_phase_loop(steps));
  const ComplexMatrix target = hadamard_from_area(std::numbers::pi / 4 + area_shift);

  HadamardSynthesis out;
  const ComplexMatrix phase_first = rotation.matrix * phase.matrix;
  const ComplexMatrix phase_last = phase.matrix * rotation.matrix;
  out.phase_first_distance = phase_distance(phase_first, target);
  out.phase_last_distance = phase_distance(phase_last, target);
  out.phase_loop_first = out.phase_first_distance <= out.phase_last_distance;
  out.matrix = out.phase_loop_first ? phase_first : phase_last;
  out.error_estimate = rotation.error_estimate + phase.error_estimate;
  return out;
}

}  // namespace holotel
