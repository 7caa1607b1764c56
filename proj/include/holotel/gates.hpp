#pragma once

#include "holotel/control_manifold.hpp"
#include "holotel/numerics.hpp"

namespace holotel {

/// How an imperfect Hadamard responds to an area error eps.
enum class GateMode {
  first_order,  ///< U_H + eps h
  exact_area,   ///< the reflection matrix at area pi/4 + eps
};

std::string to_string(GateMode mode);
GateMode parse_gate_mode(std::string_view name);

/// Area errors of the Hadamard (epsilon) and control-not (delta) loops.
struct GateErrorParams {
  double epsilon = 0.0;
  double delta = 0.0;

  static constexpr double kFirstOrderBound = 0.2;
  /// Throws std::invalid_argument outside |eps|, |delta| <= 0.2 unless the
  /// gates are evaluated in exact-area mode.
  void validate(GateMode mode = GateMode::first_order) const;
};

ComplexMatrix hadamard_ideal();
/// The first-order deviation h = (1/sqrt2) [[-1, 1], [1, 1]] = dU_H/dSigma at pi/4.
ComplexMatrix hadamard_deviation();
ComplexMatrix hadamard_imperfect(double epsilon, GateMode mode);
/// [[cos S, sin S], [sin S, -cos S]]
ComplexMatrix hadamard_from_area(double sigma);

/// Control-not with the first qubit of the pair as control.
ComplexMatrix cnot_ideal();
/// -i |1><1| (x) 1, the first-order deviation of the control-not.
ComplexMatrix cnot_deviation();
/// U_CN - i delta |1><1| (x) 1
ComplexMatrix cnot_imperfect(double delta);

/// diag(e^{-i Sigma_1}, 1)
ComplexMatrix phase_gate_from_c1(double sigma1);

/// Rectangle loops on CP^2 (beta = 1, beta-bar = 2) used to build the Hadamard.
/// The rotation loop spans theta_2 in [0, pi/2] (the cosine coordinate) and
/// theta_1 in [0, pi/4 + area_shift]; the phase loop spans theta_1 in
/// [0, pi/2] and phi_1 in [0, pi], enclosing half-solid-angle pi.
LoopSpec hadamard_rotation_loop(int steps, double area_shift = 0.0);
LoopSpec hadamard_phase_loop(int steps);

struct HadamardSynthesis {
  ComplexMatrix matrix;             ///< the composition matching U_H
  bool phase_loop_first = true;     ///< order that produced `matrix`
  double phase_first_distance = 0;  ///< phase_distance(G_rot G_phase, target)
  double phase_last_distance = 0;   ///< phase_distance(G_phase G_rot, target)
  double error_estimate = 0;        ///< sum of the two integrator estimates
};

/// Composes the rotation-loop holonomy (area pi/4 + area_shift) with the
/// Sigma_1 = pi phase loop, trying both orders against
/// hadamard_from_area(pi/4 + area_shift). Propagates integrator errors.
HadamardSynthesis synthesize_hadamard(int steps = 4096, double area_shift = 0.0);

}  // namespace holotel
