#pragma once

#include <array>
#include <functional>
#include <span>
#include <string>
#include <vector>

#include "holotel/gates.hpp"
#include "holotel/numerics.hpp"
#include "holotel/optimize.hpp"

namespace holotel {

/// Payload qubit cos(theta/2)|0> + e^{i phi} sin(theta/2)|1>.
struct BlochState {
  double theta = 0.0;
  double phi = 0.0;
  ComplexVector vector() const;
};

/// (|00> + |11>)/sqrt2
ComplexVector epr_pair();

/// Six alternating stages CN, H, CN, H, CN, H on a 3-qubit register.
/// Qubit 1 carries the payload, qubits 2 and 3 the EPR pair; the payload
/// leaves on qubit 3.
struct CircuitSpec {
  std::array<std::vector<int>, 6> wiring{{{1, 2}, {1}, {2, 3}, {3}, {1, 3}, {3}}};
  ComplexMatrix hadamard_deviation = holotel::hadamard_deviation();
  ComplexMatrix cnot_deviation = holotel::cnot_deviation();

  static bool is_cnot_stage(int stage) { return stage % 2 == 0; }
};

/// How the imperfect circuit is assembled from imperfect gates.
enum class CircuitModel {
  gatewise_linear,  ///< U_tel + delta V_delta + eps V_eps with V the summed embedded gate deviations
  gate_product,     ///< ordered product of the six imperfect gates
};

/// How the payload minimization combines the measurement branches.
enum class Aggregation {
  common_payload,  ///< min over one payload of the branch sum
  per_branch,      ///< sum over branches of the per-branch minima
};

std::string to_string(CircuitModel model);
CircuitModel parse_circuit_model(std::string_view name);
std::string to_string(Aggregation aggregation);
Aggregation parse_aggregation(std::string_view name);

struct TeleportCircuit {
  std::array<ComplexMatrix, 6> stages;  ///< embedded imperfect gates U_1 .. U_6
  ComplexMatrix ideal;                  ///< product at delta = eps = 0
  ComplexMatrix product;                ///< U_6 ... U_1
  ComplexMatrix gatewise_linear;        ///< ideal + delta bare_delta + eps bare_epsilon
  ComplexMatrix bare_delta;             ///< sum of embedded CN deviations
  ComplexMatrix bare_epsilon;           ///< sum of embedded H deviations
  ComplexMatrix derivative_delta;       ///< d product / d delta at 0
  ComplexMatrix derivative_epsilon;     ///< d product / d eps at 0

  const ComplexMatrix& circuit(CircuitModel model) const {
    return model == CircuitModel::gatewise_linear ? gatewise_linear : product;
  }
};

TeleportCircuit build_teleport(double delta, double epsilon, GateMode mode = GateMode::first_order,
                               const CircuitSpec& spec = {});

struct TeleportOptions {
  CircuitModel model = CircuitModel::gatewise_linear;
  GateMode mode = GateMode::first_order;
  Aggregation aggregation = Aggregation::common_payload;
  CircuitSpec circuit;
  int bloch_grid = 64;
  MinimizeOptions minimizer;
  int sobol_seeds = 4096;
  MinimizeOptions two_qubit_minimizer{4000, 1e-10, 1e-10, 0.05, 4};
};

/// <x y Psi| U |Psi, EPR> on the 3-qubit register.
Complex branch_amplitude(const ComplexMatrix& circuit, int x, int y, const BlochState& psi);
Complex branch_amplitude(int x, int y, const BlochState& psi, double delta, double epsilon,
                         const TeleportOptions& options = {});

/// Branch maps M_b[out, in] = <b, out| U |in, resource>, b = 2x + y, for a
/// 3-qubit circuit, a 2-qubit resource on qubits 2 and 3 and an output
/// transformation applied to the reference payload.
using BranchMaps = std::array<Eigen::Matrix2cd, 4>;
BranchMaps branch_maps(const ComplexMatrix& circuit, const ComplexVector& resource,
                       const ComplexMatrix& output_gate);
BranchMaps branch_maps(const ComplexMatrix& circuit);

struct FidelityReport {
  double total = 0.0;
  std::vector<double> branches;           ///< indexed by the branch bits, most significant first
  std::vector<double> argmin;             ///< payload parameters of the total (branch 0 for per-branch)
  std::vector<std::vector<double>> branch_argmin;
  Aggregation aggregation = Aggregation::common_payload;
  int iterations = 0;
  double simplex_size = 0.0;
  bool converged = false;
  std::string message;
};

/// Branch values at a payload parameter vector.
struct BranchObjective {
  int branches = 4;
  std::function<void(std::span<const double>, std::span<double>)> evaluate;
};
using PayloadSearch = std::function<MinimizeResult(const Objective&)>;

/// Shared minimization driver for all fidelity functionals.
FidelityReport minimize_branches(const BranchObjective& objective, Aggregation aggregation,
                                 const PayloadSearch& search);

FidelityReport fidelity(double delta, double epsilon, const TeleportOptions& options = {});

enum class Coefficient { epsilon, delta };
std::string to_string(Coefficient which);
Coefficient parse_coefficient(std::string_view name);

enum class SlopeScheme {
  forward_richardson,  ///< 2 D(h/2) - D(h), D(h) = (F(h) - F(0)) / h
  central,             ///< (F(h) - F(-h)) / (2h)
};

using FidelityFunction = std::function<double(double delta, double epsilon)>;
/// Slope of `f` along `which` at the origin. h must lie in [1e-6, 1e-2].
double slope_at_origin(const FidelityFunction& f, Coefficient which, double h = 1e-4,
                       SlopeScheme scheme = SlopeScheme::forward_richardson);

double first_order_coeffs(Coefficient which, double h = 1e-4,
                          SlopeScheme scheme = SlopeScheme::forward_richardson,
                          const TeleportOptions& options = {});

/// Teleported Hadamard: circuit (1 (x) 1 (x) U_H) U_tel (1 (x) 1 (x) U_H^dag)
/// acting on |Psi> (x) (1 (x) U_H)|EPR>, compared with |x y> (x) U_H |Psi>.
FidelityReport teleported_hadamard_fidelity(double delta, double epsilon,
                                            const TeleportOptions& options = {});

/// Swaps qubits 1 and 3 of a 3-qubit register.
ComplexMatrix permutation_pi13();

/// Two-qubit payload parametrized by (a, b, c) in [0, pi/2]^3 and three
/// relative phases; index = 2 * (first qubit) + second qubit.
ComplexVector two_qubit_payload(std::span<const double> params);

/// Two teleportations U_tel (x) Pi13 U_tel Pi13 on six qubits conjugated by
/// the control-not on qubits 3 and 4. The payload enters on qubits 1 and 6,
/// the EPR pairs sit on (2, 3) and (5, 4), and the payload leaves on qubits
/// 3 and 4. Sixteen branches (x1, y1, x2, y2) on qubits 1, 2, 6, 5.
ComplexMatrix teleported_cnot_circuit(const ComplexMatrix& teleport);
FidelityReport teleported_cnot_fidelity(double delta, double epsilon,
                                        const TeleportOptions& options = {});

}  // namespace holotel
