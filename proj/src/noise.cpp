#include "holotel/noise.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <stdexcept>
#include <string>

#include <Eigen/Eigenvalues>

namespace holotel {

namespace {
const QubitRegister kThreeQubits(3);
}

double KrausChannel::completeness_error() const {
  ComplexMatrix sum = ComplexMatrix::Zero(2, 2);
  for (const auto& v : operators) sum += v.adjoint() * v;
  return max_norm(sum - identity(2));
}

void KrausChannel::validate() const {
  if (operators.empty()) throw std::invalid_argument("Kraus channel has no operators");
  for (const auto& v : operators) {
    if (v.rows() != 2 || v.cols() != 2) throw std::invalid_argument("Kraus operators must be 2x2");
  }
  if (completeness_error() > 1e-12) throw std::invalid_argument("Kraus operators are not complete");
}

KrausChannel phase_damping(double lambda) {
  if (!(lambda >= 0.0) || !std::isfinite(lambda)) {
    throw std::invalid_argument("lambda: dissipation strength must be finite and >= 0");
  }
  const double decay = std::exp(-lambda);
  KrausChannel ch;
  ch.lambda = lambda;
  ComplexMatrix v1 = ComplexMatrix::Zero(2, 2);
  v1(0, 0) = 1.0;
  v1(1, 1) = decay;
  ComplexMatrix v2 = ComplexMatrix::Zero(2, 2);
  v2(1, 1) = std::sqrt(-std::expm1(-2.0 * lambda));
  ch.operators = {v1, v2};
  return ch;
}

DensityOperator::DensityOperator(ComplexMatrix rho) : rho_(std::move(rho)) {
  if (rho_.rows() != rho_.cols() || rho_.rows() < 2) {
    throw std::invalid_argument("density operator must be square with dimension >= 2");
  }
  const auto dim = static_cast<std::size_t>(rho_.rows());
  if ((dim & (dim - 1)) != 0) throw std::invalid_argument("density operator dimension must be 2^n");
  while ((std::size_t{1} << qubits_) < dim) ++qubits_;
  if (max_norm(rho_ - rho_.adjoint()) > kTraceTolerance) {
    throw std::invalid_argument("density operator is not Hermitian");
  }
  if (std::abs(trace() - 1.0) > kTraceTolerance) {
    throw std::invalid_argument("density operator trace " + std::to_string(trace()) + " != 1");
  }
  if (min_eigenvalue() < -kPositivityTolerance) {
    throw std::invalid_argument("density operator is not positive semidefinite");
  }
}

DensityOperator DensityOperator::pure(const ComplexVector& state) {
  return DensityOperator(state * state.adjoint());
}

double DensityOperator::min_eigenvalue() const {
  Eigen::SelfAdjointEigenSolver<ComplexMatrix> solver(rho_, Eigen::EigenvaluesOnly);
  return solver.eigenvalues().minCoeff();
}

DensityOperator apply_channel(const DensityOperator& rho, const KrausChannel& channel, int target) {
  channel.validate();
  const QubitRegister reg(rho.qubits());
  ComplexMatrix out = ComplexMatrix::Zero(rho.matrix().rows(), rho.matrix().cols());
  for (const auto& v : channel.operators) {
    const ComplexMatrix w = embed(v, {target}, reg);
    out += w * rho.matrix() * w.adjoint();
  }
  return DensityOperator(std::move(out));
}

namespace {

void require_three_qubits(const DensityOperator& rho) {
  if (rho.qubits() != 3) throw std::invalid_argument("povm_map: rho_I must live on 3 qubits");
}

}  // namespace

ComplexMatrix povm_map(const DensityOperator& rho_initial, double delta, double epsilon,
                         double lambda, const TeleportOptions& options) {
  require_three_qubits(rho_initial);
  const TeleportCircuit c = build_teleport(delta, epsilon, options.mode, options.circuit);
  const DensityOperator damped = apply_channel(rho_initial, phase_damping(lambda), 3);
  const ComplexMatrix& u = c.circuit(options.model);
  return u * damped.matrix() * u.adjoint();
}

ComplexMatrix povm_map_interleaved(const DensityOperator& rho_initial, double delta,
                                     double epsilon, double lambda,
                                     const TeleportOptions& options) {
  require_three_qubits(rho_initial);
  const TeleportCircuit c = build_teleport(delta, epsilon, options.mode, options.circuit);
  ComplexMatrix alice = identity(8);
  ComplexMatrix bob = identity(8);
  bool on_alice_side = true;
  for (std::size_t i = 0; i < 6; ++i) {
    const auto& targets = options.circuit.wiring[i];
    const bool touches_bob = std::find(targets.begin(), targets.end(), 3) != targets.end();
    if (touches_bob) on_alice_side = false;
    (on_alice_side ? alice : bob) = c.stages[i] * (on_alice_side ? alice : bob);
  }
  const ComplexMatrix after_alice = alice * rho_initial.matrix() * alice.adjoint();
  ComplexMatrix damped = ComplexMatrix::Zero(8, 8);
  for (const auto& v : phase_damping(lambda).operators) {
    const ComplexMatrix w = embed(v, {3}, kThreeQubits);
    damped += w * after_alice * w.adjoint();
  }
  return bob * damped * bob.adjoint();
}

FidelityReport dissipative_fidelity(double delta, double epsilon, double lambda,
                                    const TeleportOptions& options) {
  const KrausChannel channel = phase_damping(lambda);
  const TeleportCircuit c = build_teleport(delta, epsilon, options.mode, options.circuit);
  const ComplexMatrix& u = c.circuit(options.model);

  // Tr(U W rho_I W^dag U^dag |f><f|) = sum_k |<f| U W_k |Psi, EPR>|^2.
  std::vector<BranchMaps> maps;
  for (const auto& v : channel.operators) {
    maps.push_back(branch_maps(ComplexMatrix(u * embed(v, {3}, kThreeQubits))));
  }

  BranchObjective objective;
  objective.branches = 4;
  objective.evaluate = [&maps](std::span<const double> x, std::span<double> out) {
    const ComplexVector psi = BlochState{x[0], x[1]}.vector();
    for (std::size_t b = 0; b < 4; ++b) {
      double s = 0.0;
      for (const auto& m : maps) s += std::norm(psi.dot(m[b] * psi));
      out[b] = s;
    }
  };
  return minimize_branches(objective, options.aggregation, [&](const Objective& f) {
    return minimize_bloch(f, options.bloch_grid, options.minimizer);
  });
}

double dissipative_first_order_coeffs(Coefficient which, double lambda, double h,
                                      SlopeScheme scheme, const TeleportOptions& options) {
  return slope_at_origin(
      [&](double d, double e) { return dissipative_fidelity(d, e, lambda, options).total; },
      which, h, scheme);
}

double first_order_prediction(double delta, double epsilon, double lambda) {
  const double loss = -std::expm1(-lambda);
  const double sqrt2 = std::numbers::sqrt2;
  const double eps_coeff =
      -1.5 * (sqrt2 - 1.0) + loss * (21.0 / 32.0 * std::sqrt(7.0) - 51.0 / 32.0);
  const double delta_coeff = -1.0 / (2.0 * sqrt2) + loss * (3.0 / 16.0) * std::sqrt(1.5);
  return 0.5 * (1.0 + std::exp(-lambda)) + epsilon * eps_coeff + delta * delta_coeff;
}

double entangled_fraction(const DensityOperator& rho) {
  if (rho.qubits() != 2) throw std::invalid_argument("entangled_fraction: expects a 2-qubit state");
  const ComplexVector epr = epr_pair();
  return epr.dot(rho.matrix() * epr).real();
}

double optimal_fidelity(double fraction) { return (2.0 * fraction + 1.0) / 3.0; }

}  // namespace holotel
