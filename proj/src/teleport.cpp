#include "holotel/teleport.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <stdexcept>

namespace holotel {

namespace {

const QubitRegister kThreeQubits(3);
const QubitRegister kSixQubits(6);

ComplexMatrix ordered_product(const std::array<ComplexMatrix, 6>& stages) {
  ComplexMatrix out = identity(8);
  for (const auto& stage : stages) out = stage * out;
  return out;
}

void check_wiring(const CircuitSpec& spec) {
  for (int i = 0; i < 6; ++i) {
    const std::size_t expected = CircuitSpec::is_cnot_stage(i) ? 2 : 1;
    if (spec.wiring[static_cast<std::size_t>(i)].size() != expected) {
      throw std::invalid_argument("circuit stage " + std::to_string(i + 1) + " needs " +
                                  std::to_string(expected) + " target(s)");
    }
  }
}

}  // namespace

ComplexVector BlochState::vector() const {
  ComplexVector v(2);
  v << std::cos(theta / 2), std::polar(std::sin(theta / 2), phi);
  return v;
}

ComplexVector epr_pair() {
  ComplexVector v = ComplexVector::Zero(4);
  v(0) = v(3) = 1.0 / std::numbers::sqrt2;
  return v;
}

std::string to_string(CircuitModel model) {
  return model == CircuitModel::gatewise_linear ? "gatewise-linear" : "gate-product";
}

CircuitModel parse_circuit_model(std::string_view name) {
  if (name == "gatewise-linear") return CircuitModel::gatewise_linear;
  if (name == "gate-product") return CircuitModel::gate_product;
  throw std::invalid_argument("model: unknown circuit model '" + std::string(name) + "'");
}

std::string to_string(Aggregation aggregation) {
  return aggregation == Aggregation::common_payload ? "common-payload" : "per-branch";
}

Aggregation parse_aggregation(std::string_view name) {
  if (name == "common-payload") return Aggregation::common_payload;
  if (name == "per-branch") return Aggregation::per_branch;
  throw std::invalid_argument("aggregation: unknown aggregation '" + std::string(name) + "'");
}

std::string to_string(Coefficient which) {
  return which == Coefficient::epsilon ? "eps" : "delta";
}

Coefficient parse_coefficient(std::string_view name) {
  if (name == "eps" || name == "epsilon") return Coefficient::epsilon;
  if (name == "delta") return Coefficient::delta;
  throw std::invalid_argument("which: expected eps or delta, got '" + std::string(name) + "'");
}

TeleportCircuit build_teleport(double delta, double epsilon, GateMode mode, const CircuitSpec& spec) {
  GateErrorParams{epsilon, delta}.validate(mode);
  check_wiring(spec);

  TeleportCircuit out;
  std::array<ComplexMatrix, 6> ideal_stages;
  std::array<ComplexMatrix, 6> deviations;
  out.bare_delta = ComplexMatrix::Zero(8, 8);
  out.bare_epsilon = ComplexMatrix::Zero(8, 8);
  for (int i = 0; i < 6; ++i) {
    const auto k = static_cast<std::size_t>(i);
    const auto& targets = spec.wiring[k];
    if (CircuitSpec::is_cnot_stage(i)) {
      const ComplexMatrix gate = cnot_ideal();
      ideal_stages[k] = embed(gate, targets, kThreeQubits);
      deviations[k] = embed(spec.cnot_deviation, targets, kThreeQubits);
      out.stages[k] = embed(gate + delta * spec.cnot_deviation, targets, kThreeQubits);
      out.bare_delta += deviations[k];
    } else {
      const ComplexMatrix gate = hadamard_ideal();
      ideal_stages[k] = embed(gate, targets, kThreeQubits);
      deviations[k] = embed(spec.hadamard_deviation, targets, kThreeQubits);
      const ComplexMatrix imperfect = mode == GateMode::first_order
                                          ? ComplexMatrix(gate + epsilon * spec.hadamard_deviation)
                                          : hadamard_from_area(std::numbers::pi / 4 + epsilon);
      out.stages[k] = embed(imperfect, targets, kThreeQubits);
      out.bare_epsilon += deviations[k];
    }
  }
  out.ideal = ordered_product(ideal_stages);
  out.product = ordered_product(out.stages);
  out.gatewise_linear = out.ideal + delta * out.bare_delta + epsilon * out.bare_epsilon;

  out.derivative_delta = ComplexMatrix::Zero(8, 8);
  out.derivative_epsilon = ComplexMatrix::Zero(8, 8);
  for (int i = 0; i < 6; ++i) {
    auto stages = ideal_stages;
    stages[static_cast<std::size_t>(i)] = deviations[static_cast<std::size_t>(i)];
    (CircuitSpec::is_cnot_stage(i) ? out.derivative_delta : out.derivative_epsilon) +=
        ordered_product(stages);
  }
  return out;
}

Complex branch_amplitude(const ComplexMatrix& circuit, int x, int y, const BlochState& psi) {
  if (circuit.rows() != 8 || circuit.cols() != 8) {
    throw std::invalid_argument("branch_amplitude: circuit must be 8x8");
  }
  if ((x != 0 && x != 1) || (y != 0 && y != 1)) {
    throw std::invalid_argument("branch_amplitude: branch bits must be 0 or 1");
  }
  const ComplexVector payload = psi.vector();
  const ComplexVector initial = kron(payload, epr_pair());
  const ComplexVector final_state = kron(kron(basis_state(2, x), basis_state(2, y)), payload);
  return final_state.dot(circuit * initial);
}

Complex branch_amplitude(int x, int y, const BlochState& psi, double delta, double epsilon,
                         const TeleportOptions& options) {
  const TeleportCircuit c = build_teleport(delta, epsilon, options.mode, options.circuit);
  return branch_amplitude(c.circuit(options.model), x, y, psi);
}

BranchMaps branch_maps(const ComplexMatrix& circuit, const ComplexVector& resource,
                       const ComplexMatrix& output_gate) {
  if (circuit.rows() != 8 || circuit.cols() != 8 || resource.size() != 4 ||
      output_gate.rows() != 2 || output_gate.cols() != 2) {
    throw std::invalid_argument("branch_maps: expected 8x8 circuit, 4-dim resource, 2x2 output gate");
  }
  BranchMaps maps;
  for (int in = 0; in < 2; ++in) {
    const ComplexVector out = circuit * kron(basis_state(2, static_cast<std::size_t>(in)), resource);
    for (int b = 0; b < 4; ++b) {
      for (int k = 0; k < 2; ++k) maps[static_cast<std::size_t>(b)](k, in) = out(2 * b + k);
    }
  }
  const Eigen::Matrix2cd g_adj = output_gate.adjoint();
  for (auto& m : maps) m = g_adj * m;
  return maps;
}

BranchMaps branch_maps(const ComplexMatrix& circuit) {
  return branch_maps(circuit, epr_pair(), identity(2));
}

FidelityReport minimize_branches(const BranchObjective& objective, Aggregation aggregation,
                                 const PayloadSearch& search) {
  const auto n = static_cast<std::size_t>(objective.branches);
  FidelityReport report;
  report.aggregation = aggregation;
  report.branches.assign(n, 0.0);
  report.converged = true;
  std::vector<double> scratch(n);

  if (aggregation == Aggregation::common_payload) {
    const Objective total = [&](std::span<const double> x) {
      objective.evaluate(x, scratch);
      double s = 0.0;
      for (double v : scratch) s += v;
      return s;
    };
    const MinimizeResult r = search(total);
    objective.evaluate(r.x, report.branches);
    report.argmin = r.x;
    report.branch_argmin.assign(n, r.x);
    report.iterations = r.iterations;
    report.simplex_size = r.simplex_size;
    report.converged = r.converged;
    report.message = r.message;
  } else {
    for (std::size_t b = 0; b < n; ++b) {
      const Objective single = [&](std::span<const double> x) {
        objective.evaluate(x, scratch);
        return scratch[b];
      };
      const MinimizeResult r = search(single);
      report.branches[b] = r.value;
      report.branch_argmin.push_back(r.x);
      report.iterations += r.iterations;
      report.simplex_size = std::max(report.simplex_size, r.simplex_size);
      if (!r.converged) {
        report.converged = false;
        report.message = "branch " + std::to_string(b) + ": " + r.message;
      }
    }
    report.argmin = report.branch_argmin.front();
    if (report.converged) report.message = "converged";
  }
  report.total = 0.0;
  for (double v : report.branches) report.total += v;
  return report;
}

namespace {

FidelityReport bloch_fidelity(const BranchMaps& maps, const TeleportOptions& options) {
  BranchObjective objective;
  objective.branches = 4;
  objective.evaluate = [&maps](std::span<const double> x, std::span<double> out) {
    const ComplexVector psi = BlochState{x[0], x[1]}.vector();
    for (std::size_t b = 0; b < 4; ++b) out[b] = std::norm(psi.dot(maps[b] * psi));
  };
  return minimize_branches(objective, options.aggregation, [&](const Objective& f) {
    return minimize_bloch(f, options.bloch_grid, options.minimizer);
  });
}

}  // namespace

FidelityReport fidelity(double delta, double epsilon, const TeleportOptions& options) {
  const TeleportCircuit c = build_teleport(delta, epsilon, options.mode, options.circuit);
  return bloch_fidelity(branch_maps(c.circuit(options.model)), options);
}

double slope_at_origin(const FidelityFunction& f, Coefficient which, double h, SlopeScheme scheme) {
  if (!(h >= 1e-6 && h <= 1e-2)) {
    throw std::invalid_argument("h: finite-difference step must lie in [1e-6, 1e-2]");
  }
  auto at = [&](double t) {
    return which == Coefficient::delta ? f(t, 0.0) : f(0.0, t);
  };
  if (scheme == SlopeScheme::central) return (at(h) - at(-h)) / (2.0 * h);
  const double f0 = at(0.0);
  const double d_full = (at(h) - f0) / h;
  const double d_half = (at(h / 2) - f0) / (h / 2);
  return 2.0 * d_half - d_full;
}

double first_order_coeffs(Coefficient which, double h, SlopeScheme scheme,
                          const TeleportOptions& options) {
  return slope_at_origin(
      [&](double d, double e) { return fidelity(d, e, options).total; }, which, h, scheme);
}

FidelityReport teleported_hadamard_fidelity(double delta, double epsilon,
                                            const TeleportOptions& options) {
  const TeleportCircuit c = build_teleport(delta, epsilon, options.mode, options.circuit);
  const ComplexMatrix uh = hadamard_ideal();
  const ComplexMatrix on_output = embed(uh, {3}, kThreeQubits);
  const ComplexMatrix circuit = on_output * c.circuit(options.model) * on_output.adjoint();
  const ComplexVector resource = kron(identity(2), uh) * epr_pair();
  return bloch_fidelity(branch_maps(circuit, resource, uh), options);
}

ComplexMatrix permutation_pi13() {
  ComplexMatrix p = ComplexMatrix::Zero(8, 8);
  for (std::size_t label = 0; label < 8; ++label) {
    std::size_t swapped = kThreeQubits.with_bit(label, 1, kThreeQubits.bit(label, 3));
    swapped = kThreeQubits.with_bit(swapped, 3, kThreeQubits.bit(label, 1));
    p(static_cast<Eigen::Index>(swapped), static_cast<Eigen::Index>(label)) = 1.0;
  }
  return p;
}

ComplexVector two_qubit_payload(std::span<const double> params) {
  if (params.size() != 6) throw std::invalid_argument("two_qubit_payload: expected 6 parameters");
  const double a = params[0], b = params[1], c = params[2];
  ComplexVector v(4);
  v << std::cos(a), std::polar(std::sin(a) * std::cos(b), params[3]),
      std::polar(std::sin(a) * std::sin(b) * std::cos(c), params[4]),
      std::polar(std::sin(a) * std::sin(b) * std::sin(c), params[5]);
  return v;
}

ComplexMatrix teleported_cnot_circuit(const ComplexMatrix& teleport) {
  const ComplexMatrix pi13 = permutation_pi13();
  const ComplexMatrix doubled = kron(teleport, ComplexMatrix(pi13 * teleport * pi13));
  const ComplexMatrix cn34 = embed(cnot_ideal(), {3, 4}, kSixQubits);
  return cn34 * doubled * cn34.adjoint();
}

FidelityReport teleported_cnot_fidelity(double delta, double epsilon, const TeleportOptions& options) {
  const TeleportCircuit c = build_teleport(delta, epsilon, options.mode, options.circuit);
  const ComplexMatrix circuit = teleported_cnot_circuit(c.circuit(options.model));
  const ComplexMatrix cn34 = embed(cnot_ideal(), {3, 4}, kSixQubits);
  const ComplexVector epr = epr_pair();

  // maps[b](out, in): payload basis in = (i1, i6), output basis out = (o3, o4).
  std::array<Eigen::Matrix4cd, 16> maps;
  for (std::size_t in = 0; in < 4; ++in) {
    const ComplexVector initial =
        cn34 * kron(kron(kron(basis_state(2, in >> 1), epr), epr), basis_state(2, in & 1));
    const ComplexVector out = circuit * initial;
    for (std::size_t b = 0; b < 16; ++b) {
      const std::size_t x1 = (b >> 3) & 1, y1 = (b >> 2) & 1, x2 = (b >> 1) & 1, y2 = b & 1;
      for (std::size_t o = 0; o < 4; ++o) {
        const std::size_t label = (x1 << 5) | (y1 << 4) | (o << 2) | (y2 << 1) | x2;
        maps[b](static_cast<Eigen::Index>(o), static_cast<Eigen::Index>(in)) =
            out(static_cast<Eigen::Index>(label));
      }
    }
  }
  const Eigen::Matrix4cd cn_adj = cnot_ideal().adjoint();
  for (auto& m : maps) m = cn_adj * m;

  BranchObjective objective;
  objective.branches = 16;
  objective.evaluate = [&maps](std::span<const double> x, std::span<double> out) {
    const Eigen::Vector4cd p = two_qubit_payload(x);
    for (std::size_t b = 0; b < 16; ++b) out[b] = std::norm(p.dot(maps[b] * p));
  };
  constexpr double half_pi = std::numbers::pi / 2, two_pi = 2 * std::numbers::pi;
  const std::array<double, 6> lo{0, 0, 0, 0, 0, 0};
  const std::array<double, 6> hi{half_pi, half_pi, half_pi, two_pi, two_pi, two_pi};
  return minimize_branches(objective, options.aggregation, [&](const Objective& f) {
    return minimize_sobol(f, lo, hi, options.sobol_seeds, options.two_qubit_minimizer);
  });
}

}  // namespace holotel
