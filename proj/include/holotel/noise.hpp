#pragma once

#include <vector>

#include "holotel/numerics.hpp"
#include "holotel/teleport.hpp"

namespace holotel {

/// Single-qubit Kraus channel.
struct KrausChannel {
  std::vector<ComplexMatrix> operators;
  double lambda = 0.0;

  /// ||sum V^dag V - I||_max
  double completeness_error() const;
  /// Throws std::invalid_argument unless all operators are 2x2 and complete to 1e-12.
  void validate() const;
};

/// V1 = diag(1, e^{-lambda}), V2 = diag(0, sqrt(1 - e^{-2 lambda})).
KrausChannel phase_damping(double lambda);

class DensityOperator {
 public:
  static constexpr double kTraceTolerance = 1e-12;
  static constexpr double kPositivityTolerance = 1e-10;

  /// Validates shape (2^n square), Hermiticity, unit trace and positivity.
  explicit DensityOperator(ComplexMatrix rho);
  static DensityOperator pure(const ComplexVector& state);

  const ComplexMatrix& matrix() const { return rho_; }
  int qubits() const { return qubits_; }
  double trace() const { return rho_.trace().real(); }
  double min_eigenvalue() const;

 private:
  ComplexMatrix rho_;
  int qubits_ = 0;
};

/// sum_i (embed V_i) rho (embed V_i)^dag with V_i on `target` (1-based).
DensityOperator apply_channel(const DensityOperator& rho, const KrausChannel& channel, int target);

/// U s(rho_I) U^dag with the channel on Bob's qubit 3 and U the imperfect
/// circuit. The first-order circuit is unitary only to first order, so the
/// image is returned as a bare operator; its trace is 1 + O(delta^2, eps^2).
ComplexMatrix povm_map(const DensityOperator& rho_initial, double delta, double epsilon,
                         double lambda, const TeleportOptions& options = {});

/// Ad(U_Bob) after the channel after Ad(U_Alice), where U_Alice is the
/// longest prefix of gate-product stages acting on qubits 1 and 2 only.
ComplexMatrix povm_map_interleaved(const DensityOperator& rho_initial, double delta,
                                     double epsilon, double lambda,
                                     const TeleportOptions& options = {});

/// Per branch, Tr(mu(rho_I) |x y Psi><x y Psi|) with rho_I = |Psi><Psi| (x) |EPR><EPR|,
/// minimized over the payload as in fidelity().
FidelityReport dissipative_fidelity(double delta, double epsilon, double lambda,
                                    const TeleportOptions& options = {});

/// Slope of dissipative_fidelity at (0, 0, lambda).
double dissipative_first_order_coeffs(Coefficient which, double lambda, double h = 1e-4,
                                      SlopeScheme scheme = SlopeScheme::forward_richardson,
                                      const TeleportOptions& options = {});

/// Closed-form first-order prediction
/// (1 + e^{-l})/2 + eps [-(3/2)(sqrt2 - 1) + (1 - e^{-l})((21/32) sqrt7 - 51/32)]
///                + delta [-1/(2 sqrt2) + (1 - e^{-l})(3/16) sqrt(3/2)].
double first_order_prediction(double delta, double epsilon, double lambda);

/// <EPR| rho |EPR> for a 2-qubit state.
double entangled_fraction(const DensityOperator& rho);
/// (2 f + 1) / 3
double optimal_fidelity(double fraction);

}  // namespace holotel
