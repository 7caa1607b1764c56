#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include "doctest.h"

#include <cmath>
#include <numbers>
#include <random>

#include "holotel/noise.hpp"

using namespace holotel;

namespace {

constexpr double kPi = std::numbers::pi;

DensityOperator random_state(std::mt19937_64& rng, Eigen::Index dim) {
  std::normal_distribution<double> g;
  ComplexMatrix a(dim, dim);
  for (Eigen::Index i = 0; i < dim; ++i)
    for (Eigen::Index j = 0; j < dim; ++j) a(i, j) = Complex(g(rng), g(rng));
  ComplexMatrix rho = a * a.adjoint();
  rho /= rho.trace().real();
  return DensityOperator(ComplexMatrix(0.5 * (rho + rho.adjoint())));
}

ComplexVector plus_state() {
  ComplexVector v(2);
  v << 1.0, 1.0;
  return v / std::numbers::sqrt2;
}

DensityOperator initial_state(double theta, double phi) {
  return DensityOperator::pure(kron(BlochState{theta, phi}.vector(), epr_pair()));
}

}  // namespace

TEST_CASE("phase damping operators") {
  const KrausChannel none = phase_damping(0);
  CHECK(max_norm(none.operators[0] - identity(2)) <= 1e-12);
  CHECK(max_norm(none.operators[1]) <= 1e-12);
  for (double lambda : {0.1, 1.0, 10.0}) {
    const KrausChannel ch = phase_damping(lambda);
    CHECK(ch.completeness_error() <= 1e-12);
    CHECK(ch.operators[0](1, 1).real() == doctest::Approx(std::exp(-lambda)));
    CHECK(ch.operators[1](0, 0) == Complex(0.0));
  }
  CHECK_THROWS_AS(phase_damping(-0.1), std::invalid_argument);
}

TEST_CASE("strong damping removes coherences") {
  const DensityOperator rho = apply_channel(DensityOperator::pure(plus_state()), phase_damping(50), 1);
  CHECK(std::abs(rho.matrix()(0, 1)) < 1e-12);
  CHECK(rho.matrix()(0, 0).real() == doctest::Approx(0.5).epsilon(1e-14));
  CHECK(rho.matrix()(1, 1).real() == doctest::Approx(0.5).epsilon(1e-14));
}

TEST_CASE("identity channel and trace preservation") {
  std::mt19937_64 rng(43);
  const DensityOperator rho = random_state(rng, 8);
  CHECK(max_norm(apply_channel(rho, phase_damping(0), 2).matrix() - rho.matrix()) <= 1e-15);
  for (int k = 0; k < 20; ++k) {
    const DensityOperator r = random_state(rng, 8);
    CHECK(apply_channel(r, phase_damping(0.7), 3).trace() == doctest::Approx(1.0).epsilon(1e-12));
  }
  CHECK_THROWS_AS(apply_channel(rho, phase_damping(1), 4), std::invalid_argument);
}

TEST_CASE("damped EPR overlap by hand") {
  // rho' keeps |00><00|, |11><11| at 1/2 and scales |00><11| by e^{-l}.
  for (double lambda : {0.3, 2.0}) {
    const DensityOperator rho = apply_channel(DensityOperator::pure(epr_pair()), phase_damping(lambda), 2);
    ComplexMatrix expected = ComplexMatrix::Zero(4, 4);
    expected(0, 0) = expected(3, 3) = 0.5;
    expected(0, 3) = expected(3, 0) = 0.5 * std::exp(-lambda);
    CHECK(max_norm(rho.matrix() - expected) < 1e-15);
    CHECK(entangled_fraction(rho) == doctest::Approx(0.5 * (1 + std::exp(-lambda))).epsilon(1e-14));
  }
}

TEST_CASE("channel output stays positive") {
  std::mt19937_64 rng(47);
  double worst = 0;
  for (double lambda : {0.01, 0.1, 1.0, 10.0}) {
    for (int k = 0; k < 250; ++k) {
      const DensityOperator out = apply_channel(random_state(rng, 8), phase_damping(lambda), 3);
      worst = std::min(worst, out.min_eigenvalue());
    }
  }
  CHECK(worst >= -1e-10);
}

TEST_CASE("density operator validation") {
  CHECK_THROWS_AS(DensityOperator(identity(2)), std::invalid_argument);
  CHECK_THROWS_AS(DensityOperator(ComplexMatrix(identity(3) / 3.0)), std::invalid_argument);
  ComplexMatrix negative = ComplexMatrix::Zero(2, 2);
  negative(0, 0) = 1.5;
  negative(1, 1) = -0.5;
  CHECK_THROWS_AS(DensityOperator{negative}, std::invalid_argument);
  ComplexMatrix skew = identity(2) / 2.0;
  skew(0, 1) = Complex(0, 0.1);
  CHECK_THROWS_AS(DensityOperator{skew}, std::invalid_argument);
  CHECK(DensityOperator(ComplexMatrix(identity(4) / 4.0)).qubits() == 2);
}

TEST_CASE("undamped map is conjugation by the circuit") {
  const DensityOperator rho = initial_state(0.8, 1.9);
  const ComplexMatrix u = build_teleport(0.01, 0.02).gatewise_linear;
  CHECK(max_norm(povm_map(rho, 0.01, 0.02, 0.0) - u * rho.matrix() * u.adjoint()) < 1e-15);
  CHECK(povm_map(rho, 0, 0, 0.7).trace().real() == doctest::Approx(1.0).epsilon(1e-12));
}

TEST_CASE("channel commutes past the gates before Bob's qubit is touched") {
  TeleportOptions options;
  options.model = CircuitModel::gate_product;
  std::mt19937_64 rng(53);
  for (int k = 0; k < 5; ++k) {
    const DensityOperator rho = random_state(rng, 8);
    const ComplexMatrix simplified = povm_map(rho, 0.01, 0.02, 0.8, options);
    const ComplexMatrix interleaved = povm_map_interleaved(rho, 0.01, 0.02, 0.8, options);
    CHECK(max_norm(simplified - interleaved) <= 1e-12);
  }
}

TEST_CASE("branch objective equals the trace overlap") {
  const double d = 0.01, e = 0.02, lambda = 0.6;
  const ComplexMatrix mu_full = povm_map(initial_state(1.3, 4.0), d, e, lambda);
  const FidelityReport r = dissipative_fidelity(d, e, lambda);
  const ComplexMatrix mu = povm_map(initial_state(r.argmin[0], r.argmin[1]), d, e, lambda);
  const ComplexVector psi = BlochState{r.argmin[0], r.argmin[1]}.vector();
  double total = 0;
  for (int x = 0; x < 2; ++x)
    for (int y = 0; y < 2; ++y) {
      const ComplexVector f = kron(kron(basis_state(2, x), basis_state(2, y)), psi);
      const double overlap = f.dot(mu * f).real();
      CHECK(overlap == doctest::Approx(r.branches[static_cast<std::size_t>(2 * x + y)]).epsilon(1e-12));
      total += overlap;
    }
  CHECK(total == doctest::Approx(r.total).epsilon(1e-12));
  // Any other payload does at least as well.
  const ComplexVector other = BlochState{1.3, 4.0}.vector();
  double other_total = 0;
  for (int b = 0; b < 4; ++b) {
    const ComplexVector f = kron(kron(basis_state(2, b >> 1), basis_state(2, b & 1)), other);
    other_total += f.dot(mu_full * f).real();
  }
  CHECK(r.total <= other_total + 1e-12);
}

TEST_CASE("undamped dissipative fidelity equals the pure fidelity") {
  for (double d : {0.0, 0.01, 0.02})
    for (double e : {0.0, 0.01, 0.02})
      CHECK(std::abs(dissipative_fidelity(d, e, 0).total - fidelity(d, e).total) <= 1e-9);
}

TEST_CASE("ideal dissipative fidelity") {
  double previous = 1.0;
  for (double lambda : {0.1, 0.5, 1.0, 2.0, 5.0, 10.0}) {
    const double f = dissipative_fidelity(0, 0, lambda).total;
    CHECK(std::abs(f - 0.5 * (1 + std::exp(-lambda))) <= 1e-10);
    CHECK(f < previous);
    CHECK(f > 0.5);
    previous = f;
  }
}

TEST_CASE("delta slope under damping") {
  // Measured: the delta coefficient scales like the leading term,
  // -(1 + e^{-l}) / (4 sqrt2).
  for (double lambda : {0.5, 1.0, 2.0}) {
    const double slope = dissipative_first_order_coeffs(Coefficient::delta, lambda);
    CHECK(slope == doctest::Approx(-(1 + std::exp(-lambda)) / (4 * std::numbers::sqrt2)).epsilon(1e-4));
  }
}

TEST_CASE("closed-form prediction reduces to the undamped coefficients") {
  CHECK(first_order_prediction(0, 0, 0) == 1.0);
  CHECK(first_order_prediction(0, 1, 0) - 1 == doctest::Approx(-1.5 * (std::numbers::sqrt2 - 1)));
  CHECK(first_order_prediction(1, 0, 0) - 1 == doctest::Approx(-1 / (2 * std::numbers::sqrt2)));
  CHECK(first_order_prediction(0, 0, 1) == doctest::Approx(0.5 * (1 + std::exp(-1.0))));
}

TEST_CASE("entangled fraction and optimal fidelity") {
  CHECK(entangled_fraction(DensityOperator::pure(epr_pair())) == doctest::Approx(1.0).epsilon(1e-15));
  CHECK(optimal_fidelity(1.0) == doctest::Approx(1.0));
  const DensityOperator mixed(ComplexMatrix(identity(4) / 4.0));
  CHECK(entangled_fraction(mixed) == doctest::Approx(0.25));
  CHECK(optimal_fidelity(0.25) == doctest::Approx(0.5));
  for (double lambda : {0.5, 2.0, 5.0, 20.0}) {
    const double f = entangled_fraction(apply_channel(DensityOperator::pure(epr_pair()), phase_damping(lambda), 2));
    CHECK(f > 0.5);
    CHECK(optimal_fidelity(f) > 2.0 / 3.0);
  }
  CHECK_THROWS_AS(entangled_fraction(DensityOperator::pure(basis_state(8, 0))), std::invalid_argument);
}
