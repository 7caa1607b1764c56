#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include "doctest.h"

#include <cmath>
#include <numbers>

#include "holotel/gates.hpp"

using namespace holotel;

namespace {
constexpr double kPi = std::numbers::pi;
const double kInvSqrt2 = 1.0 / std::numbers::sqrt2;
}  // namespace

TEST_CASE("ideal Hadamard") {
  const ComplexMatrix h = hadamard_ideal();
  for (Eigen::Index i = 0; i < 2; ++i)
    for (Eigen::Index j = 0; j < 2; ++j) CHECK(std::abs(std::abs(h(i, j)) - kInvSqrt2) < 1e-15);
  CHECK(h(1, 1).real() < 0);
  CHECK(max_norm(h * h - identity(2)) < 1e-15);
  CHECK(unitarity_error(h) <= 1e-12);
}

TEST_CASE("imperfect Hadamard") {
  CHECK(max_norm(hadamard_imperfect(0, GateMode::first_order) - hadamard_ideal()) == 0.0);
  CHECK(max_norm(hadamard_imperfect(0, GateMode::exact_area) - hadamard_ideal()) < 1e-15);
  for (double eps : {1e-3, 1e-2, 0.1, 0.2}) {
    CHECK(unitarity_error(hadamard_imperfect(eps, GateMode::first_order)) <= 2 * eps * eps);
  }
  // Taylor expansion of [[cos S, sin S], [sin S, -cos S]] about pi/4.
  const double eps = 1e-3;
  const ComplexMatrix diff = hadamard_imperfect(eps, GateMode::exact_area) - hadamard_imperfect(eps, GateMode::first_order);
  CHECK(max_norm(diff) <= eps * eps);
  CHECK(max_norm(diff) >= 0.25 * eps * eps);
  CHECK(unitarity_error(hadamard_imperfect(0.5, GateMode::exact_area)) < 1e-15);
  CHECK_THROWS_AS(hadamard_imperfect(0.3, GateMode::first_order), std::invalid_argument);
}

TEST_CASE("Hadamard deviation is the area derivative") {
  const double h = 1e-6;
  const ComplexMatrix numeric = (hadamard_from_area(kPi / 4 + h) - hadamard_from_area(kPi / 4 - h)) / (2 * h);
  CHECK(max_norm(numeric - hadamard_deviation()) < 1e-9);
}

TEST_CASE("control-not") {
  const ComplexMatrix cn = cnot_ideal();
  CHECK(max_norm(cnot_imperfect(0) - cn) == 0.0);
  CHECK(unitarity_error(cn) <= 1e-12);
  for (int in = 0; in < 4; ++in) {
    const int out = in < 2 ? in : (in ^ 1);
    CHECK(std::abs(cn(out, in) - 1.0) == 0.0);
  }
  // U_CN(d)|10> = |11> - i d |10>.
  const double d = 1e-3;
  const ComplexVector image = cnot_imperfect(d) * basis_state(4, 2);
  CHECK(std::abs(image(3) - 1.0) < 1e-15);
  CHECK(std::abs(image(2) - Complex(0, -d)) < 1e-15);
  CHECK(std::abs(image(0)) + std::abs(image(1)) == 0.0);
  for (double delta : {1e-3, 0.05, 0.2}) CHECK(unitarity_error(cnot_imperfect(delta)) <= 2 * delta * delta);
  CHECK_THROWS_AS(cnot_imperfect(0.25), std::invalid_argument);
}

TEST_CASE("error parameter guard") {
  CHECK_NOTHROW((GateErrorParams{0.2, -0.2}.validate()));
  CHECK_THROWS_AS((GateErrorParams{0.3, 0}.validate()), std::invalid_argument);
  CHECK_NOTHROW((GateErrorParams{0.3, 0}.validate(GateMode::exact_area)));
  CHECK_THROWS_AS((GateErrorParams{0.0, 0.3}.validate(GateMode::exact_area)), std::invalid_argument);
}

TEST_CASE("abelian phase gate") {
  CHECK(max_norm(phase_gate_from_c1(2 * kPi) - identity(2)) < 1e-15);
  ComplexMatrix z = identity(2);
  z(0, 0) = -1;
  CHECK(max_norm(phase_gate_from_c1(kPi) - z) < 1e-15);
}

TEST_CASE("phase gate matches the engine on a pi-area loop") {
  const LoopSpec loop = hadamard_phase_loop(1024);
  CHECK(area(loop, AreaKind::half_solid_angle) == doctest::Approx(kPi).epsilon(1e-14));
  const ComplexMatrix g = holonomy(loop).matrix;
  CHECK(max_norm(g.topLeftCorner(1, 1) - phase_gate_from_c1(kPi).topLeftCorner(1, 1)) <= 1e-6);
  ComplexMatrix expected = identity(2);
  expected(0, 0) = std::polar(1.0, -0.5 * kPi);
  LoopSpec quarter = loop;
  quarter.second.hi = kPi / 2;
  CHECK(max_norm(holonomy(quarter).matrix - expected) <= 1e-6);
}

TEST_CASE("Hadamard synthesis from loops") {
  const HadamardSynthesis s = synthesize_hadamard(4096);
  CHECK(phase_distance(s.matrix, hadamard_ideal()) <= 1e-6);
  CHECK(std::min(s.phase_first_distance, s.phase_last_distance) <= 1e-6);
  // The two factors do not commute, so the other order misses.
  CHECK(std::max(s.phase_first_distance, s.phase_last_distance) > 0.5);
  CHECK(s.phase_loop_first);
}

TEST_CASE("area-perturbed synthesis follows the first-order gate") {
  const double beta = 1e-3;
  const HadamardSynthesis s = synthesize_hadamard(4096, beta);
  const ComplexMatrix first_order = hadamard_ideal() + beta * hadamard_deviation();
  CHECK(phase_distance(s.matrix, first_order) <= 1e-5);
  CHECK(phase_distance(s.matrix, hadamard_ideal()) > 5e-4);
}

TEST_CASE("gate mode names") {
  CHECK(parse_gate_mode(to_string(GateMode::first_order)) == GateMode::first_order);
  CHECK(parse_gate_mode(to_string(GateMode::exact_area)) == GateMode::exact_area);
  CHECK_THROWS_AS(parse_gate_mode("exact"), std::invalid_argument);
}
