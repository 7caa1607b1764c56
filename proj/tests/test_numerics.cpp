#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include "doctest.h"

#include <cmath>
#include <numbers>
#include <random>

#include "holotel/numerics.hpp"

using namespace holotel;

namespace {

ComplexMatrix random_matrix(std::mt19937_64& rng, Eigen::Index dim) {
  std::normal_distribution<double> g;
  ComplexMatrix m(dim, dim);
  for (Eigen::Index i = 0; i < dim; ++i)
    for (Eigen::Index j = 0; j < dim; ++j) m(i, j) = Complex(g(rng), g(rng));
  return m;
}

ComplexMatrix random_anti_hermitian(std::mt19937_64& rng, Eigen::Index dim) {
  const ComplexMatrix m = random_matrix(rng, dim);
  return 0.5 * (m - m.adjoint());
}

// Taylor series with scaling and squaring.
ComplexMatrix series_exp(const ComplexMatrix& g) {
  int squarings = 0;
  double norm = g.cwiseAbs().rowwise().sum().maxCoeff();
  while (norm > 0.1) {
    norm /= 2;
    ++squarings;
  }
  const ComplexMatrix a = g / std::pow(2.0, squarings);
  ComplexMatrix term = ComplexMatrix::Identity(g.rows(), g.cols());
  ComplexMatrix sum = term;
  for (int k = 1; k < 30; ++k) {
    term = term * a / static_cast<double>(k);
    sum += term;
  }
  for (int s = 0; s < squarings; ++s) sum = sum * sum;
  return sum;
}

// Reference embedding: permute the register so the targets come first, act
// with gate (x) I, permute back.
ComplexMatrix reference_embed(const ComplexMatrix& gate, const std::vector<int>& targets, int n) {
  std::vector<int> order = targets;
  for (int q = 1; q <= n; ++q)
    if (std::find(targets.begin(), targets.end(), q) == targets.end()) order.push_back(q);
  const std::size_t dim = std::size_t{1} << n;
  ComplexMatrix perm = ComplexMatrix::Zero(static_cast<Eigen::Index>(dim), static_cast<Eigen::Index>(dim));
  for (std::size_t label = 0; label < dim; ++label) {
    std::size_t permuted = 0;
    for (int k = 0; k < n; ++k) {
      const std::size_t bit = (label >> (n - order[static_cast<std::size_t>(k)])) & 1;
      permuted |= bit << (n - 1 - k);
    }
    perm(static_cast<Eigen::Index>(permuted), static_cast<Eigen::Index>(label)) = 1.0;
  }
  ComplexMatrix full = gate;
  for (std::size_t k = targets.size(); k < static_cast<std::size_t>(n); ++k) full = kron(full, identity(2));
  return perm.transpose() * full * perm;
}

ComplexMatrix cnot() {
  ComplexMatrix m = ComplexMatrix::Zero(4, 4);
  m(0, 0) = m(1, 1) = m(2, 3) = m(3, 2) = 1.0;
  return m;
}

ComplexMatrix hadamard() {
  ComplexMatrix h(2, 2);
  h << 1, 1, 1, -1;
  return h / std::numbers::sqrt2;
}

}  // namespace

TEST_CASE("qubit register labels qubit 1 as the most significant bit") {
  const QubitRegister reg(3);
  CHECK(reg.dimension() == 8);
  // |x1 x2 x3> = |1 0 1> has label 5.
  CHECK(reg.bit(5, 1) == 1);
  CHECK(reg.bit(5, 2) == 0);
  CHECK(reg.bit(5, 3) == 1);
  CHECK(reg.with_bit(5, 2, 1) == 7);
  CHECK(reg.with_bit(5, 1, 0) == 1);
  for (std::size_t label = 0; label < 8; ++label) {
    std::size_t rebuilt = 0;
    for (int q = 1; q <= 3; ++q) rebuilt = reg.with_bit(rebuilt, q, reg.bit(label, q));
    CHECK(rebuilt == label);
  }
  CHECK_THROWS_AS(QubitRegister(0), std::invalid_argument);
  CHECK_THROWS_AS(QubitRegister(11), std::invalid_argument);
}

TEST_CASE("kron of identities and diagonals") {
  CHECK(max_norm(kron(identity(2), identity(2)) - identity(4)) == 0.0);
  ComplexMatrix z = ComplexMatrix::Zero(2, 2);
  z(0, 0) = 1;
  z(1, 1) = -1;
  ComplexMatrix expected = ComplexMatrix::Zero(4, 4);
  expected.diagonal() << 1, 1, -1, -1;
  CHECK(max_norm(kron(z, identity(2)) - expected) == 0.0);
}

TEST_CASE("kron satisfies the mixed-product rule") {
  std::mt19937_64 rng(7);
  for (int trial = 0; trial < 20; ++trial) {
    const auto a = random_matrix(rng, 2), b = random_matrix(rng, 2);
    const auto c = random_matrix(rng, 2), d = random_matrix(rng, 2);
    CHECK(max_norm(kron(a, b) * kron(c, d) - kron(ComplexMatrix(a * c), ComplexMatrix(b * d))) < 1e-12);
  }
}

TEST_CASE("kron of vectors matches the matrix kron of columns") {
  ComplexVector a(2), b(3);
  a << 1.0, Complex(0, 2);
  b << 3.0, -1.0, Complex(1, 1);
  const ComplexMatrix m = kron(ComplexMatrix(a), ComplexMatrix(b));
  CHECK((kron(a, b) - m.col(0)).cwiseAbs().maxCoeff() == 0.0);
}

TEST_CASE("expm of zero is the identity") {
  CHECK(max_norm(expm_anti_hermitian(ComplexMatrix::Zero(3, 3)) - identity(3)) < 1e-15);
}

TEST_CASE("expm of a real rotation generator") {
  ComplexMatrix g = ComplexMatrix::Zero(2, 2);
  g(0, 1) = std::numbers::pi / 4;
  g(1, 0) = -std::numbers::pi / 4;
  const double c = std::cos(std::numbers::pi / 4), s = std::sin(std::numbers::pi / 4);
  ComplexMatrix expected(2, 2);
  expected << c, s, -s, c;
  CHECK(max_norm(expm_anti_hermitian(g) - expected) < 1e-14);
}

TEST_CASE("expm agrees with the scaled Taylor series and inverts") {
  std::mt19937_64 rng(11);
  for (int trial = 0; trial < 50; ++trial) {
    const auto g = random_anti_hermitian(rng, 4);
    const auto u = expm_anti_hermitian(g);
    CHECK(max_norm(u - series_exp(g)) < 1e-11);
    CHECK(max_norm(u * expm_anti_hermitian(ComplexMatrix(-g)) - identity(4)) < 1e-12);
  }
}

TEST_CASE("expm output is unitary for 1000 random generators") {
  std::mt19937_64 rng(3);
  std::uniform_int_distribution<int> dims(1, 8);
  double worst = 0.0;
  for (int trial = 0; trial < 1000; ++trial) {
    worst = std::max(worst, unitarity_error(expm_anti_hermitian(random_anti_hermitian(rng, dims(rng)))));
  }
  CHECK(worst <= kUnitaryTolerance);
}

TEST_CASE("expm rejects non-anti-Hermitian input") {
  CHECK_THROWS_AS(expm_anti_hermitian(identity(2)), std::invalid_argument);
  CHECK_THROWS_AS(expm_anti_hermitian(ComplexMatrix::Zero(2, 3)), std::invalid_argument);
}

TEST_CASE("embed places a control-not and a Hadamard as Kronecker factors") {
  const QubitRegister reg(3);
  CHECK(max_norm(embed(cnot(), {1, 2}, reg) - kron(cnot(), identity(2))) == 0.0);
  CHECK(max_norm(embed(hadamard(), {1}, reg) - kron(kron(hadamard(), identity(2)), identity(2))) < 1e-15);
  for (int q = 1; q <= 4; ++q) CHECK(max_norm(embed(identity(2), {q}, QubitRegister(4)) - identity(16)) == 0.0);
}

TEST_CASE("embed matches a permutation-based reference") {
  std::mt19937_64 rng(5);
  const std::vector<std::vector<int>> target_sets = {{3, 1}, {2, 4}, {4, 1, 3}, {2}};
  for (const auto& targets : target_sets) {
    const auto gate = random_matrix(rng, static_cast<Eigen::Index>(1) << targets.size());
    const auto ours = embed(gate, std::span<const int>(targets), QubitRegister(4));
    CHECK(max_norm(ours - reference_embed(gate, targets, 4)) < 1e-14);
  }
}

TEST_CASE("embedded gates on disjoint targets commute and stay unitary") {
  std::mt19937_64 rng(9);
  const QubitRegister reg(4);
  const auto a = expm_anti_hermitian(random_anti_hermitian(rng, 4));
  const auto b = expm_anti_hermitian(random_anti_hermitian(rng, 2));
  const auto ea = embed(a, {4, 1}, reg);
  const auto eb = embed(b, {2}, reg);
  CHECK(max_norm(ea * eb - eb * ea) < 1e-13);
  CHECK(is_unitary(ea));
  CHECK(is_unitary(eb));
}

TEST_CASE("embed rejects bad targets") {
  const QubitRegister reg(3);
  CHECK_THROWS_AS(embed(cnot(), {1}, reg), std::invalid_argument);
  CHECK_THROWS_AS(embed(cnot(), {2, 2}, reg), std::invalid_argument);
  CHECK_THROWS_AS(embed(hadamard(), {4}, reg), std::invalid_argument);
  CHECK_THROWS_AS(embed(hadamard(), {0}, reg), std::invalid_argument);
}

TEST_CASE("phase distance ignores global phase only") {
  std::mt19937_64 rng(13);
  const auto u = expm_anti_hermitian(random_anti_hermitian(rng, 3));
  CHECK(phase_distance(std::polar(1.0, 2.1) * u, u) < 1e-12);
  CHECK(phase_distance(u, u) < 1e-15);
  ComplexMatrix z = identity(2);
  z(1, 1) = -1;
  // max(|e^{ip} - 1|, |e^{ip} + 1|) is smallest at p = pi/2.
  CHECK(phase_distance(z, identity(2)) == doctest::Approx(std::numbers::sqrt2).epsilon(1e-9));
}
