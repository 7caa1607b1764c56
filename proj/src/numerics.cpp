#include "holotel/numerics.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <stdexcept>
#include <string>

#include <Eigen/Eigenvalues>

namespace holotel {

QubitRegister::QubitRegister(int n_qubits) : n_qubits_(n_qubits) {
  if (n_qubits < 1 || n_qubits > 10) {
    throw std::invalid_argument("qubit register size must be in [1, 10], got " +
                                std::to_string(n_qubits));
  }
}

ComplexMatrix kron(const ComplexMatrix& a, const ComplexMatrix& b) {
  ComplexMatrix out(a.rows() * b.rows(), a.cols() * b.cols());
  for (Eigen::Index i = 0; i < a.rows(); ++i) {
    for (Eigen::Index j = 0; j < a.cols(); ++j) {
      out.block(i * b.rows(), j * b.cols(), b.rows(), b.cols()) = a(i, j) * b;
    }
  }
  return out;
}

ComplexVector kron(const ComplexVector& a, const ComplexVector& b) {
  ComplexVector out(a.size() * b.size());
  for (Eigen::Index i = 0; i < a.size(); ++i) {
    out.segment(i * b.size(), b.size()) = a(i) * b;
  }
  return out;
}

double max_norm(const ComplexMatrix& m) {
  return m.size() == 0 ? 0.0 : m.cwiseAbs().maxCoeff();
}

double anti_hermiticity_error(const ComplexMatrix& g) {
  return max_norm(g + g.adjoint());
}

double unitarity_error(const ComplexMatrix& u) {
  if (u.rows() != u.cols()) return INFINITY;
  return max_norm(u.adjoint() * u - ComplexMatrix::Identity(u.rows(), u.cols()));
}

bool is_unitary(const ComplexMatrix& u, double tol) { return unitarity_error(u) <= tol; }

ComplexMatrix identity(std::size_t dim) {
  return ComplexMatrix::Identity(static_cast<Eigen::Index>(dim), static_cast<Eigen::Index>(dim));
}

ComplexVector basis_state(std::size_t dim, std::size_t label) {
  ComplexVector v = ComplexVector::Zero(static_cast<Eigen::Index>(dim));
  v(static_cast<Eigen::Index>(label)) = 1.0;
  return v;
}

ComplexMatrix expm_anti_hermitian(const ComplexMatrix& generator) {
  if (generator.rows() != generator.cols()) {
    throw std::invalid_argument("expm_anti_hermitian: generator must be square");
  }
  const double err = anti_hermiticity_error(generator);
  if (err > kUnitaryTolerance) {
    throw std::invalid_argument("expm_anti_hermitian: generator is not anti-Hermitian (||G+G^dag||=" +
                                std::to_string(err) + ")");
  }
  // iG is Hermitian; exp(G) = exp(-i (iG)).
  const ComplexMatrix hermitian = Complex(0.0, 0.5) * (generator - generator.adjoint());
  Eigen::SelfAdjointEigenSolver<ComplexMatrix> solver(hermitian);
  const auto& vecs = solver.eigenvectors();
  const Eigen::VectorXd& vals = solver.eigenvalues();
  ComplexVector phases(vals.size());
  for (Eigen::Index k = 0; k < vals.size(); ++k) phases(k) = std::polar(1.0, -vals(k));
  return vecs * phases.asDiagonal() * vecs.adjoint();
}

ComplexMatrix embed(const ComplexMatrix& gate, std::span<const int> targets,
                    const QubitRegister& reg) {
  const std::size_t k = targets.size();
  if (k == 0) throw std::invalid_argument("embed: empty target list");
  if (gate.rows() != gate.cols() || static_cast<std::size_t>(gate.rows()) != (std::size_t{1} << k)) {
    throw std::invalid_argument("embed: gate dimension " + std::to_string(gate.rows()) +
                                " does not match 2^" + std::to_string(k));
  }
  for (std::size_t a = 0; a < k; ++a) {
    if (targets[a] < 1 || targets[a] > reg.size()) {
      throw std::invalid_argument("embed: target qubit " + std::to_string(targets[a]) +
                                  " outside register of " + std::to_string(reg.size()));
    }
    for (std::size_t b = 0; b < a; ++b) {
      if (targets[a] == targets[b]) throw std::invalid_argument("embed: duplicate target qubits");
    }
  }

  const std::size_t dim = reg.dimension();
  const std::size_t sub_dim = std::size_t{1} << k;
  ComplexMatrix out = ComplexMatrix::Zero(static_cast<Eigen::Index>(dim), static_cast<Eigen::Index>(dim));
  for (std::size_t col = 0; col < dim; ++col) {
    std::size_t sub_col = 0;
    for (std::size_t a = 0; a < k; ++a) sub_col = (sub_col << 1) | reg.bit(col, targets[a]);
    for (std::size_t sub_row = 0; sub_row < sub_dim; ++sub_row) {
      const Complex amp = gate(static_cast<Eigen::Index>(sub_row), static_cast<Eigen::Index>(sub_col));
      if (amp == Complex{}) continue;
      std::size_t row = col;
      for (std::size_t a = 0; a < k; ++a) {
        row = reg.with_bit(row, targets[a], static_cast<unsigned>((sub_row >> (k - 1 - a)) & 1U));
      }
      out(static_cast<Eigen::Index>(row), static_cast<Eigen::Index>(col)) += amp;
    }
  }
  return out;
}

ComplexMatrix embed(const ComplexMatrix& gate, std::initializer_list<int> targets,
                    const QubitRegister& reg) {
  return embed(gate, std::span<const int>(targets.begin(), targets.size()), reg);
}

double phase_distance(const ComplexMatrix& a, const ComplexMatrix& b) {
  if (a.rows() != b.rows() || a.cols() != b.cols()) {
    throw std::invalid_argument("phase_distance: shape mismatch");
  }
  auto dist = [&](double phi) { return max_norm(std::polar(1.0, phi) * a - b); };

  // The Frobenius-optimal phase is the usual winner; a coarse scan guards
  // against the max-norm optimum sitting elsewhere.
  const Complex overlap = (a.conjugate().cwiseProduct(b)).sum();
  double best_phi = std::arg(overlap);
  double best = dist(best_phi);
  constexpr int kScan = 256;
  const double step = 2.0 * std::numbers::pi / kScan;
  for (int s = 0; s < kScan; ++s) {
    const double phi = s * step;
    const double d = dist(phi);
    if (d < best) {
      best = d;
      best_phi = phi;
    }
  }
  // Golden-section refinement in a window around the best candidate.
  const double inv_phi = (std::sqrt(5.0) - 1.0) / 2.0;
  double lo = best_phi - step, hi = best_phi + step;
  double x1 = hi - inv_phi * (hi - lo), x2 = lo + inv_phi * (hi - lo);
  double f1 = dist(x1), f2 = dist(x2);
  for (int it = 0; it < 100 && hi - lo > 1e-14; ++it) {
    if (f1 < f2) {
      hi = x2; x2 = x1; f2 = f1;
      x1 = hi - inv_phi * (hi - lo); f1 = dist(x1);
    } else {
      lo = x1; x1 = x2; f1 = f2;
      x2 = lo + inv_phi * (hi - lo); f2 = dist(x2);
    }
  }
  return std::min({best, f1, f2});
}

}  // namespace holotel
