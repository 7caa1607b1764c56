#pragma once

#include <complex>
#include <cstdint>
#include <span>
#include <vector>

#include <Eigen/Dense>

namespace holotel {

using Complex = std::complex<double>;
using ComplexMatrix = Eigen::MatrixXcd;
using ComplexVector = Eigen::VectorXcd;

inline constexpr double kUnitaryTolerance = 1e-10;

/// A register of qubits labelled 1..n. Qubit 1 is the most significant bit
/// of the computational-basis label, so |x_1 x_2 ... x_n> has label
/// sum_k x_k 2^(n-k).
class QubitRegister {
 public:
  explicit QubitRegister(int n_qubits);

  int size() const { return n_qubits_; }
  std::size_t dimension() const { return std::size_t{1} << n_qubits_; }

  /// Bit of `qubit` (1-based) in basis label `label`.
  unsigned bit(std::size_t label, int qubit) const {
    return static_cast<unsigned>((label >> (n_qubits_ - qubit)) & 1U);
  }
  std::size_t with_bit(std::size_t label, int qubit, unsigned value) const {
    const std::size_t mask = std::size_t{1} << (n_qubits_ - qubit);
    return value ? (label | mask) : (label & ~mask);
  }

 private:
  int n_qubits_;
};

ComplexMatrix kron(const ComplexMatrix& a, const ComplexMatrix& b);
ComplexVector kron(const ComplexVector& a, const ComplexVector& b);

/// exp(G) for anti-Hermitian G, through the eigendecomposition of the
/// Hermitian matrix iG. Throws std::invalid_argument if ||G + G^dag||_max
/// exceeds 1e-10.
ComplexMatrix expm_anti_hermitian(const ComplexMatrix& generator);

/// Operator acting as `gate` on `targets` (1-based, in the gate's own qubit
/// order) and as the identity on every other qubit of `reg`.
ComplexMatrix embed(const ComplexMatrix& gate, std::span<const int> targets,
                    const QubitRegister& reg);
ComplexMatrix embed(const ComplexMatrix& gate, std::initializer_list<int> targets,
                    const QubitRegister& reg);

double max_norm(const ComplexMatrix& m);
/// ||U^dag U - I||_max
double unitarity_error(const ComplexMatrix& u);
bool is_unitary(const ComplexMatrix& u, double tol = kUnitaryTolerance);
/// ||G + G^dag||_max
double anti_hermiticity_error(const ComplexMatrix& g);

/// min over phi of ||e^{i phi} a - b||_max.
double phase_distance(const ComplexMatrix& a, const ComplexMatrix& b);

ComplexMatrix identity(std::size_t dim);
ComplexVector basis_state(std::size_t dim, std::size_t label);

}  // namespace holotel
