#pragma once

#include <Eigen/Dense>
#include <vector>

#include "oqsim/errors.hpp"
#include "oqsim/rng.hpp"

namespace oqsim {

using Matrix2 = Eigen::Matrix2cd;
using Matrix4 = Eigen::Matrix4cd;
using Vector2 = Eigen::Vector2cd;

// Single-qubit constants.
Matrix2 pauli_i();
Matrix2 pauli_x();
Matrix2 pauli_y();
Matrix2 pauli_z();
Matrix2 hadamard();
// Z(a) = exp(i a Z / 2), X(b) = exp(i b X / 2).
Matrix2 rot_z(double alpha);
Matrix2 rot_x(double beta);

Matrix4 cz_gate();
Matrix4 cnot_gate();

// Dense n-qubit state vector. Qubit 0 is the most significant bit of the
// basis index, so |q0 q1 ... q_{n-1}> reads left to right.
class QubitRegister {
  public:
    QubitRegister() = default;
    explicit QubitRegister(int qubits);

    static QubitRegister computational(int qubits, std::size_t basis_index);
    static QubitRegister all_plus(int qubits);
    static QubitRegister single(const Vector2& amplitudes);
    static QubitRegister tensor(const QubitRegister& a, const QubitRegister& b);

    int qubit_count() const { return n_; }
    std::size_t dim() const { return static_cast<std::size_t>(amps_.size()); }
    const Eigen::VectorXcd& amplitudes() const { return amps_; }
    Eigen::VectorXcd& amplitudes() { return amps_; }

    int bit(std::size_t index, int qubit) const {
        return static_cast<int>((index >> (n_ - 1 - qubit)) & 1u);
    }

    double norm2() const { return amps_.squaredNorm(); }
    void normalize();

    void apply_single(int qubit, const Matrix2& gate);
    void apply_cz(int a, int b);
    // Any two-qubit gate in the (a,b) ordering convention above.
    void apply_two(int a, int b, const Matrix4& gate);

    // Projects qubit `q` onto <bra| and removes it from the register.
    // Returns the branch probability; the register holds the renormalized
    // remainder (or a zero vector when the branch has no support).
    double project_out(int q, const Vector2& bra);

  private:
    int n_ = 0;
    Eigen::VectorXcd amps_;
};

// |<a|b>|^2 for normalized registers.
double fidelity(const QubitRegister& a, const QubitRegister& b);

}  // namespace oqsim
