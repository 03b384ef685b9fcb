#include "oqsim/qubit.hpp"

#include <cmath>
#include <complex>

namespace oqsim {

namespace {
constexpr std::complex<double> kI = std::complex<double>(0.0, 1.0);
}

Matrix2 pauli_i() { return Matrix2::Identity(); }

Matrix2 pauli_x() {
    Matrix2 m;
    m << 0, 1, 1, 0;
    return m;
}

Matrix2 pauli_y() {
    Matrix2 m;
    m << 0, -kI, kI, 0;
    return m;
}

Matrix2 pauli_z() {
    Matrix2 m;
    m << 1, 0, 0, -1;
    return m;
}

Matrix2 hadamard() {
    Matrix2 m;
    double s = 1.0 / std::sqrt(2.0);
    m << s, s, s, -s;
    return m;
}

Matrix2 rot_z(double alpha) {
    Matrix2 m = Matrix2::Zero();
    m(0, 0) = std::exp(kI * (alpha / 2.0));
    m(1, 1) = std::exp(-kI * (alpha / 2.0));
    return m;
}

Matrix2 rot_x(double beta) {
    Matrix2 m;
    m(0, 0) = std::cos(beta / 2.0);
    m(0, 1) = kI * std::sin(beta / 2.0);
    m(1, 0) = kI * std::sin(beta / 2.0);
    m(1, 1) = std::cos(beta / 2.0);
    return m;
}

Matrix4 cz_gate() {
    Matrix4 m = Matrix4::Identity();
    m(3, 3) = -1.0;
    return m;
}

Matrix4 cnot_gate() {
    Matrix4 m = Matrix4::Identity();
    m(2, 2) = 0;
    m(3, 3) = 0;
    m(2, 3) = 1;
    m(3, 2) = 1;
    return m;
}

QubitRegister::QubitRegister(int qubits) : n_(qubits) {
    amps_ = Eigen::VectorXcd::Zero(std::size_t{1} << qubits);
    amps_(0) = 1.0;
}

QubitRegister QubitRegister::computational(int qubits, std::size_t basis_index) {
    QubitRegister r(qubits);
    r.amps_.setZero();
    r.amps_(static_cast<Eigen::Index>(basis_index)) = 1.0;
    return r;
}

QubitRegister QubitRegister::all_plus(int qubits) {
    QubitRegister r(qubits);
    double a = 1.0 / std::sqrt(static_cast<double>(std::size_t{1} << qubits));
    r.amps_.setConstant(a);
    return r;
}

QubitRegister QubitRegister::single(const Vector2& amplitudes) {
    QubitRegister r(1);
    r.amps_(0) = amplitudes(0);
    r.amps_(1) = amplitudes(1);
    return r;
}

QubitRegister QubitRegister::tensor(const QubitRegister& a, const QubitRegister& b) {
    QubitRegister r;
    r.n_ = a.n_ + b.n_;
    r.amps_ = Eigen::VectorXcd::Zero(a.amps_.size() * b.amps_.size());
    for (Eigen::Index i = 0; i < a.amps_.size(); ++i)
        for (Eigen::Index j = 0; j < b.amps_.size(); ++j)
            r.amps_(i * b.amps_.size() + j) = a.amps_(i) * b.amps_(j);
    return r;
}

void QubitRegister::normalize() {
    double n = amps_.norm();
    if (n > 0.0) amps_ /= n;
}

void QubitRegister::apply_single(int qubit, const Matrix2& gate) {
    std::size_t stride = std::size_t{1} << (n_ - 1 - qubit);
    for (std::size_t base = 0; base < dim(); ++base) {
        if (base & stride) continue;
        std::complex<double> a0 = amps_(base);
        std::complex<double> a1 = amps_(base | stride);
        amps_(base) = gate(0, 0) * a0 + gate(0, 1) * a1;
        amps_(base | stride) = gate(1, 0) * a0 + gate(1, 1) * a1;
    }
}

void QubitRegister::apply_cz(int a, int b) {
    for (std::size_t i = 0; i < dim(); ++i)
        if (bit(i, a) && bit(i, b)) amps_(i) = -amps_(i);
}

void QubitRegister::apply_two(int a, int b, const Matrix4& gate) {
    std::size_t sa = std::size_t{1} << (n_ - 1 - a);
    std::size_t sb = std::size_t{1} << (n_ - 1 - b);
    for (std::size_t base = 0; base < dim(); ++base) {
        if ((base & sa) || (base & sb)) continue;
        std::size_t idx[4] = {base, base | sb, base | sa, base | sa | sb};
        Eigen::Vector4cd v;
        for (int k = 0; k < 4; ++k) v(k) = amps_(idx[k]);
        Eigen::Vector4cd w = gate * v;
        for (int k = 0; k < 4; ++k) amps_(idx[k]) = w(k);
    }
}

double QubitRegister::project_out(int q, const Vector2& bra) {
    std::size_t stride = std::size_t{1} << (n_ - 1 - q);
    Eigen::VectorXcd reduced = Eigen::VectorXcd::Zero(amps_.size() / 2);
    Eigen::Index out = 0;
    for (std::size_t base = 0; base < dim(); ++base) {
        if (base & stride) continue;
        reduced(out++) =
            std::conj(bra(0)) * amps_(base) + std::conj(bra(1)) * amps_(base | stride);
    }
    double prob = reduced.squaredNorm() / amps_.squaredNorm();
    n_ -= 1;
    amps_ = std::move(reduced);
    normalize();
    return prob;
}

double fidelity(const QubitRegister& a, const QubitRegister& b) {
    std::complex<double> ov = a.amplitudes().dot(b.amplitudes());
    return std::norm(ov);
}

}  // namespace oqsim
