#pragma once

#include <array>

#include "oqsim/linear_optics.hpp"
#include "oqsim/qubit.hpp"
#include "oqsim/rng.hpp"

namespace oqsim {

// Two photonic qubits entangled with a bright coherent probe through weak
// cross-Kerr interactions. The probe never leaves the three-branch family
// |alpha e^{i s theta}> with s in {-1, 0, +1}, so it is carried symbolically
// per two-qubit basis label and all overlaps are exact at any alpha.
struct HybridState {
    double alpha = 0.0;
    double theta = 0.0;
    // Indexed by the two-qubit basis 00, 01, 10, 11.
    std::array<cd, 4> amplitudes{};
    std::array<int, 4> label_shift{};

    static HybridState attach(const Eigen::Vector4cd& qubits, double alpha, double theta);
    double norm2() const;  // exact, using coherent-state overlaps
};

// Conditional phase shift: basis labels with the control qubit excited move
// their probe branch by `sign` units of theta. Throws LabelOverflow if a
// label would leave {-1, 0, +1}.
HybridState cross_kerr(const HybridState& state, int control_qubit, int sign);

// <alpha e^{i s1 theta} | alpha e^{i s2 theta}>.
cd coherent_overlap(double alpha, double theta, int s1, int s2);

// <x | alpha e^{i s theta}> for real alpha in the co-rotating frame.
cd x_overlap(double x, int s, double alpha, double theta);

// phi(x) = alpha sin(theta) (sqrt2 x - alpha cos(theta)).
double phase_correction(double x, double alpha, double theta);

double x_even_peak(double alpha);                // sqrt2 alpha
double x_odd_peak(double alpha, double theta);   // sqrt2 alpha cos(theta)

// Smallest alpha with x_e - x_o >= separation at the given theta.
double min_alpha_for_separation(double theta, double separation);

struct Conditioned {
    Eigen::Vector4cd qubits;  // unnormalized <x|psi>
    double density = 0.0;     // p(x) = |<x|psi>|^2
};

Conditioned condition_on_x(const HybridState& state, double x);

struct QuadratureOutcome {
    double x = 0.0;
    bool even = false;          // midpoint threshold between the two peaks
    double correction_phase = 0.0;  // phi(x)
};

// Draws x from the exact two-Gaussian mixture p(x).
QuadratureOutcome sample_x(const HybridState& state, RandomStream& rng);

struct ParityGateResult {
    bool even = false;
    Eigen::Vector4cd state;  // normalized conditional state, phase-corrected
    double x = 0.0;
};

// The full weak-nonlinearity parity gate: +theta on qubit a, -theta on
// qubit b, x-quadrature sample, e^{+i phi} / e^{-i phi} correction on the
// odd amplitudes.
ParityGateResult parity_gate(const Eigen::Vector4cd& psi_ab, double alpha, double theta,
                             RandomStream& rng);

// Probability that the midpoint rule names the wrong parity subspace
// (Gaussian tail mass at the given peak separation).
double misidentification_probability(double separation);

// Mean fidelity of the corrected output with the ideal parity projection,
// integrated over p(x) by quadrature.
double mean_gate_fidelity(const Eigen::Vector4cd& psi_ab, double alpha, double theta,
                          int grid_points = 20001);

// Strong-Kerr limit: the polarization-qubit arrangement with a cross-phase
// of tau between the two V rails, evaluated in the Fock engine and read
// back as a two-qubit matrix (tau = pi gives U_CZ).
Matrix4 strong_kerr_two_qubit_matrix(double tau);

}  // namespace oqsim
