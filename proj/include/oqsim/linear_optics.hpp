#pragma once

#include <Eigen/Dense>
#include <vector>

#include "oqsim/fock.hpp"

namespace oqsim {

using Matrix = Eigen::MatrixXcd;

// N x N unitary acting on mode creation operators. Application convention
// throughout: column k of the matrix is the image of input mode k,
//   a_k^dag -> sum_j U(j,k) a_j^dag,
// so circuits compose as ordinary matrix products: applying U then V equals
// applying V*U.
struct ModeUnitary {
    Matrix matrix;

    explicit ModeUnitary(Matrix m);

    int dims() const { return static_cast<int>(matrix.rows()); }

    static ModeUnitary identity(int n);
    static double unitarity_defect(const Matrix& m);
};

enum class ElementKind { phase, beam_splitter, polarization_rotation, pbs, mirror };

// One optical element. `modes` holds flat mode ids except for pbs, which
// takes the two spatial ids of a polarized layout.
struct ElementSpec {
    ElementKind kind = ElementKind::phase;
    double theta = 0.0;
    double phi = 0.0;
    std::vector<ModeId> modes;

    static ElementSpec phase_shift(ModeId mode, double phi);
    static ElementSpec beam_splitter(ModeId a, ModeId b, double theta, double phi);
    static ElementSpec polarization_rotation(ModeId h, ModeId v, double theta, double phi);
    static ElementSpec pbs(ModeId spatial_a, ModeId spatial_b);
    static ElementSpec mirror(ModeId a, ModeId b);
};

// Matrix of one element on its own modes: 1x1 for phase, 2x2 for beam
// splitter / polarization rotation / mirror, 4x4 for pbs in flat order
// (aH, aV, bH, bV). Beam splitter and polarization rotation follow the
//   [[cos t, i e^{-i phi} sin t], [i e^{i phi} sin t, cos t]]
// convention; mirror is the theta = pi/2, phi = 0 beam splitter.
ModeUnitary element_matrix(const ElementSpec& spec);

// Embeds an element into the N x N identity. pbs spatial ids resolve to
// flat modes through `layout`.
ModeUnitary embed_element(const ElementSpec& spec, const ModeLayout& layout);

// Ordered product of embedded elements: the first list entry acts first on
// states, i.e. the returned matrix is M(last) * ... * M(first).
ModeUnitary circuit_unitary(const std::vector<ElementSpec>& circuit, const ModeLayout& layout);

// The |1,1> -> (|2,0>-|0,2>)/sqrt2 convention of the HOM analysis:
// a^dag -> (c^dag + d^dag)/sqrt2, b^dag -> (c^dag - d^dag)/sqrt2.
ModeUnitary splitter_5050();

// 45-degree polarization rotation fixing the fusion-gate tables:
// H -> (H+V)/sqrt2, V -> (H-V)/sqrt2 (real Hadamard on the two rails).
// Realized as polarization_rotation(theta=pi/4, phi=pi/2) followed by a
// pi phase on the V rail.
ModeUnitary rotation_45();
std::vector<ElementSpec> rotation_45_circuit(ModeId h, ModeId v);

// Exact application of an N-port to a Fock state by operator substitution
// and expansion. Norm-preserving for unitary input.
PureState apply_interferometer(const PureState& state, const ModeUnitary& u);

// Per-term cross-Kerr phase e^{i tau n_a n_b}. Diagonal in the occupation
// basis, so exact at any tau.
PureState apply_cross_kerr_phase(const PureState& state, ModeId a, ModeId b, double tau);

// Permanent-based reference for <output|U|input>. Brute force, fine for
// n <= 4 photons; kept independent of apply_interferometer.
cd amplitude_oracle(const Occupation& input, const Occupation& output, const ModeUnitary& u);

// Permanent by Ryser's formula (used by amplitude_oracle).
cd permanent(const Matrix& m);

// Triangular decomposition into beam-splitter elements plus trailing
// per-mode phases; the ordered matrix product of the returned list equals
// u within numerical precision.
std::vector<ElementSpec> reck_decompose(const ModeUnitary& u);

// Converts a one-photon state on two unpolarized spatial modes into a
// polarization qubit on one spatial mode, via a polarization rotation on
// the second rail and a pbs. |1,0> -> |H>, |0,1> -> |V>.
PureState dual_rail_to_polarization(const PureState& state);

// Haar-random unitary (QR of a complex Gaussian matrix with phase fix).
ModeUnitary haar_random_unitary(int n, RandomStream& rng);

}  // namespace oqsim
