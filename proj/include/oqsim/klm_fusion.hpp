#pragma once

#include <vector>

#include "oqsim/fock.hpp"
#include "oqsim/linear_optics.hpp"
#include "oqsim/qubit.hpp"

namespace oqsim {

enum class FusionGate { type_I, type_II };

struct FusionOutcome {
    FusionGate gate;
    std::vector<int> signature;  // photon counts per detected rail
    PureState conditional_state;  // detected rails removed
    double probability = 0.0;
};

// |1,1> through the (c+d)/sqrt2, (c-d)/sqrt2 splitter.
PureState hom_experiment();

// Control experiment with photons carrying orthogonal internal labels:
// the classical coincidence probability of 1/2 reappears.
double hom_distinguishable_coincidence();

// Bell pairs on two polarized spatial modes.
PureState bell_hh_vv(TruncationConfig trunc = {});  // (|H,H> + |V,V>)/sqrt2
PureState bell_hv_vh(TruncationConfig trunc = {});  // (|H,V> + |V,H>)/sqrt2

// Type-I fusion on spatial modes (a, b) of a polarized state: pbs, then the
// 45-degree rotation on the b output, then exhaustive detection of the two
// b rails. Outcomes are sorted by signature; probabilities sum to 1.
std::vector<FusionOutcome> type_I_fusion(const PureState& state, int spatial_a, int spatial_b);

// Type-II fusion: diagonal-cut pbs realized as rail rotations around a H/V
// pbs, both outputs rotated and fully detected (four rails).
std::vector<FusionOutcome> type_II_fusion(const PureState& state, int spatial_a, int spatial_b);

// Entanglement entropy (base 2) of the two-dual-rail-qubit component of a
// 4-mode two-photon state, renormalized within that subspace. Returns 0
// when the subspace has no support.
double dual_rail_entanglement(const PureState& state);

// Witness after sending |1,0,1,0> through u. Zero for every interferometer
// that is local to the two rail pairs (the measurement-free no-go); a
// nonzero value for a generic u quantifies what coincidence post-selection
// would buy.
double separability_witness(const ModeUnitary& u);

// Max deviation of the two-photon output amplitudes from the factorized
// product of the two substituted creation operators (zero for every u).
double two_photon_factorization_defect(const ModeUnitary& u);

enum class Pauli { I, X, Y, Z };

Matrix2 pauli_matrix(Pauli p);

struct CliffordConjugation {
    Pauli first;
    Pauli second;
    cd phase;  // +1 or -1 for CZ/CNOT conjugations
};

// G^dag (P1 x P2) G written back as a Pauli pair with sign; throws if the
// conjugation leaves the Pauli group (it never does for CZ/CNOT).
CliffordConjugation clifford_conjugation_check(const Matrix4& gate, Pauli p1, Pauli p2);

}  // namespace oqsim
