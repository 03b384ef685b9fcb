#pragma once

#include <array>
#include <vector>

#include "oqsim/density.hpp"
#include "oqsim/rng.hpp"

namespace oqsim {

// Matter-qubit entangling by emission, path erasure and two heralded
// detection rounds. Flat-mode convention for the joint system:
//   [q1, q2, p1A, p1B, p2A, p2B]
// where qubit occupation 1 means the emitting spin-up level, and each
// photon path carries two internal-label rails (A, B) so partially
// distinguishable wave packets can interfere partially. Logical qubit
// values identify |0> with spin up (occupation 1) and |1> with spin down.
namespace dh {
constexpr int kQubit1 = 0;
constexpr int kQubit2 = 1;
constexpr int kPath1A = 2;
constexpr int kPath1B = 3;
constexpr int kPath2A = 4;
constexpr int kPath2B = 5;
}  // namespace dh

// Overlap of the two emitters' photon wave packets, in [0, 1].
struct DistinguishabilityModel {
    double overlap = 1.0;
};

// (|dn> + |up>)(|dn> + |up>)/2 over the two qubit modes.
PureState spin_superposition();
PureState spin_basis(int up1, int up2);

// |Psi+-> = (|dn,up> +- |up,dn>)/sqrt2 over the two qubit modes.
PureState bell_psi(int sign);
double bell_fidelity(const DensityOperator& qubits, int sign);

// Optical pi-pulse on both emitters: spin-up components gain one photon in
// their own output path, emitter 2's wave packet overlapping emitter 1's
// by `d.overlap`.
DensityOperator pi_pulse_emit(const DensityOperator& qubits, const DistinguishabilityModel& d);
DensityOperator pi_pulse_emit(const PureState& qubits, const DistinguishabilityModel& d);

struct HeraldResult {
    int round = 1;
    std::array<int, 2> clicks{0, 0};  // detectors on paths 1 and 2
    DensityOperator conditional;      // qubits only, photon modes absorbed
    double probability = 0.0;
};

// All four click signatures of one interference + detection round.
// `delta` is an extra phase on input path 1 ahead of the splitter.
std::vector<HeraldResult> dh_round_outcomes(const DensityOperator& matter_photon, double eta,
                                            double delta = 0.0);

// Samples one signature from the exact Born distribution.
HeraldResult dh_round(const DensityOperator& matter_photon, double eta, RandomStream& rng,
                      double delta = 0.0);

struct ProtocolBranch {
    std::array<int, 2> sig1{0, 0};
    std::array<int, 2> sig2{0, 0};
    bool success = false;
    int sign = +1;  // +1: |Psi+>, -1: |Psi->; the product of the click sides
    DensityOperator final_qubits;  // bit-flip frame restored on success
    double probability = 0.0;
};

// Exact enumeration of the two-round protocol. Failure branches stop after
// the offending round (their conditional is the state at that point).
std::vector<ProtocolBranch> dh_protocol_enumerate(double eta, const DistinguishabilityModel& d,
                                                  double delta1 = 0.0, double delta2 = 0.0,
                                                  const PureState* input = nullptr);

struct ProtocolResult {
    bool success = false;
    int sign = +1;
    DensityOperator final_qubits;
    double probability = 0.0;
    std::array<std::array<int, 2>, 2> signatures{{{0, 0}, {0, 0}}};
};

// One sampled run of the full protocol on the standard superposition input.
ProtocolResult dh_protocol(double eta, const DistinguishabilityModel& d, RandomStream& rng,
                           double delta1 = 0.0, double delta2 = 0.0);

// Heralded success probability by enumeration (eta^2/2 at unit overlap).
double dh_success_probability(double eta, const DistinguishabilityModel& d);

// Weight of the Bell component in the round-1 single-click mixture,
// computed from the loss + bucket-detector model (comes out 2/(4 - eta)
// for the standard input at unit overlap).
double round_mixture_weight(double eta);

// Bell fidelity of the successful output with a phase e^{i delta} inserted
// ahead of the splitter. Slowly varying control: the same delta in both
// rounds; the fast variant takes independent phases. Returns the minimum
// over heralded branches.
double phase_robustness(double delta, double eta = 1.0);
double phase_robustness_fast(double delta1, double delta2, double eta = 1.0);

// Max deviation (1 - fidelity) between the heralded conditional on an
// arbitrary input and the projected state E_{+-}|psi>/norm, over all
// success branches of the ideal protocol.
double projector_defect(const PureState& two_qubit_input, double eta = 1.0);

// E_{+-} = |01><01| +- |10><10| in logical values (spin up = 0), applied
// to a two-qubit pure state in the occupation convention.
PureState apply_dh_projector(const PureState& two_qubit_input, int sign);

}  // namespace oqsim
