#pragma once

#include <Eigen/Dense>

#include "oqsim/errors.hpp"
#include "oqsim/qubit.hpp"

namespace oqsim {

// Two-mode density operator on the fixed basis
//   |00>, |01>, |10>, |11>, |20>, |02>,
// which is closed under the weak splitter steps and two-photon absorption.
namespace zeno {

using Mat6 = Eigen::Matrix<std::complex<double>, 6, 6>;

enum BasisIndex { k00 = 0, k01 = 1, k10 = 2, k11 = 3, k20 = 4, k02 = 5 };

struct ZenoConfig {
    int n = 1;  // step count; theta = pi / (2n) so n * theta = pi/2 exactly
    double theta() const;
};

// Unitary of one weak coupler step, derived from the two-mode splitter with
// the i sin(theta) cross-phase convention (the |11> row carries the sin(2t)
// weight that makes it unitary).
Mat6 step_unitary(double theta);

Mat6 bs_step(const Mat6& rho, double theta);

// Per-mode two-photon absorption: A1 = |0><0| + |1><1|, A2 = |0><2|,
// applied to both modes. Trace preserving on the truncated basis.
Mat6 absorb(const Mat6& rho);

// Optional non-ideal absorber: two-photon events absorbed with probability
// `two_photon` and an independent single-photon loss `single_loss` per
// mode. Defaults recover the ideal channel.
struct AbsorberModel {
    double two_photon = 1.0;
    double single_loss = 0.0;
};

Mat6 absorb(const Mat6& rho, const AbsorberModel& model);

// n repetitions of coupler + absorber.
Mat6 zeno_evolve(const Mat6& rho0, const ZenoConfig& config);

Mat6 pure_density(BasisIndex state);

// cos^{2n}(pi/n): the |11> population surviving the full gate.
double survival_closed_form(int n);

double survival_iterated(const ZenoConfig& config);

struct EffectiveGate {
    Matrix4 dominant;          // leading Kraus operator of the corrected channel
    double process_fidelity;   // entanglement fidelity against U_CZ
};

// Qubit-subspace channel of the full device: evolve, swap the output modes,
// apply a -pi/2 phase per photon. Reported against U_CZ.
EffectiveGate effective_gate(const ZenoConfig& config);

}  // namespace zeno

}  // namespace oqsim
