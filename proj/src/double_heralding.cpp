#include "oqsim/double_heralding.hpp"

#include <cmath>

namespace oqsim {

namespace {

const TruncationConfig kTrunc{2, 4, 1e-14};

ModeLayout qubit_layout() { return ModeLayout::flat(2); }
ModeLayout joint_layout() { return ModeLayout::flat(6); }

// Identity on the qubit modes, 50:50 on each label rail pair, with an
// optional phase on path 1.
ModeUnitary round_unitary(double delta) {
    Matrix u = Matrix::Identity(6, 6);
    Matrix s = splitter_5050().matrix;
    const int pairs[2][2] = {{dh::kPath1A, dh::kPath2A}, {dh::kPath1B, dh::kPath2B}};
    for (const auto& p : pairs) {
        u(p[0], p[0]) = s(0, 0);
        u(p[0], p[1]) = s(0, 1);
        u(p[1], p[0]) = s(1, 0);
        u(p[1], p[1]) = s(1, 1);
    }
    if (delta != 0.0) {
        Matrix ph = Matrix::Identity(6, 6);
        ph(dh::kPath1A, dh::kPath1A) = std::exp(cd(0.0, delta));
        ph(dh::kPath1B, dh::kPath1B) = std::exp(cd(0.0, delta));
        u = u * ph;
    }
    return ModeUnitary(u);
}

}  // namespace

PureState spin_superposition() {
    PureState s(qubit_layout(), kTrunc);
    for (int a : {0, 1})
        for (int b : {0, 1}) s.set_term({a, b}, cd(0.5, 0.0));
    return s;
}

PureState spin_basis(int up1, int up2) {
    return PureState::basis(qubit_layout(), {up1, up2}, kTrunc);
}

PureState bell_psi(int sign) {
    PureState s(qubit_layout(), kTrunc);
    double a = 1.0 / std::sqrt(2.0);
    s.set_term({0, 1}, cd(a, 0.0));
    s.set_term({1, 0}, cd(sign > 0 ? a : -a, 0.0));
    return s;
}

double bell_fidelity(const DensityOperator& qubits, int sign) {
    return qubits.expectation(bell_psi(sign));
}

DensityOperator pi_pulse_emit(const DensityOperator& qubits, const DistinguishabilityModel& d) {
    if (d.overlap < 0.0 || d.overlap > 1.0)
        throw InvalidParams("photon overlap must lie in [0, 1]");
    double v = d.overlap;
    double w = std::sqrt(std::max(0.0, 1.0 - v * v));
    return qubits.apply_linear_map([&](const PureState& e) {
        const Occupation& occ = e.terms().begin()->first;
        cd amp = e.terms().begin()->second;
        PureState lifted(joint_layout(), kTrunc);
        lifted.set_term({occ[0], occ[1], 0, 0, 0, 0}, amp);
        if (occ[0] == 1) lifted = create(lifted, dh::kPath1A);
        if (occ[1] == 1) {
            PureState a = cd(v, 0.0) * create(lifted, dh::kPath2A);
            if (w > 0.0) a = a + cd(w, 0.0) * create(lifted, dh::kPath2B);
            lifted = a;
        }
        return lifted;
    });
}

DensityOperator pi_pulse_emit(const PureState& qubits, const DistinguishabilityModel& d) {
    return pi_pulse_emit(DensityOperator::from_pure(qubits), d);
}

std::vector<HeraldResult> dh_round_outcomes(const DensityOperator& matter_photon, double eta,
                                            double delta) {
    DensityOperator mixed = matter_photon.apply_mode_unitary(round_unitary(delta));
    std::vector<HeraldResult> out;
    auto d1 = bucket_detect_set(mixed, {dh::kPath1A, dh::kPath1B}, eta);
    for (const auto& b1 : d1) {
        if (b1.probability < 1e-15) {
            // Keep the zero branch only when it is structurally possible.
            continue;
        }
        auto d2 = bucket_detect_set(b1.conditional, {dh::kPath2A, dh::kPath2B}, eta);
        for (const auto& b2 : d2) {
            if (b2.probability < 1e-15) continue;
            DensityOperator qubits = b2.conditional.drop_vacuum_modes(
                {dh::kPath1A, dh::kPath1B, dh::kPath2A, dh::kPath2B});
            out.push_back(HeraldResult{1,
                                       {b1.click ? 1 : 0, b2.click ? 1 : 0},
                                       std::move(qubits),
                                       b1.probability * b2.probability});
        }
    }
    return out;
}

HeraldResult dh_round(const DensityOperator& matter_photon, double eta, RandomStream& rng,
                      double delta) {
    auto outcomes = dh_round_outcomes(matter_photon, eta, delta);
    std::vector<double> weights;
    for (const auto& o : outcomes) weights.push_back(o.probability);
    return outcomes[rng.pick(weights)];
}

namespace {

bool single_click(const std::array<int, 2>& sig) { return sig[0] + sig[1] == 1; }

DensityOperator flip_both(const DensityOperator& qubits) {
    return qubits.apply_linear_map([](const PureState& e) {
        const Occupation& occ = e.terms().begin()->first;
        cd amp = e.terms().begin()->second;
        PureState flipped(e.layout(), e.truncation());
        flipped.set_term({1 - occ[0], 1 - occ[1]}, amp);
        return flipped;
    });
}

}  // namespace

std::vector<ProtocolBranch> dh_protocol_enumerate(double eta, const DistinguishabilityModel& d,
                                                  double delta1, double delta2,
                                                  const PureState* input) {
    PureState psi0 = input ? *input : spin_superposition();
    DensityOperator emitted = pi_pulse_emit(psi0.normalized(), d);

    std::vector<ProtocolBranch> branches;
    for (const auto& r1 : dh_round_outcomes(emitted, eta, delta1)) {
        if (!single_click(r1.clicks)) {
            branches.push_back(ProtocolBranch{r1.clicks, {0, 0}, false, +1, r1.conditional,
                                              r1.probability});
            continue;
        }
        DensityOperator flipped = flip_both(r1.conditional);
        DensityOperator emitted2 = pi_pulse_emit(flipped, d);
        for (const auto& r2 : dh_round_outcomes(emitted2, eta, delta2)) {
            double p = r1.probability * r2.probability;
            if (!single_click(r2.clicks)) {
                branches.push_back(
                    ProtocolBranch{r1.clicks, r2.clicks, false, +1, r2.conditional, p});
                continue;
            }
            int sign = (r1.clicks == r2.clicks) ? +1 : -1;
            branches.push_back(
                ProtocolBranch{r1.clicks, r2.clicks, true, sign, flip_both(r2.conditional), p});
        }
    }
    return branches;
}

ProtocolResult dh_protocol(double eta, const DistinguishabilityModel& d, RandomStream& rng,
                           double delta1, double delta2) {
    DensityOperator emitted = pi_pulse_emit(spin_superposition(), d);
    HeraldResult r1 = dh_round(emitted, eta, rng, delta1);
    ProtocolResult result;
    result.signatures[0] = r1.clicks;
    if (!single_click(r1.clicks)) {
        result.final_qubits = r1.conditional;
        result.probability = r1.probability;
        return result;
    }
    DensityOperator emitted2 = pi_pulse_emit(flip_both(r1.conditional), d);
    HeraldResult r2 = dh_round(emitted2, eta, rng, delta2);
    result.signatures[1] = r2.clicks;
    result.probability = r1.probability * r2.probability;
    if (!single_click(r2.clicks)) {
        result.final_qubits = r2.conditional;
        return result;
    }
    result.success = true;
    result.sign = (r1.clicks == r2.clicks) ? +1 : -1;
    result.final_qubits = flip_both(r2.conditional);
    return result;
}

double dh_success_probability(double eta, const DistinguishabilityModel& d) {
    double p = 0.0;
    for (const auto& b : dh_protocol_enumerate(eta, d))
        if (b.success) p += b.probability;
    return p;
}

double round_mixture_weight(double eta) {
    DensityOperator emitted = pi_pulse_emit(spin_superposition(), DistinguishabilityModel{1.0});
    for (const auto& r : dh_round_outcomes(emitted, eta)) {
        if (!single_click(r.clicks)) continue;
        int sign = r.clicks[0] == 1 ? +1 : -1;
        return bell_fidelity(r.conditional, sign);
    }
    throw SimError("no single-click branch at this efficiency");
}

namespace {

double min_success_fidelity(double eta, double delta1, double delta2) {
    double worst = 1.0;
    bool any = false;
    for (const auto& b : dh_protocol_enumerate(eta, DistinguishabilityModel{1.0}, delta1, delta2)) {
        if (!b.success) continue;
        any = true;
        worst = std::min(worst, bell_fidelity(b.final_qubits, b.sign));
    }
    if (!any) throw SimError("protocol cannot succeed at this efficiency");
    return worst;
}

}  // namespace

double phase_robustness(double delta, double eta) { return min_success_fidelity(eta, delta, delta); }

double phase_robustness_fast(double delta1, double delta2, double eta) {
    return min_success_fidelity(eta, delta1, delta2);
}

PureState apply_dh_projector(const PureState& two_qubit_input, int sign) {
    PureState out(two_qubit_input.layout(), two_qubit_input.truncation());
    for (const auto& [occ, amp] : two_qubit_input.terms()) {
        if (occ[0] + occ[1] != 1) continue;
        // Logical |10> is occupation (0,1); E_- flips its sign.
        cd factor = (sign < 0 && occ[0] == 0) ? cd(-1.0, 0.0) : cd(1.0, 0.0);
        out.set_term(occ, factor * amp);
    }
    if (out.is_zero()) throw ZeroProbabilityBranch("projector annihilates the input");
    return out;
}

double projector_defect(const PureState& two_qubit_input, double eta) {
    double worst = 0.0;
    for (const auto& b :
         dh_protocol_enumerate(eta, DistinguishabilityModel{1.0}, 0.0, 0.0, &two_qubit_input)) {
        if (!b.success) continue;
        PureState projected = apply_dh_projector(two_qubit_input, b.sign).normalized();
        worst = std::max(worst, 1.0 - b.final_qubits.expectation(projected));
    }
    return worst;
}

}  // namespace oqsim
