#include "oqsim/klm_fusion.hpp"

#include <unsupported/Eigen/KroneckerProduct>

#include <algorithm>
#include <cmath>

namespace oqsim {

PureState hom_experiment() {
    auto layout = ModeLayout::flat(2);
    auto in = PureState::basis(layout, {1, 1}, TruncationConfig::with_photons(2));
    return apply_interferometer(in, splitter_5050());
}

double hom_distinguishable_coincidence() {
    // Modes (aA, aB, bA, bB): label A for the first photon, B for the second.
    auto layout = ModeLayout::flat(4);
    auto in = PureState::basis(layout, {1, 0, 0, 1}, TruncationConfig::with_photons(2));
    Matrix u = Matrix::Identity(4, 4);
    Matrix s = splitter_5050().matrix;
    u(0, 0) = s(0, 0);
    u(0, 2) = s(0, 1);
    u(2, 0) = s(1, 0);
    u(2, 2) = s(1, 1);
    u(1, 1) = s(0, 0);
    u(1, 3) = s(0, 1);
    u(3, 1) = s(1, 0);
    u(3, 3) = s(1, 1);
    auto out = apply_interferometer(in, ModeUnitary(u));
    double coincidence = 0.0;
    for (const auto& [occ, amp] : out.terms())
        if (occ[0] + occ[1] == 1 && occ[2] + occ[3] == 1) coincidence += std::norm(amp);
    return coincidence;
}

PureState bell_hh_vv(TruncationConfig trunc) {
    auto layout = ModeLayout::polar(2);
    PureState s(layout, trunc);
    double a = 1.0 / std::sqrt(2.0);
    s.set_term({1, 0, 1, 0}, cd(a, 0.0));
    s.set_term({0, 1, 0, 1}, cd(a, 0.0));
    return s;
}

PureState bell_hv_vh(TruncationConfig trunc) {
    auto layout = ModeLayout::polar(2);
    PureState s(layout, trunc);
    double a = 1.0 / std::sqrt(2.0);
    s.set_term({1, 0, 0, 1}, cd(a, 0.0));
    s.set_term({0, 1, 1, 0}, cd(a, 0.0));
    return s;
}

namespace {

std::vector<FusionOutcome> detect_rails(const PureState& state, FusionGate gate,
                                        const std::vector<ModeId>& rails) {
    auto dist = photon_number_distribution(state, rails);
    // Descending flat order keeps indices stable during removal.
    std::vector<ModeId> order = rails;
    std::sort(order.begin(), order.end(), std::greater<ModeId>());

    std::vector<FusionOutcome> out;
    for (const auto& [counts, prob] : dist) {
        if (prob < 1e-14) continue;
        PureState cond = state;
        for (ModeId m : order) {
            int idx = 0;
            while (rails[idx] != m) ++idx;
            cond = post_select(cond, m, counts[idx]).state;
        }
        out.push_back(FusionOutcome{gate, counts, cond, prob});
    }
    return out;
}

}  // namespace

std::vector<FusionOutcome> type_I_fusion(const PureState& state, int spatial_a, int spatial_b) {
    const ModeLayout& layout = state.layout();
    if (!layout.polarized) throw InvalidEncoding("type_I_fusion needs a polarized layout");

    std::vector<ElementSpec> circuit = {ElementSpec::pbs(spatial_a, spatial_b)};
    auto rot = rotation_45_circuit(layout.h(spatial_b), layout.v(spatial_b));
    circuit.insert(circuit.end(), rot.begin(), rot.end());
    PureState staged = apply_interferometer(state, circuit_unitary(circuit, layout));

    return detect_rails(staged, FusionGate::type_I,
                        {layout.h(spatial_b), layout.v(spatial_b)});
}

std::vector<FusionOutcome> type_II_fusion(const PureState& state, int spatial_a, int spatial_b) {
    const ModeLayout& layout = state.layout();
    if (!layout.polarized) throw InvalidEncoding("type_II_fusion needs a polarized layout");

    std::vector<ElementSpec> circuit;
    auto push_rot = [&](int spatial) {
        auto rot = rotation_45_circuit(layout.h(spatial), layout.v(spatial));
        circuit.insert(circuit.end(), rot.begin(), rot.end());
    };
    // Diagonal-cut pbs: rotate both inputs into the +/- frame, split on H/V,
    // rotate back; then both outputs are detected in the H/V basis.
    push_rot(spatial_a);
    push_rot(spatial_b);
    circuit.push_back(ElementSpec::pbs(spatial_a, spatial_b));
    push_rot(spatial_a);
    push_rot(spatial_b);
    PureState staged = apply_interferometer(state, circuit_unitary(circuit, layout));

    return detect_rails(staged, FusionGate::type_II,
                        {layout.h(spatial_a), layout.v(spatial_a), layout.h(spatial_b),
                         layout.v(spatial_b)});
}

double dual_rail_entanglement(const PureState& state) {
    if (state.mode_count() != 4) throw InvalidEncoding("dual_rail_entanglement needs 4 modes");
    Eigen::Matrix2cd c = Eigen::Matrix2cd::Zero();
    const Occupation combos[2][2] = {{{1, 0, 1, 0}, {1, 0, 0, 1}}, {{0, 1, 1, 0}, {0, 1, 0, 1}}};
    for (int x = 0; x < 2; ++x)
        for (int y = 0; y < 2; ++y) c(x, y) = state.amplitude(combos[x][y]);
    double p = c.squaredNorm();
    if (p < 1e-14) return 0.0;
    c /= std::sqrt(p);
    Eigen::JacobiSVD<Eigen::Matrix2cd> svd(c);
    double entropy = 0.0;
    for (int k = 0; k < 2; ++k) {
        double lam = svd.singularValues()(k);
        lam *= lam;
        if (lam > 1e-15) entropy -= lam * std::log2(lam);
    }
    return entropy;
}

double separability_witness(const ModeUnitary& u) {
    if (u.dims() != 4) throw InvalidEncoding("separability_witness expects a 4-mode unitary");
    auto in = PureState::basis(ModeLayout::flat(4), {1, 0, 1, 0},
                               TruncationConfig::with_photons(2));
    return dual_rail_entanglement(apply_interferometer(in, u));
}

double two_photon_factorization_defect(const ModeUnitary& u) {
    int n = u.dims();
    auto in = PureState::basis(ModeLayout::flat(n), [&] {
        Occupation occ(n, 0);
        occ[0] = 1;
        occ[2] = 1;
        return occ;
    }(), TruncationConfig::with_photons(2));
    auto out = apply_interferometer(in, u);

    // Product formula: sum_{jk} U(j,0) U(k,2) a_j^dag a_k^dag |vac>.
    double defect = 0.0;
    for (const auto& [occ, amp] : out.terms()) {
        std::vector<int> photons;
        for (int m = 0; m < n; ++m)
            for (int k = 0; k < occ[m]; ++k) photons.push_back(m);
        cd predicted;
        if (photons[0] == photons[1]) {
            int j = photons[0];
            predicted = u.matrix(j, 0) * u.matrix(j, 2) * std::sqrt(2.0);
        } else {
            int j = photons[0], k = photons[1];
            predicted = u.matrix(j, 0) * u.matrix(k, 2) + u.matrix(k, 0) * u.matrix(j, 2);
        }
        defect = std::max(defect, std::abs(amp - predicted));
    }
    return defect;
}

Matrix2 pauli_matrix(Pauli p) {
    switch (p) {
        case Pauli::I: return pauli_i();
        case Pauli::X: return pauli_x();
        case Pauli::Y: return pauli_y();
        case Pauli::Z: return pauli_z();
    }
    return pauli_i();
}

CliffordConjugation clifford_conjugation_check(const Matrix4& gate, Pauli p1, Pauli p2) {
    Matrix4 m = gate.adjoint() * Eigen::kroneckerProduct(pauli_matrix(p1), pauli_matrix(p2)) *
                gate;
    const Pauli all[4] = {Pauli::I, Pauli::X, Pauli::Y, Pauli::Z};
    for (Pauli a : all) {
        for (Pauli b : all) {
            Matrix4 k = Eigen::kroneckerProduct(pauli_matrix(a), pauli_matrix(b));
            cd ratio = (k.adjoint() * m).trace() / 4.0;
            if (std::abs(std::abs(ratio) - 1.0) < 1e-12 &&
                (m - ratio * k).cwiseAbs().maxCoeff() < 1e-12)
                return CliffordConjugation{a, b, ratio};
        }
    }
    throw SimError("conjugation left the Pauli group");
}

}  // namespace oqsim
