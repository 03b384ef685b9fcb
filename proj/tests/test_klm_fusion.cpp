#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include "doctest.h"

#include <cmath>
#include <complex>

#include "oqsim/klm_fusion.hpp"

using namespace oqsim;

namespace {

const FusionOutcome* find_signature(const std::vector<FusionOutcome>& outcomes,
                                    const std::vector<int>& sig) {
    for (const auto& o : outcomes)
        if (o.signature == sig) return &o;
    return nullptr;
}

double state_fidelity(const PureState& a, const PureState& b) {
    return std::norm(inner_product(a.normalized(), b.normalized()));
}

}  // namespace

TEST_CASE("HOM experiment produces (|2,0> - |0,2>)/sqrt2 with no coincidence") {
    auto out = hom_experiment();
    double s = 1.0 / std::sqrt(2.0);
    CHECK(std::abs(out.amplitude({2, 0}) - s) < 1e-12);
    CHECK(std::abs(out.amplitude({0, 2}) + s) < 1e-12);
    CHECK(std::abs(out.amplitude({1, 1})) < 1e-12);
    CHECK(out.norm2() == doctest::Approx(1.0).epsilon(1e-12));
}

TEST_CASE("distinguishable photons restore the classical coincidence rate") {
    CHECK(hom_distinguishable_coincidence() == doctest::Approx(0.5).epsilon(1e-12));
}

TEST_CASE("reversed HOM: coincidence projects onto (|2,0> - |0,2>)/sqrt2") {
    RandomStream rng(5);
    auto layout = ModeLayout::flat(2);
    auto trunc = TruncationConfig::with_photons(2);
    PureState target(layout, trunc);
    double s = 1.0 / std::sqrt(2.0);
    target.set_term({2, 0}, cd(s, 0.0));
    target.set_term({0, 2}, cd(-s, 0.0));
    for (int rep = 0; rep < 5; ++rep) {
        PureState psi(layout, trunc);
        psi.set_term({2, 0}, cd(rng.gaussian(), rng.gaussian()));
        psi.set_term({0, 2}, cd(rng.gaussian(), rng.gaussian()));
        psi.set_term({1, 1}, cd(rng.gaussian(), rng.gaussian()));
        psi = psi.normalized();
        auto out = apply_interferometer(psi, splitter_5050());
        cd coincidence = out.amplitude({1, 1});
        cd projected = inner_product(target, psi);
        CHECK(std::abs(coincidence - projected) < 1e-12);
    }
}

TEST_CASE("type-I fusion reproduces every derived table row") {
    RandomStream rng(7);
    for (int rep = 0; rep < 4; ++rep) {
        cd f1(rng.gaussian(), rng.gaussian()), f2(rng.gaussian(), rng.gaussian());
        cd f3(rng.gaussian(), rng.gaussian()), f4(rng.gaussian(), rng.gaussian());
        double na = std::sqrt(std::norm(f1) + std::norm(f2));
        double nb = std::sqrt(std::norm(f3) + std::norm(f4));
        f1 /= na; f2 /= na; f3 /= nb; f4 /= nb;

        auto layout = ModeLayout::polar(2);
        auto trunc = TruncationConfig::with_photons(2);
        PureState in(layout, trunc);
        in.set_term({1, 0, 1, 0}, f1 * f3);
        in.set_term({1, 0, 0, 1}, f1 * f4);
        in.set_term({0, 1, 1, 0}, f2 * f3);
        in.set_term({0, 1, 0, 1}, f2 * f4);

        auto outcomes = type_I_fusion(in, 0, 1);
        double total = 0.0;
        for (const auto& o : outcomes) total += o.probability;
        CHECK(total == doctest::Approx(1.0).epsilon(1e-10));

        ModeLayout remaining = ModeLayout::flat(2);  // surviving rails (cH, cV)
        auto expect = [&](const std::vector<int>& sig, cd amp_h, cd amp_v, cd amp_hv,
                          cd amp_vac, double prob) {
            const FusionOutcome* o = find_signature(outcomes, sig);
            REQUIRE(o != nullptr);
            CHECK(o->probability == doctest::Approx(prob).epsilon(1e-10));
            PureState want(remaining, trunc);
            if (std::abs(amp_h) > 0) want.set_term({1, 0}, amp_h);
            if (std::abs(amp_v) > 0) want.set_term({0, 1}, amp_v);
            if (std::abs(amp_hv) > 0) want.set_term({1, 1}, amp_hv);
            if (std::abs(amp_vac) > 0) want.set_term({0, 0}, amp_vac);
            CHECK(state_fidelity(o->conditional_state, want) == doctest::Approx(1.0).epsilon(1e-10));
        };

        double s2 = std::sqrt(2.0);
        // (1,0): (f1 f3 cH + f2 f4 cV)/sqrt2
        expect({1, 0}, f1 * f3 / s2, f2 * f4 / s2, 0, 0,
               (std::norm(f1 * f3) + std::norm(f2 * f4)) / 2.0);
        // (0,1): (f1 f3 cH - f2 f4 cV)/sqrt2
        expect({0, 1}, f1 * f3 / s2, -f2 * f4 / s2, 0, 0,
               (std::norm(f1 * f3) + std::norm(f2 * f4)) / 2.0);
        // (0,0): derivation gives f1 f4 cH cV (the printed table's f1 f2 is a typo)
        expect({0, 0}, 0, 0, f1 * f4, 0, std::norm(f1 * f4));
        // (2,0) and (0,2): f2 f3 branch, opposite signs between the rows
        expect({2, 0}, 0, 0, 0, f2 * f3 / s2, std::norm(f2 * f3) / 2.0);
        expect({0, 2}, 0, 0, 0, f2 * f3 / s2, std::norm(f2 * f3) / 2.0);
        CHECK(find_signature(outcomes, {1, 1}) == nullptr);
    }
}

TEST_CASE("type-I derived signs: dH^2 and dV^2 detections differ by a minus") {
    // The staged operator carries (f2 f3 / 2)(dH^dag^2 - dV^dag^2); the
    // printed table writes f2 f3 / 2 for both rows.
    auto layout = ModeLayout::polar(2);
    auto trunc = TruncationConfig::with_photons(2);
    PureState in(layout, trunc);
    in.set_term({0, 1, 1, 0}, cd(1.0, 0.0));  // f2 = f3 = 1 branch only
    std::vector<ElementSpec> circuit = {ElementSpec::pbs(0, 1)};
    auto rot = rotation_45_circuit(layout.h(1), layout.v(1));
    circuit.insert(circuit.end(), rot.begin(), rot.end());
    auto staged = apply_interferometer(in, circuit_unitary(circuit, layout));
    cd a20 = staged.amplitude({0, 0, 2, 0});
    cd a02 = staged.amplitude({0, 0, 0, 2});
    CHECK(std::abs(a20 - 1.0 / std::sqrt(2.0)) < 1e-12);
    CHECK(std::abs(a02 + 1.0 / std::sqrt(2.0)) < 1e-12);
}

TEST_CASE("type-I fusion of two Bell pairs heralds a GHZ state") {
    // Bell pair 1 on spatial (0,1), Bell pair 2 on spatial (2,3); fuse (1,2).
    auto layout = ModeLayout::polar(4);
    auto trunc = TruncationConfig::with_photons(4);
    PureState in(layout, trunc);
    double h = 0.5;
    // (|HH>+|VV>)(|HH>+|VV>)/2 over ((m1,a),(b,m2))
    in.set_term({1, 0, 1, 0, 1, 0, 1, 0}, cd(h, 0));
    in.set_term({1, 0, 1, 0, 0, 1, 0, 1}, cd(h, 0));
    in.set_term({0, 1, 0, 1, 1, 0, 1, 0}, cd(h, 0));
    in.set_term({0, 1, 0, 1, 0, 1, 0, 1}, cd(h, 0));

    auto outcomes = type_I_fusion(in, 1, 2);

    // After detecting spatial mode 2's rails, flats are (m1H,m1V,cH,cV,m2H,m2V).
    ModeLayout remaining = ModeLayout::flat(6);
    PureState ghz(remaining, trunc);
    double s = 1.0 / std::sqrt(2.0);
    ghz.set_term({1, 0, 1, 0, 1, 0}, cd(s, 0));
    ghz.set_term({0, 1, 0, 1, 0, 1}, cd(s, 0));
    PureState ghz_minus(remaining, trunc);
    ghz_minus.set_term({1, 0, 1, 0, 1, 0}, cd(s, 0));
    ghz_minus.set_term({0, 1, 0, 1, 0, 1}, cd(-s, 0));

    const FusionOutcome* o10 = find_signature(outcomes, {1, 0});
    REQUIRE(o10 != nullptr);
    CHECK(state_fidelity(o10->conditional_state, ghz) == doctest::Approx(1.0).epsilon(1e-10));
    CHECK(o10->probability == doctest::Approx(0.25).epsilon(1e-10));

    const FusionOutcome* o01 = find_signature(outcomes, {0, 1});
    REQUIRE(o01 != nullptr);
    CHECK(state_fidelity(o01->conditional_state, ghz_minus) ==
          doctest::Approx(1.0).epsilon(1e-10));

    double success = o10->probability + o01->probability;
    CHECK(success == doctest::Approx(0.5).epsilon(1e-12));
}

TEST_CASE("both Bell pair builders are normalized and even/odd as labeled") {
    auto trunc = TruncationConfig::with_photons(2);
    auto phi = bell_hh_vv(trunc);
    auto psi = bell_hv_vh(trunc);
    CHECK(phi.norm2() == doctest::Approx(1.0).epsilon(1e-14));
    CHECK(psi.norm2() == doctest::Approx(1.0).epsilon(1e-14));
    CHECK(std::abs(inner_product(phi, psi)) < 1e-14);
    // An odd-parity input fully survives the type-II odd signatures.
    auto outcomes = type_II_fusion(psi, 0, 1);
    double odd = 0.0;
    for (const auto& o : outcomes)
        if (o.signature == std::vector<int>{1, 0, 0, 1} ||
            o.signature == std::vector<int>{0, 1, 1, 0})
            odd += o.probability;
    CHECK(odd == doctest::Approx(1.0).epsilon(1e-10));
}

TEST_CASE("type-II fusion acts as a parity projection") {
    RandomStream rng(11);
    for (int rep = 0; rep < 4; ++rep) {
        cd chh(rng.gaussian(), rng.gaussian()), chv(rng.gaussian(), rng.gaussian());
        cd cvh(rng.gaussian(), rng.gaussian()), cvv(rng.gaussian(), rng.gaussian());
        double norm = std::sqrt(std::norm(chh) + std::norm(chv) + std::norm(cvh) + std::norm(cvv));
        chh /= norm; chv /= norm; cvh /= norm; cvv /= norm;

        auto layout = ModeLayout::polar(2);
        auto trunc = TruncationConfig::with_photons(2);
        PureState in(layout, trunc);
        in.set_term({1, 0, 1, 0}, chh);
        in.set_term({1, 0, 0, 1}, chv);
        in.set_term({0, 1, 1, 0}, cvh);
        in.set_term({0, 1, 0, 1}, cvv);

        auto outcomes = type_II_fusion(in, 0, 1);
        double total = 0.0;
        for (const auto& o : outcomes) total += o.probability;
        CHECK(total == doctest::Approx(1.0).epsilon(1e-10));

        // Even-parity signatures (H,H)/(V,V): weight |chh + cvv|^2 / 4 each.
        const FusionOutcome* ohh = find_signature(outcomes, {1, 0, 1, 0});
        const FusionOutcome* ovv = find_signature(outcomes, {0, 1, 0, 1});
        double even = std::norm(chh + cvv) / 4.0;
        if (even > 1e-13) {
            REQUIRE(ohh != nullptr);
            CHECK(ohh->probability == doctest::Approx(even).epsilon(1e-9));
            REQUIRE(ovv != nullptr);
            CHECK(ovv->probability == doctest::Approx(even).epsilon(1e-9));
        }
        // Odd-parity signatures (H,V)/(V,H): weight |chv + cvh|^2 / 4 each.
        const FusionOutcome* ohv = find_signature(outcomes, {1, 0, 0, 1});
        double odd = std::norm(chv + cvh) / 4.0;
        if (odd > 1e-13) {
            REQUIRE(ohv != nullptr);
            CHECK(ohv->probability == doctest::Approx(odd).epsilon(1e-9));
        }
    }
}

TEST_CASE("separability witness: identity and a Bell reference") {
    CHECK(separability_witness(ModeUnitary::identity(4)) == doctest::Approx(0.0));

    auto layout = ModeLayout::flat(4);
    auto trunc = TruncationConfig::with_photons(2);
    PureState bell(layout, trunc);
    double s = 1.0 / std::sqrt(2.0);
    bell.set_term({1, 0, 1, 0}, cd(s, 0));
    bell.set_term({0, 1, 0, 1}, cd(s, 0));
    CHECK(dual_rail_entanglement(bell) == doctest::Approx(1.0).epsilon(1e-12));
}

TEST_CASE("no-go: two-photon output always factorizes over creation operators") {
    RandomStream rng(13);
    for (int rep = 0; rep < 100; ++rep) {
        auto u = haar_random_unitary(4, rng);
        CHECK(two_photon_factorization_defect(u) < 1e-12);
    }
}

TEST_CASE("no-go: measurement-free (pair-local) interferometers never entangle") {
    RandomStream rng(17);
    for (int rep = 0; rep < 100; ++rep) {
        Matrix u = Matrix::Zero(4, 4);
        u.block(0, 0, 2, 2) = haar_random_unitary(2, rng).matrix;
        u.block(2, 2, 2, 2) = haar_random_unitary(2, rng).matrix;
        CHECK(separability_witness(ModeUnitary(u)) < 1e-10);
    }
}

TEST_CASE("post-selection loophole: a generic interferometer scores nonzero") {
    // This is the resource KLM exploits: the coincidence-renormalized
    // subspace may be entangled even though the full state factorizes.
    RandomStream rng(19);
    double best = 0.0;
    for (int rep = 0; rep < 10; ++rep)
        best = std::max(best, separability_witness(haar_random_unitary(4, rng)));
    CHECK(best > 0.1);
}

TEST_CASE("Pauli algebra: squares and anticommutation are exact") {
    Matrix2 x = pauli_x(), y = pauli_y(), z = pauli_z();
    CHECK((x * x - Matrix2::Identity()).cwiseAbs().maxCoeff() == 0.0);
    CHECK((y * y - Matrix2::Identity()).cwiseAbs().maxCoeff() == 0.0);
    CHECK((z * z - Matrix2::Identity()).cwiseAbs().maxCoeff() == 0.0);
    CHECK((x * z + z * x).cwiseAbs().maxCoeff() == 0.0);
}

TEST_CASE("Clifford conjugation table entries") {
    auto r1 = clifford_conjugation_check(cz_gate(), Pauli::X, Pauli::I);
    CHECK(r1.first == Pauli::X);
    CHECK(r1.second == Pauli::Z);
    CHECK(std::abs(r1.phase - cd(1, 0)) < 1e-12);

    auto r2 = clifford_conjugation_check(cz_gate(), Pauli::Z, Pauli::I);
    CHECK(r2.first == Pauli::Z);
    CHECK(r2.second == Pauli::I);

    auto r3 = clifford_conjugation_check(cnot_gate(), Pauli::I, Pauli::X);
    CHECK(r3.first == Pauli::I);
    CHECK(r3.second == Pauli::X);
}

TEST_CASE("CZ and CNOT conjugation closes over all 16 Pauli pairs") {
    const Pauli all[4] = {Pauli::I, Pauli::X, Pauli::Y, Pauli::Z};
    for (auto gate : {cz_gate(), cnot_gate()}) {
        for (Pauli a : all) {
            for (Pauli b : all) {
                auto r = clifford_conjugation_check(gate, a, b);
                CHECK(std::abs(std::abs(r.phase) - 1.0) < 1e-12);
                CHECK(std::abs(r.phase.imag()) < 1e-12);
            }
        }
    }
}
