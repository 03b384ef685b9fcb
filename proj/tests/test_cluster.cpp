#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include "doctest.h"

#include <unsupported/Eigen/KroneckerProduct>

#include <cmath>
#include <complex>
#include <set>

#include "oqsim/cluster.hpp"
#include "oqsim/klm_fusion.hpp"

using namespace oqsim;

namespace {

Vector2 random_qubit(RandomStream& rng) {
    Vector2 v;
    v << cd(rng.gaussian(), rng.gaussian()), cd(rng.gaussian(), rng.gaussian());
    v.normalize();
    return v;
}

Matrix2 euler_rotation(double alpha, double beta, double gamma) {
    return rot_z(gamma) * rot_x(beta) * rot_z(alpha);
}

Eigen::Matrix2cd reduced_density(const QubitRegister& reg, int qubit) {
    Eigen::Matrix2cd rho = Eigen::Matrix2cd::Zero();
    for (std::size_t i = 0; i < reg.dim(); ++i) {
        for (std::size_t j = 0; j < reg.dim(); ++j) {
            std::size_t stride = std::size_t{1} << (reg.qubit_count() - 1 - qubit);
            if ((i & ~stride) != (j & ~stride)) continue;
            int bi = reg.bit(i, qubit), bj = reg.bit(j, qubit);
            rho(bi, bj) += reg.amplitudes()(i) * std::conj(reg.amplitudes()(j));
        }
    }
    return rho;
}

}  // namespace

TEST_CASE("single-vertex cluster is |+>") {
    ClusterGraph g;
    g.vertices = {0};
    auto reg = build_cluster(g);
    CHECK(std::abs(reg.amplitudes()(0) - 1.0 / std::sqrt(2.0)) < 1e-14);
    CHECK(std::abs(reg.amplitudes()(1) - 1.0 / std::sqrt(2.0)) < 1e-14);
}

TEST_CASE("two-vertex cluster matches CZ|++>") {
    auto reg = build_cluster(ClusterGraph::path(2));
    Eigen::Vector4cd want;
    want << 0.5, 0.5, 0.5, -0.5;
    CHECK((reg.amplitudes() - want).cwiseAbs().maxCoeff() < 1e-14);
}

TEST_CASE("edge order does not matter") {
    ClusterGraph a = ClusterGraph::path(4);
    ClusterGraph b = a;
    std::swap(b.edges[0], b.edges[2]);
    CHECK(fidelity(build_cluster(a), build_cluster(b)) == doctest::Approx(1.0).epsilon(1e-14));
}

TEST_CASE("CZ|+,psi> = (|0>|psi> + |1>Z|psi>)/sqrt2") {
    RandomStream rng(3);
    for (int rep = 0; rep < 5; ++rep) {
        Vector2 psi = random_qubit(rng);
        QubitRegister reg = QubitRegister::tensor(
            QubitRegister::single((Vector2() << 1 / std::sqrt(2.0), 1 / std::sqrt(2.0)).finished()),
            QubitRegister::single(psi));
        reg.apply_cz(0, 1);
        Vector2 zpsi = pauli_z() * psi;
        Eigen::Vector4cd want;
        want << psi(0) / std::sqrt(2.0), psi(1) / std::sqrt(2.0), zpsi(0) / std::sqrt(2.0),
            zpsi(1) / std::sqrt(2.0);
        CHECK((reg.amplitudes() - want).cwiseAbs().maxCoeff() < 1e-12);
    }
}

TEST_CASE("Z(beta) X = X Z(-beta)") {
    RandomStream rng(5);
    for (int rep = 0; rep < 10; ++rep) {
        double beta = rng.uniform(-6.0, 6.0);
        Matrix2 lhs = rot_z(beta) * pauli_x();
        Matrix2 rhs = pauli_x() * rot_z(-beta);
        CHECK((lhs - rhs).cwiseAbs().maxCoeff() < 1e-12);
    }
}

TEST_CASE("equatorial measurement teleports HZ(alpha) with X^m byproduct") {
    RandomStream rng(7);
    int seen[2] = {0, 0};
    for (int rep = 0; rep < 60; ++rep) {
        Vector2 psi = random_qubit(rng);
        double alpha = rng.uniform(-3.0, 3.0);
        QubitRegister reg = QubitRegister::tensor(
            QubitRegister::single(psi), QubitRegister::all_plus(1));
        reg.apply_cz(0, 1);
        MeasurementRecord rec = measure_equatorial(reg, 0, alpha, rng);
        CHECK(rec.branch_probability == doctest::Approx(0.5).epsilon(1e-12));
        ++seen[rec.outcome];

        Vector2 want = hadamard() * rot_z(alpha) * psi;
        if (rec.outcome == 1) want = pauli_x() * want;
        QubitRegister target = QubitRegister::single(want.normalized());
        CHECK(fidelity(reg, target) == doctest::Approx(1.0).epsilon(1e-12));
    }
    CHECK(seen[0] > 0);
    CHECK(seen[1] > 0);
}

TEST_CASE("one-way rotation with zero angles and zero outcomes gives H|psi>") {
    RandomStream rng(11);
    for (int attempt = 0; attempt < 300; ++attempt) {
        Vector2 psi = random_qubit(rng);
        auto r = one_way_rotation(psi, 0.0, 0.0, 0.0, rng);
        if (r.records[0].outcome || r.records[1].outcome || r.records[2].outcome) continue;
        QubitRegister want = QubitRegister::single((hadamard() * psi).normalized());
        CHECK(fidelity(r.output, want) == doctest::Approx(1.0).epsilon(1e-10));
        // Frame correction folds the wire Hadamard away; R(0,0,0) = I.
        QubitRegister corrected = r.output;
        corrected.apply_single(0, one_way_correction(r.records));
        CHECK(fidelity(corrected, QubitRegister::single(psi)) ==
              doctest::Approx(1.0).epsilon(1e-10));
        break;
    }
}

TEST_CASE("one-way rotation reproduces Z(g)X(b)Z(a) over all branches") {
    RandomStream rng(13);
    std::set<int> branches;
    for (int run = 0; run < 200; ++run) {
        Vector2 psi = random_qubit(rng);
        double alpha = rng.uniform(-3.0, 3.0);
        double beta = rng.uniform(-3.0, 3.0);
        double gamma = rng.uniform(-3.0, 3.0);
        auto r = one_way_rotation(psi, alpha, beta, gamma, rng);

        // Adaptive angles depend only on strictly earlier outcomes.
        CHECK(r.records[1].alpha ==
              doctest::Approx((r.records[0].outcome ? -beta : beta)).epsilon(1e-14));
        CHECK(r.records[2].alpha ==
              doctest::Approx((r.records[1].outcome ? -gamma : gamma)).epsilon(1e-14));

        branches.insert(r.records[0].outcome * 4 + r.records[1].outcome * 2 +
                        r.records[2].outcome);

        QubitRegister corrected = r.output;
        corrected.apply_single(0, one_way_correction(r.records));
        Vector2 want = euler_rotation(alpha, beta, gamma) * psi;
        CHECK(fidelity(corrected, QubitRegister::single(want.normalized())) ==
              doctest::Approx(1.0).epsilon(1e-10));
    }
    CHECK(branches.size() == 8);
}

TEST_CASE("frame-corrected readout statistics match the target rotation") {
    RandomStream rng(17);
    for (int run = 0; run < 20; ++run) {
        Vector2 psi = random_qubit(rng);
        double alpha = rng.uniform(-3.0, 3.0), beta = rng.uniform(-3.0, 3.0),
               gamma = rng.uniform(-3.0, 3.0);
        auto r = one_way_rotation(psi, alpha, beta, gamma, rng);
        Matrix2 c = one_way_correction(r.records);
        Vector2 out;
        out << r.output.amplitudes()(0), r.output.amplitudes()(1);
        Vector2 corrected = c * out;
        Vector2 target = euler_rotation(alpha, beta, gamma) * psi;
        target.normalize();
        CHECK(std::norm(corrected(0)) == doctest::Approx(std::norm(target(0))).epsilon(1e-10));
        CHECK(std::norm(corrected(1)) == doctest::Approx(std::norm(target(1))).epsilon(1e-10));
    }
}

TEST_CASE("teleportation trick: CZ (P1 x P2) = (P3 x P4) CZ for all pairs") {
    const Pauli all[4] = {Pauli::I, Pauli::X, Pauli::Y, Pauli::Z};
    for (Pauli a : all) {
        for (Pauli b : all) {
            auto r = clifford_conjugation_check(cz_gate(), a, b);
            Matrix4 lhs = cz_gate() * Eigen::kroneckerProduct(pauli_matrix(a), pauli_matrix(b));
            Matrix4 rhs = r.phase *
                          Eigen::kroneckerProduct(pauli_matrix(r.first), pauli_matrix(r.second)) *
                          cz_gate();
            CHECK((lhs - rhs).cwiseAbs().maxCoeff() < 1e-12);
        }
    }
}

TEST_CASE("cz bridge: computational input |00> is unchanged up to frame") {
    RandomStream rng(19);
    Eigen::Vector4cd psi;
    psi << 1, 0, 0, 0;
    auto r = cz_via_bridge(psi, rng);
    QubitRegister corrected = r.output;
    for (int q = 0; q < 2; ++q) {
        if (r.frame[q].z) corrected.apply_single(q, pauli_z());
        if (r.frame[q].x) corrected.apply_single(q, pauli_x());
    }
    QubitRegister want(2);
    want.amplitudes() = psi;
    CHECK(fidelity(corrected, want) == doctest::Approx(1.0).epsilon(1e-10));
}

TEST_CASE("cz bridge implements CZ on all branches and both schedules") {
    RandomStream rng(23);
    for (int rep = 0; rep < 2; ++rep) {
        Eigen::Vector4cd psi;
        for (int i = 0; i < 4; ++i) psi(i) = cd(rng.gaussian(), rng.gaussian());
        psi.normalize();
        Eigen::Vector4cd target = cz_gate() * psi;

        double total_prob = 0.0;
        for (int bits = 0; bits < 256; ++bits) {
            std::vector<int> outcomes(8);
            for (int k = 0; k < 8; ++k) outcomes[k] = (bits >> k) & 1;
            auto ri = cz_via_bridge_forced(psi, outcomes, BridgeSchedule::interleaved);
            auto re = cz_via_bridge_forced(psi, outcomes, BridgeSchedule::entangle_first);
            CHECK(ri.branch_probability == doctest::Approx(re.branch_probability).epsilon(1e-10));
            CHECK(fidelity(ri.output, re.output) == doctest::Approx(1.0).epsilon(1e-10));
            total_prob += ri.branch_probability;

            QubitRegister corrected = ri.output;
            for (int q = 0; q < 2; ++q) {
                if (ri.frame[q].z) corrected.apply_single(q, pauli_z());
                if (ri.frame[q].x) corrected.apply_single(q, pauli_x());
            }
            QubitRegister want(2);
            want.amplitudes() = target;
            CHECK(fidelity(corrected, want) == doctest::Approx(1.0).epsilon(1e-10));
        }
        CHECK(total_prob == doctest::Approx(1.0).epsilon(1e-10));
    }
}

TEST_CASE("fusion merge joins two 2-qubit paths into a 3-qubit path") {
    auto c1 = make_cluster(ClusterGraph::path(2, 0));
    auto c2 = make_cluster(ClusterGraph::path(2, 10));
    for (int outcome : {0, 1}) {
        auto r = fusion_merge(c1, 1, c2, 10, outcome);
        CHECK(r.probability == doctest::Approx(0.5).epsilon(1e-12));
        CHECK(r.merged.graph.vertices == std::vector<int>{0, 1, 11});
        CHECK(cluster_fidelity(r.merged) == doctest::Approx(1.0).epsilon(1e-10));
    }
}

TEST_CASE("fusion merge outcome 1 equals outcome 0 up to a local Z") {
    auto c1 = make_cluster(ClusterGraph::path(3, 0));
    auto c2 = make_cluster(ClusterGraph::star(2, 10));
    auto r0 = fusion_merge(c1, 2, c2, 10, 0);
    auto r1 = fusion_merge(c1, 2, c2, 10, 1);
    QubitRegister flipped = r0.merged.reg;
    flipped.apply_single(r0.merged.graph.index_of(2), pauli_z());
    CHECK(fidelity(flipped, r1.merged.reg) == doctest::Approx(1.0).epsilon(1e-12));
}

TEST_CASE("fusing two single-vertex clusters leaves one |+>-like qubit") {
    ClusterGraph g1, g2;
    g1.vertices = {0};
    g2.vertices = {1};
    auto r = fusion_merge(make_cluster(g1), 0, make_cluster(g2), 1, 0);
    CHECK(r.merged.graph.vertices == std::vector<int>{0});
    CHECK(r.merged.graph.edges.empty());
    CHECK(cluster_fidelity(r.merged) == doctest::Approx(1.0).epsilon(1e-12));
}

TEST_CASE("fusion merge on orthogonal branch throws") {
    ClusterGraph g1, g2;
    g1.vertices = {0};
    g2.vertices = {1};
    auto c1 = make_cluster(g1);
    auto c2 = make_cluster(g2);
    c1.reg = QubitRegister::computational(1, 0);
    c2.reg = QubitRegister::computational(1, 1);
    CHECK_THROWS_AS(fusion_merge(c1, 0, c2, 1, 0), ZeroProbabilityBranch);
}

TEST_CASE("dh merge creates a cherry and matches the predicted cluster") {
    for (int sign : {1, -1}) {
        auto c1 = make_cluster(ClusterGraph::path(2, 0));   // ids 0,1
        auto c2 = make_cluster(ClusterGraph::path(2, 10));  // ids 10,11
        auto r = dh_merge(c1, 1, c2, 10, sign);
        CHECK(r.probability == doctest::Approx(0.5).epsilon(1e-12));
        // q2 = 10 must be a leaf attached only to q1 = 1.
        CHECK(r.merged.graph.neighbors(10) == std::vector<int>{1});
        CHECK(cluster_fidelity(r.merged) == doctest::Approx(1.0).epsilon(1e-10));
    }
}

TEST_CASE("dh merge signs differ by a local Z on the fused qubit") {
    auto c1 = make_cluster(ClusterGraph::path(3, 0));
    auto c2 = make_cluster(ClusterGraph::path(2, 10));
    auto rp = dh_merge(c1, 2, c2, 10, 1);
    auto rm = dh_merge(c1, 2, c2, 10, -1);
    QubitRegister flipped = rp.merged.reg;
    flipped.apply_single(rp.merged.graph.index_of(2), pauli_z());
    CHECK(fidelity(flipped, rm.merged.reg) == doctest::Approx(1.0).epsilon(1e-12));
}

TEST_CASE("dh merge leaf qubit is maximally mixed") {
    auto c1 = make_cluster(ClusterGraph::path(2, 0));
    auto c2 = make_cluster(ClusterGraph::path(2, 10));
    auto r = dh_merge(c1, 1, c2, 10, 1);
    auto rho = reduced_density(r.merged.reg, r.merged.graph.index_of(10));
    CHECK(std::abs(rho(0, 0) - 0.5) < 1e-12);
    CHECK(std::abs(rho(1, 1) - 0.5) < 1e-12);
    CHECK(std::abs(rho(0, 1)) < 1e-12);
}

TEST_CASE("dh merge with no odd-parity support throws") {
    ClusterGraph g1, g2;
    g1.vertices = {0};
    g2.vertices = {1};
    auto c1 = make_cluster(g1);
    auto c2 = make_cluster(g2);
    c1.reg = QubitRegister::computational(1, 0);
    c2.reg = QubitRegister::computational(1, 0);
    CHECK_THROWS_AS(dh_merge(c1, 0, c2, 1, 1), ZeroProbabilityBranch);
}

TEST_CASE("computational measurement collapses and removes the qubit") {
    RandomStream rng(31);
    int seen[2] = {0, 0};
    for (int rep = 0; rep < 40; ++rep) {
        QubitRegister reg = QubitRegister::tensor(QubitRegister::all_plus(1),
                                                  QubitRegister::computational(1, 1));
        MeasurementRecord rec = measure_computational(reg, 0, rng);
        CHECK(rec.computational);
        CHECK(rec.branch_probability == doctest::Approx(0.5).epsilon(1e-12));
        ++seen[rec.outcome];
        CHECK(reg.qubit_count() == 1);
        CHECK(std::abs(reg.amplitudes()(1) - 1.0) < 1e-12);
    }
    CHECK(seen[0] > 0);
    CHECK(seen[1] > 0);
}

TEST_CASE("growth simulation drift follows p*m - 2") {
    RandomStream rng(29);
    {
        auto t = growth_simulation(1.0, 3, 10, 1000, rng);
        CHECK(t.drift == doctest::Approx(1.0).epsilon(1e-14));
    }
    struct Case {
        double p;
        int m;
    };
    for (Case c : {Case{0.5, 5}, Case{0.5, 4}, Case{0.25, 9}}) {
        const long steps = 10000;
        auto t = growth_simulation(c.p, c.m, 5000, steps, rng);
        double mean = c.p * c.m - 2.0;
        double step_sd = std::sqrt(c.p * (1 - c.p)) * c.m;
        double tol = 3.0 * step_sd / std::sqrt(static_cast<double>(steps));
        CHECK(std::abs(t.drift - mean) < tol);
        CHECK(t.sizes.size() == static_cast<std::size_t>(steps + 1));
    }
}
