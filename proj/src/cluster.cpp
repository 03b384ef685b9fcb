#include "oqsim/cluster.hpp"

#include <algorithm>
#include <cmath>
#include <complex>

namespace oqsim {

namespace {
constexpr std::complex<double> kI = std::complex<double>(0.0, 1.0);
}

ClusterGraph ClusterGraph::path(int n, int first_id) {
    ClusterGraph g;
    for (int i = 0; i < n; ++i) g.vertices.push_back(first_id + i);
    for (int i = 0; i + 1 < n; ++i) g.add_edge(first_id + i, first_id + i + 1);
    return g;
}

ClusterGraph ClusterGraph::star(int leaves, int center_id) {
    ClusterGraph g;
    g.vertices.push_back(center_id);
    for (int i = 1; i <= leaves; ++i) {
        g.vertices.push_back(center_id + i);
        g.add_edge(center_id, center_id + i);
    }
    return g;
}

void ClusterGraph::add_edge(int a, int b) {
    edges.push_back({std::min(a, b), std::max(a, b)});
}

bool ClusterGraph::has_vertex(int id) const {
    return std::find(vertices.begin(), vertices.end(), id) != vertices.end();
}

int ClusterGraph::index_of(int id) const {
    auto it = std::find(vertices.begin(), vertices.end(), id);
    if (it == vertices.end()) throw SimError("vertex not in cluster");
    return static_cast<int>(it - vertices.begin());
}

std::vector<int> ClusterGraph::neighbors(int id) const {
    std::vector<int> out;
    for (const auto& [a, b] : edges) {
        if (a == id) out.push_back(b);
        if (b == id) out.push_back(a);
    }
    std::sort(out.begin(), out.end());
    return out;
}

QubitRegister build_cluster(const ClusterGraph& graph) {
    if (graph.vertices.empty()) throw SimError("build_cluster on an empty graph");
    QubitRegister reg = QubitRegister::all_plus(static_cast<int>(graph.vertices.size()));
    for (const auto& [a, b] : graph.edges) reg.apply_cz(graph.index_of(a), graph.index_of(b));
    return reg;
}

ClusterState make_cluster(const ClusterGraph& graph) {
    return ClusterState{graph, build_cluster(graph)};
}

double cluster_fidelity(const ClusterState& state) {
    QubitRegister ideal = build_cluster(state.graph);
    for (const auto& [id, frame] : state.graph.corrections) {
        int idx = state.graph.index_of(id);
        if (frame.x & 1) ideal.apply_single(idx, pauli_x());
        if (frame.z & 1) ideal.apply_single(idx, pauli_z());
    }
    return fidelity(state.reg, ideal);
}

MeasurementRecord measure_equatorial(QubitRegister& reg, int qubit, double alpha,
                                     RandomStream& rng) {
    Vector2 plus, minus;
    double s = 1.0 / std::sqrt(2.0);
    plus << s, s * std::exp(kI * alpha);
    minus << s, -s * std::exp(kI * alpha);

    QubitRegister branch0 = reg;
    double p0 = branch0.project_out(qubit, plus);
    int outcome;
    double prob;
    if (rng.uniform() < p0) {
        outcome = 0;
        prob = p0;
        reg = std::move(branch0);
    } else {
        outcome = 1;
        prob = 1.0 - p0;
        reg.project_out(qubit, minus);
    }
    return MeasurementRecord{qubit, false, alpha, outcome, prob};
}

MeasurementRecord measure_computational(QubitRegister& reg, int qubit, RandomStream& rng) {
    Vector2 zero, one;
    zero << 1, 0;
    one << 0, 1;
    QubitRegister branch0 = reg;
    double p0 = branch0.project_out(qubit, zero);
    int outcome;
    double prob;
    if (rng.uniform() < p0) {
        outcome = 0;
        prob = p0;
        reg = std::move(branch0);
    } else {
        outcome = 1;
        prob = 1.0 - p0;
        reg.project_out(qubit, one);
    }
    return MeasurementRecord{qubit, true, 0.0, outcome, prob};
}

OneWayResult one_way_rotation(const Vector2& psi, double alpha, double beta, double gamma,
                              RandomStream& rng) {
    ClusterGraph chain = ClusterGraph::path(4);
    QubitRegister reg = QubitRegister::tensor(QubitRegister::single(psi),
                                              QubitRegister::all_plus(3));
    for (const auto& [a, b] : chain.edges) reg.apply_cz(a, b);

    std::vector<MeasurementRecord> records;
    MeasurementRecord r1 = measure_equatorial(reg, 0, alpha, rng);
    r1.qubit = 0;
    records.push_back(r1);

    double beta_adapted = (r1.outcome ? -beta : beta);
    MeasurementRecord r2 = measure_equatorial(reg, 0, beta_adapted, rng);
    r2.qubit = 1;
    records.push_back(r2);

    double gamma_adapted = (r2.outcome ? -gamma : gamma);
    MeasurementRecord r3 = measure_equatorial(reg, 0, gamma_adapted, rng);
    r3.qubit = 2;
    records.push_back(r3);

    return OneWayResult{std::move(reg), std::move(records)};
}

Matrix2 one_way_correction(const std::vector<MeasurementRecord>& records) {
    int k = records.at(0).outcome;
    int l = records.at(1).outcome;
    int m = records.at(2).outcome;
    Matrix2 c = hadamard();
    if (k) c = c * pauli_x();
    if (l) c = c * pauli_z();
    if (m) c = c * pauli_x();
    return c;
}

namespace {

// One teleport hop: the wire qubit sits at register position `pos`, the
// next wire qubit at pos+... — positions are handled by the caller; this
// measures position 0 (X basis) and returns the outcome.
int bridge_hop(QubitRegister& reg, RandomStream* rng, const std::vector<int>* forced,
               std::size_t& forced_cursor, double& branch_prob) {
    if (forced) {
        Vector2 basis;
        double s = 1.0 / std::sqrt(2.0);
        int want = (*forced)[forced_cursor++];
        basis << s, (want ? -s : s);
        double p = reg.project_out(0, basis);
        branch_prob *= p;
        return want;
    }
    RandomStream& r = *rng;
    MeasurementRecord rec = measure_equatorial(reg, 0, 0.0, r);
    branch_prob *= rec.branch_probability;
    return rec.outcome;
}

BridgeResult bridge_impl(const Eigen::Vector4cd& psi_in, RandomStream* rng,
                         const std::vector<int>* forced, BridgeSchedule schedule) {
    // Grid qubits per row: columns 0..4; row wires interleaved in the
    // register as (row0 col c) = 2c, (row1 col c) = 2c+1 before any
    // measurement. Measurements always consume the two front positions, so
    // the register is ordered by column throughout.
    const int columns = 5;
    QubitRegister input(2);
    input.amplitudes() = psi_in;
    QubitRegister reg = QubitRegister::tensor(input, QubitRegister::all_plus(2 * (columns - 1)));
    // Reorder: inputs are columns 0; ancillas fill columns 1..4. Tensor
    // already places them that way with the interleaving below.
    // Position of (row r, col c): we built (in0, in1, a0..a7) which is
    // (00,10,01,11,02,12,03,13,04,14) once we treat ancilla k as
    // (row k%2, col 1+k/2). That matches the convention above.

    auto pos = [&](int row, int col, int measured_cols) {
        return 2 * (col - measured_cols) + row;
    };

    std::size_t cursor = 0;
    double branch_prob = 1.0;
    std::vector<int> outcomes;
    PauliFrame frame[2];

    auto entangle_column_pair = [&](int col, int measured) {
        reg.apply_cz(pos(0, col, measured), pos(0, col + 1, measured));
        reg.apply_cz(pos(1, col, measured), pos(1, col + 1, measured));
    };
    auto vertical_edge = [&](int col, int measured) {
        reg.apply_cz(pos(0, col, measured), pos(1, col, measured));
    };

    if (schedule == BridgeSchedule::entangle_first) {
        for (int c = 0; c + 1 < columns; ++c) entangle_column_pair(c, 0);
        vertical_edge(2, 0);
    }

    for (int col = 0; col + 1 < columns; ++col) {
        if (schedule == BridgeSchedule::interleaved) {
            entangle_column_pair(col, col);
            if (col == 2) vertical_edge(2, col);
        }
        for (int row = 0; row < 2; ++row) {
            int m = bridge_hop(reg, rng, forced, cursor, branch_prob);
            outcomes.push_back(m);
        }
    }

    // Frame bookkeeping: hops pair up as X^{m2} Z^{m1} per wire segment of
    // two columns; the vertical CZ maps (x,z) -> (x, z + x_other).
    auto absorb_pair = [&](int r, int m1, int m2) {
        frame[r].z = (frame[r].z + m1) & 1;
        frame[r].x = (frame[r].x + m2) & 1;
    };
    absorb_pair(0, outcomes[0], outcomes[2]);
    absorb_pair(1, outcomes[1], outcomes[3]);
    int x0 = frame[0].x, x1 = frame[1].x;
    frame[0].z = (frame[0].z + x1) & 1;
    frame[1].z = (frame[1].z + x0) & 1;
    absorb_pair(0, outcomes[4], outcomes[6]);
    absorb_pair(1, outcomes[5], outcomes[7]);

    return BridgeResult{std::move(reg), std::move(outcomes), {frame[0], frame[1]}, branch_prob};
}

}  // namespace

BridgeResult cz_via_bridge(const Eigen::Vector4cd& psi_in, RandomStream& rng,
                           BridgeSchedule schedule) {
    return bridge_impl(psi_in, &rng, nullptr, schedule);
}

BridgeResult cz_via_bridge_forced(const Eigen::Vector4cd& psi_in,
                                  const std::vector<int>& outcomes, BridgeSchedule schedule) {
    if (outcomes.size() != 8) throw SimError("bridge needs 8 forced outcomes");
    return bridge_impl(psi_in, nullptr, &outcomes, schedule);
}

namespace {

ClusterGraph fusion_merged_graph(const ClusterGraph& g1, int q1, const ClusterGraph& g2,
                                 int q2) {
    ClusterGraph merged;
    for (int v : g1.vertices) merged.vertices.push_back(v);
    for (int v : g2.vertices)
        if (v != q2) merged.vertices.push_back(v);
    for (const auto& [a, b] : g1.edges) merged.edges.push_back({a, b});
    for (const auto& [a, b] : g2.edges)
        merged.add_edge(a == q2 ? q1 : a, b == q2 ? q1 : b);
    for (const auto& [id, f] : g1.corrections) merged.corrections[id] = f;
    for (const auto& [id, f] : g2.corrections)
        if (id != q2) merged.corrections[id] = f;
    return merged;
}

}  // namespace

MergeResult fusion_merge(const ClusterState& c1, int q1, const ClusterState& c2, int q2,
                         int outcome) {
    if (!c1.graph.has_vertex(q1) || !c2.graph.has_vertex(q2))
        throw SimError("fusion_merge: qubit not in its cluster");
    int n1 = c1.reg.qubit_count();
    int i1 = c1.graph.index_of(q1);
    int i2 = n1 + c2.graph.index_of(q2);
    QubitRegister joint = QubitRegister::tensor(c1.reg, c2.reg);
    int n = joint.qubit_count();

    // |b><bb| on (i1, i2): keep matching bits, drop qubit i2.
    std::size_t s1 = std::size_t{1} << (n - 1 - i1);
    std::size_t s2 = std::size_t{1} << (n - 1 - i2);
    Eigen::VectorXcd reduced = Eigen::VectorXcd::Zero(joint.amplitudes().size() / 2);
    Eigen::Index out = 0;
    double kept = 0.0;
    for (std::size_t idx = 0; idx < joint.dim(); ++idx) {
        if (idx & s2) continue;
        // Reduced index `out` corresponds to idx with the i2 bit clear; the
        // amplitude comes from the branch whose i2 bit matches the i1 bit.
        bool b = (idx & s1) != 0;
        std::size_t source = b ? (idx | s2) : idx;
        std::complex<double> amp = joint.amplitudes()(source);
        if (outcome == 1 && b) amp = -amp;
        reduced(out++) = amp;
        kept += std::norm(amp);
    }
    if (kept < 1e-14) throw ZeroProbabilityBranch("fusion_merge: projector annihilates state");

    ClusterGraph merged = fusion_merged_graph(c1.graph, q1, c2.graph, q2);
    if (outcome == 1) merged.corrections[q1].z ^= 1;

    QubitRegister reg;
    reg = QubitRegister(n - 1);
    reg.amplitudes() = reduced / std::sqrt(kept);
    return MergeResult{ClusterState{std::move(merged), std::move(reg)}, kept};
}

MergeResult dh_merge(const ClusterState& c1, int q1, const ClusterState& c2, int q2, int sign) {
    if (sign != 1 && sign != -1) throw SimError("dh_merge: sign must be +1 or -1");
    if (!c1.graph.has_vertex(q1) || !c2.graph.has_vertex(q2))
        throw SimError("dh_merge: qubit not in its cluster");
    int n1 = c1.reg.qubit_count();
    int i1 = c1.graph.index_of(q1);
    int i2 = n1 + c2.graph.index_of(q2);
    QubitRegister joint = QubitRegister::tensor(c1.reg, c2.reg);
    int n = joint.qubit_count();

    double p_plus = 0.0, p_minus = 0.0;
    for (std::size_t idx = 0; idx < joint.dim(); ++idx) {
        int b1 = joint.bit(idx, i1), b2 = joint.bit(idx, i2);
        if (b1 == b2) continue;
        double w = std::norm(joint.amplitudes()(idx));
        p_plus += w;
        p_minus += w;
    }
    if (p_plus < 1e-14) throw ZeroProbabilityBranch("dh_merge: no odd-parity support");

    // E_{+/-}: same support, sign on the |10> component.
    for (std::size_t idx = 0; idx < joint.dim(); ++idx) {
        int b1 = joint.bit(idx, i1), b2 = joint.bit(idx, i2);
        if (b1 == b2) {
            joint.amplitudes()(idx) = 0.0;
        } else if (sign == -1 && b1 == 1) {
            joint.amplitudes()(idx) = -joint.amplitudes()(idx);
        }
    }
    joint.normalize();

    // Local Clifford sequence: X on q1, H on q2, then Z over q1's old
    // neighborhood inside c1.
    joint.apply_single(i1, pauli_x());
    joint.apply_single(i2, hadamard());
    for (int l : c1.graph.neighbors(q1)) joint.apply_single(c1.graph.index_of(l), pauli_z());

    // q1 inherits both neighborhoods, q2 stays as the leaf on q1.
    ClusterGraph rebuilt;
    for (int v : c1.graph.vertices) rebuilt.vertices.push_back(v);
    for (int v : c2.graph.vertices) rebuilt.vertices.push_back(v);
    for (const auto& [a, b] : c1.graph.edges)
        if (a != q1 && b != q1) rebuilt.edges.push_back({a, b});
    for (const auto& [a, b] : c2.graph.edges)
        if (a != q2 && b != q2) rebuilt.edges.push_back({a, b});
    for (int l : c1.graph.neighbors(q1)) rebuilt.add_edge(q1, l);
    for (int l : c2.graph.neighbors(q2)) rebuilt.add_edge(q1, l);
    rebuilt.add_edge(q1, q2);
    for (const auto& [id, f] : c1.graph.corrections) rebuilt.corrections[id] = f;
    for (const auto& [id, f] : c2.graph.corrections) rebuilt.corrections[id] = f;
    if (sign == -1) rebuilt.corrections[q1].z ^= 1;  // E_- = E_+ Z_1

    double denom = p_plus + p_minus;
    return MergeResult{ClusterState{std::move(rebuilt), std::move(joint)},
                       (sign == 1 ? p_plus : p_minus) / denom};
}

GrowthTrajectory growth_simulation(double p, int m, long n0, long steps, RandomStream& rng) {
    if (p <= 0.0 || p > 1.0) throw InvalidParams("growth: p must lie in (0, 1]");
    if (m < 2 || n0 < 2) throw InvalidParams("growth: m and n0 must be at least 2");
    GrowthTrajectory t;
    t.sizes.reserve(steps + 1);
    long size = n0;
    t.sizes.push_back(size);
    for (long s = 0; s < steps; ++s) {
        if (rng.uniform() < p)
            size += m - 2;
        else
            size -= 2;
        if (size < 0) size = 0;
        t.sizes.push_back(size);
    }
    t.drift = static_cast<double>(size - n0) / static_cast<double>(steps);
    return t;
}

}  // namespace oqsim
