#pragma once

#include <map>
#include <utility>
#include <vector>

#include "oqsim/qubit.hpp"
#include "oqsim/rng.hpp"

namespace oqsim {

// Byproduct record: the state carries X^x Z^z on this qubit relative to the
// ideal cluster, applied lazily (tracked modulo global phase).
struct PauliFrame {
    int x = 0;
    int z = 0;
};

// Qubit vertices plus CZ edges, with per-qubit pending corrections.
struct ClusterGraph {
    std::vector<int> vertices;
    std::vector<std::pair<int, int>> edges;
    std::map<int, PauliFrame> corrections;

    static ClusterGraph path(int n, int first_id = 0);
    static ClusterGraph star(int leaves, int center_id = 0);

    void add_edge(int a, int b);
    bool has_vertex(int id) const;
    int index_of(int id) const;  // position in `vertices`
    std::vector<int> neighbors(int id) const;
};

struct ClusterState {
    ClusterGraph graph;
    QubitRegister reg;  // qubit order follows graph.vertices
};

// |+>^n with CZ on every edge. Edge order is irrelevant.
QubitRegister build_cluster(const ClusterGraph& graph);
ClusterState make_cluster(const ClusterGraph& graph);

// Fidelity of `state` with the corrections-applied cluster of its graph.
double cluster_fidelity(const ClusterState& state);

struct MeasurementRecord {
    int qubit = 0;
    bool computational = false;  // false: equatorial at angle alpha
    double alpha = 0.0;
    int outcome = 0;
    double branch_probability = 0.0;
};

// Projects onto the eigenstates (|0> +/- e^{i alpha}|1>)/sqrt2 of
// A(alpha) = Z(-alpha) X Z(alpha) and removes the qubit.
MeasurementRecord measure_equatorial(QubitRegister& reg, int qubit, double alpha,
                                     RandomStream& rng);
MeasurementRecord measure_computational(QubitRegister& reg, int qubit, RandomStream& rng);

struct OneWayResult {
    QubitRegister output;  // single qubit
    std::vector<MeasurementRecord> records;
};

// Linear 4-qubit cluster implementing HZ(gamma)HZ(beta)HZ(alpha) by three
// adaptive equatorial measurements. The output equals
//   X^m Z^l X^k . H . Z(gamma)X(beta)Z(alpha) |psi>,
// so one_way_correction() folds the byproducts and the wire Hadamard away.
OneWayResult one_way_rotation(const Vector2& psi, double alpha, double beta, double gamma,
                              RandomStream& rng);

// Local correction C with C * output = Z(gamma)X(beta)Z(alpha)|psi> up to
// global phase.
Matrix2 one_way_correction(const std::vector<MeasurementRecord>& records);

enum class BridgeSchedule { interleaved, entangle_first };

struct BridgeResult {
    QubitRegister output;  // two qubits
    std::vector<int> outcomes;
    PauliFrame frame[2];
    double branch_probability = 1.0;
};

// Two five-qubit wires bridged by one vertical CZ at the middle column;
// the measured grid implements (Pauli frame) * U_CZ on the two wire inputs.
// Panel order per `schedule`: entangling interleaved with measurements, or
// all edges first (the orders commute).
BridgeResult cz_via_bridge(const Eigen::Vector4cd& psi_in, RandomStream& rng,
                           BridgeSchedule schedule = BridgeSchedule::interleaved);

// Same with forced measurement outcomes (8 bits), for exhaustive checks.
BridgeResult cz_via_bridge_forced(const Eigen::Vector4cd& psi_in,
                                  const std::vector<int>& outcomes, BridgeSchedule schedule);

struct MergeResult {
    ClusterState merged;
    double probability = 0.0;
};

// Type-I fusion at the qubit level: |0><00| +/- |1><11| on (q1, q2), the
// new qubit keeping q1's id and inheriting both neighborhoods. Outcome 1
// adds a pending Z on the new qubit.
MergeResult fusion_merge(const ClusterState& c1, int q1, const ClusterState& c2, int q2,
                         int outcome);

// Double-heralding merge: E+/- = |01><01| +/- |10><10| on (q1, q2) followed
// by X_1, H_2 and the Z products on q1's old neighborhood. q2 survives as a
// leaf ("cherry") attached only to q1. `sign` is +1 or -1; probabilities
// are normalized over the two heralded signs.
MergeResult dh_merge(const ClusterState& c1, int q1, const ClusterState& c2, int q2, int sign);

struct GrowthTrajectory {
    std::vector<long> sizes;  // size after each step, sizes[0] = n0
    double drift = 0.0;       // (final - initial) / steps
};

// Cluster growth economics: success adds m-2 qubits, failure costs 2 (the
// fused qubit plus one boundary qubit measured out), floored at zero.
GrowthTrajectory growth_simulation(double p, int m, long n0, long steps, RandomStream& rng);

}  // namespace oqsim
