#pragma once

#include <cstdint>
#include <optional>
#include <vector>

#include "core/interaction.hpp"
#include "core/network.hpp"

namespace modumap {

// Partition is std::vector<int>: logical qubit -> QPU index.

enum class RoutingMode { SinglePath, Ecmp };

struct ObjectiveParams {
    double alpha = 1.0;  // weighted cut distance
    double beta = 1.0;   // communication-port overflow
    double eta = 0.5;    // routed link-load congestion
    RoutingMode routing_mode = RoutingMode::SinglePath;
    double disconnected_penalty = 1e12;  // per unroutable traffic pair
};

struct SaParams {
    double initial_temp = 1.0;  // > 0
    double cooling = 0.995;     // in (0, 1)
    long steps = 0;
    std::uint64_t rng_seed = 0;
};

struct ObjectiveBreakdown {
    double total = 0.0;
    double cut_distance_term = 0.0;  // alpha * sum w_ij * d(pi_i, pi_j) over cut edges
    double port_term = 0.0;          // beta * sum_q max(0, b_q - P)^2
    double congestion_term = 0.0;    // eta * sum_e L_e^2
    int disconnected_pairs = 0;      // each adds disconnected_penalty to total
};

// Sum of weights over edges whose endpoints sit on different QPUs.
double cut_weight(const InteractionGraph& g, const Partition& pi);

// b_q: number of logical qubits on q with at least one cut-crossing edge.
std::vector<int> boundary_counts(const InteractionGraph& g, const Partition& pi, int num_qpus);

std::vector<int> partition_loads(const Partition& pi, int num_qpus);

// Full TPCCAP objective evaluation. Cut edges between QPUs with no
// interconnect path contribute the disconnected penalty instead of a
// distance term.
ObjectiveBreakdown objective(const InteractionGraph& g, const Partition& pi, const QpuGraph& qg,
                             const DistanceTable& dist, int ports, const ObjectiveParams& params);

// Index ranges, weight finiteness and nonnegativity, n <= N*K.
void validate_partition_inputs(const InteractionGraph& g, int num_qpus, int capacity);

// Incrementally maintained objective used by the local search and the
// annealer. Deltas are computed without mutating state; committing applies
// exactly the same changes the delta reported. A full rebuild runs every
// 1000 commits to bound floating-point drift.
class IncrementalObjective {
public:
    struct Move {
        int qubit;
        int to;
    };

    IncrementalObjective(const InteractionGraph& g, const QpuGraph& qg,
                         const DistanceTable& dist, int ports, const ObjectiveParams& params,
                         Partition initial);

    double value() const;
    const Partition& assignment() const { return assign_; }
    int load(int qpu) const { return loads_[qpu]; }

    double delta(const std::vector<Move>& moves) const;
    void commit(const std::vector<Move>& moves);

private:
    struct PendingChanges;

    void compute_changes(const std::vector<Move>& moves, PendingChanges& out) const;
    void rebuild();
    const PairFlow& flow_for(int a, int b) const;

    const InteractionGraph& g_;
    const QpuGraph& qg_;
    const DistanceTable& dist_;
    int num_qpus_;
    int ports_;
    ObjectiveParams params_;

    Partition assign_;
    std::vector<int> loads_;
    std::vector<int> cross_count_;        // per qubit: # neighbors on other QPUs
    std::vector<int> boundary_;           // per QPU: b_q
    std::vector<double> traffic_;         // dense num_qpus^2, symmetric
    std::vector<int> traffic_edges_;      // # logical edges behind each traffic entry
    std::vector<double> link_load_;       // per link id
    double cut_distance_raw_ = 0.0;       // sum w*d over cut edges with finite d
    double port_raw_ = 0.0;               // sum max(0, b_q - P)^2
    double congestion_raw_ = 0.0;         // sum L_e^2
    int unroutable_ = 0;
    long commits_ = 0;

    mutable std::vector<std::optional<PairFlow>> flow_cache_;
};

Partition heavy_edge_partition(const InteractionGraph& g, int num_qpus, int capacity);

Partition balanced_greedy_partition(const InteractionGraph& g, int num_qpus, int capacity,
                                    double lambda, std::uint64_t rng_seed, int pass_limit = 20);

Partition tpccap_partition(const InteractionGraph& g, const QpuGraph& qg,
                           const DistanceTable& dist, int num_qpus, int capacity, int ports,
                           const ObjectiveParams& params, double lambda, std::uint64_t rng_seed,
                           int pass_limit = 20);

Partition tpccap_sa_partition(const InteractionGraph& g, const QpuGraph& qg,
                              const DistanceTable& dist, int num_qpus, int capacity, int ports,
                              const ObjectiveParams& params, double lambda, std::uint64_t rng_seed,
                              int pass_limit, const SaParams& sa);

}  // namespace modumap
