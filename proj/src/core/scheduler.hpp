#pragma once

#include <vector>

#include "core/distributed.hpp"
#include "core/network.hpp"

namespace modumap {

// Abstract time-unit costs; not calibrated hardware numbers.
struct CostParams {
    double tau_1 = 1.0;     // single-qubit instruction
    double tau_2 = 2.0;     // two-qubit instruction
    double tau_swap = 6.0;  // swap
    double tau_e = 1.0;     // entanglement generation per QPU hop
    double tau_c = 1.0;     // classical round trip
    double tau_r = 0.5;     // remote-operation overhead
    double rho = 0.0;       // async classical overlap fraction, in [0, 1]
};

struct ScheduleReport {
    double makespan = 0.0;
    long num_layers = 0;
    long num_remote_ops = 0;
    long num_rounds = 0;
    double peak_link_utilization = 0.0;
    int peak_port_usage = 0;
};

// One ASAP layer: local instruction indices per QPU plus the remote events
// scheduled at this depth.
struct Layer {
    std::vector<std::vector<std::size_t>> local_instructions;  // per QPU
    std::vector<std::size_t> remote_events;                    // indices into dp.remote_events
};

// Dependency-aware ASAP layering over local circuits and remote events.
// Barriers force a layer boundary on their whole QPU and occupy no layer.
std::vector<Layer> layerize(const DistributedProgram& dp);

// d(a,b) * tau_e + (1 - rho) * tau_c + tau_r.
double remote_cost(int a, int b, const DistanceTable& dist, const CostParams& cp);

// One remote round: events executed together under endpoint-port and
// link-capacity limits.
struct Round {
    std::vector<std::size_t> event_indices;  // positions in the packed list
    double cost = 0.0;
    double peak_utilization = 0.0;
    int peak_ports = 0;
};

// Greedy first-fit packing in original_index order. An event joins the
// current round only if each endpoint holds a free communication port, every
// link on its shortest path has >= 1 unit of remaining capacity, and (switch
// interconnects) the round's distinct QPU pairs stay within the pair limit.
std::vector<Round> pack_rounds(const std::vector<const RemoteEvent*>& events, const QpuGraph& qg,
                               const DistanceTable& dist, int ports, const CostParams& cp);

struct LayerSchedule {
    Layer layer;
    double local_cost = 0.0;
    double remote_cost = 0.0;
    std::vector<Round> rounds;
};

struct ScheduleResult {
    ScheduleReport report;
    std::vector<LayerSchedule> layers;
};

// Layer-based makespan estimation: per layer, the local cost is the maximum
// over QPUs of the summed instruction costs, the remote cost is the summed
// round costs (plus the switch reconfiguration delay per round after the
// first), and the layer contributes max(local, remote).
ScheduleResult estimate_schedule(const DistributedProgram& dp, const ModularArchitecture& arch,
                                 const QpuGraph& qg, const DistanceTable& dist,
                                 const CostParams& cp);

struct ScalarCost {
    double c_local = 0.0;
    double c_remote = 0.0;
    double c_total = 0.0;
};

// c_local = tau_1*n1 + tau_2*n2 + tau_swap*n_swap
// c_remote = n_remote * (tau_e + tau_c + tau_r)
// c_total = c_local + c_remote + 0.1 * depth * tau_2
ScalarCost scalar_cost(long n1, long n2, long n_swap, long n_remote, long depth,
                       const CostParams& cp);

void validate_cost_params(const CostParams& cp);

}  // namespace modumap
