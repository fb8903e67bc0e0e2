#pragma once

#include <string>
#include <vector>

#include "core/architecture.hpp"
#include "core/circuit.hpp"

namespace modumap {

// Cross-QPU operation recorded in extraction order. Operands are physical
// indices; after local routing they are re-resolved to the tracked position
// at the event's synchronization barrier.
struct RemoteEvent {
    std::string name;
    std::vector<int> phys_operands;
    std::vector<int> endpoint_qpus;  // distinct owners, in operand order
    std::vector<double> params;
    std::vector<int> clbits;
    long original_index = -1;
    bool composite = false;  // cross-QPU instruction with >= 3 operands
};

// Per-QPU local circuits over block-relative indices [0, B), plus the
// ordered remote-event list. Each remote event leaves one synchronization
// barrier (tagged with the event's original_index) in every endpoint local
// circuit.
struct DistributedProgram {
    int num_qpus = 0;
    int block_size = 0;
    std::vector<Circuit> locals;
    std::vector<RemoteEvent> remote_events;
    std::vector<int> swap_counts;  // per QPU, filled by route_locals

    int local_index_of(int qpu, int physical) const { return physical - qpu * block_size; }
    int physical_index_of(int qpu, int local) const { return qpu * block_size + local; }
};

DistributedProgram extract_distributed(const Circuit& mapped, const ModularArchitecture& arch);

// Routes every local circuit over its own intra-QPU coupling map and updates
// remote-event operands to the post-routing positions at each event's
// barrier.
DistributedProgram route_locals(const DistributedProgram& dp, const ModularArchitecture& arch);

inline long remote_count(const DistributedProgram& dp) {
    return static_cast<long>(dp.remote_events.size());
}

}  // namespace modumap
