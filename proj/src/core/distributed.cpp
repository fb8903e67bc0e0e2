#include "core/distributed.hpp"

#include <algorithm>
#include <map>

#include "core/error.hpp"
#include "core/routing.hpp"

namespace modumap {

DistributedProgram extract_distributed(const Circuit& mapped, const ModularArchitecture& arch) {
    DistributedProgram dp;
    dp.num_qpus = arch.num_qpus();
    dp.block_size = arch.block_size();
    dp.swap_counts.assign(static_cast<std::size_t>(dp.num_qpus), 0);
    dp.locals.assign(static_cast<std::size_t>(dp.num_qpus), Circuit{});
    for (Circuit& local : dp.locals) {
        local.num_qubits = dp.block_size;
        local.num_clbits = mapped.num_clbits;
    }

    auto to_local = [&](const Instruction& instr, int qpu) {
        Instruction out = instr;
        for (int& q : out.qubits) q = dp.local_index_of(qpu, q);
        return out;
    };

    for (const Instruction& instr : mapped.instructions) {
        if (instr.qubits.empty()) {
            // quantum-operand-free instructions: a global barrier reaches
            // every local circuit
            if (!instr.is_barrier())
                raise(ErrorKind::Pipeline,
                      "instruction '" + instr.name + "' has no quantum operands");
            for (Circuit& local : dp.locals) {
                Instruction barrier;
                barrier.name = "barrier";
                barrier.original_index = instr.original_index;
                local.instructions.push_back(std::move(barrier));
            }
            continue;
        }

        std::vector<int> owners;  // distinct, in operand order
        for (int p : instr.qubits) {
            int q = arch.qpu_of(p);
            if (std::find(owners.begin(), owners.end(), q) == owners.end()) owners.push_back(q);
        }

        if (instr.is_barrier()) {
            // barriers are synchronization only; split per owner
            for (int q : owners) {
                Instruction barrier;
                barrier.name = "barrier";
                barrier.original_index = instr.original_index;
                for (int p : instr.qubits)
                    if (arch.qpu_of(p) == q) barrier.qubits.push_back(dp.local_index_of(q, p));
                dp.locals[q].instructions.push_back(std::move(barrier));
            }
            continue;
        }

        if (owners.size() == 1) {
            dp.locals[owners[0]].instructions.push_back(to_local(instr, owners[0]));
            continue;
        }

        RemoteEvent event;
        event.name = instr.name;
        event.phys_operands = instr.qubits;
        event.endpoint_qpus = owners;
        event.params = instr.params;
        event.clbits = instr.clbits;
        event.original_index = instr.original_index;
        event.composite = instr.qubits.size() >= 3;
        // one synchronization barrier per endpoint, carrying the event's
        // operands on that QPU so local routing can track their positions
        for (int q : owners) {
            Instruction barrier;
            barrier.name = "barrier";
            barrier.original_index = instr.original_index;
            for (int p : instr.qubits)
                if (arch.qpu_of(p) == q) barrier.qubits.push_back(dp.local_index_of(q, p));
            dp.locals[q].instructions.push_back(std::move(barrier));
        }
        dp.remote_events.push_back(std::move(event));
    }
    return dp;
}

DistributedProgram route_locals(const DistributedProgram& dp, const ModularArchitecture& arch) {
    DistributedProgram out = dp;
    // barrier operand positions after routing, per (event original_index, qpu)
    std::map<std::pair<long, int>, std::vector<int>> barrier_positions;

    for (int q = 0; q < dp.num_qpus; ++q) {
        CouplingMap local_map;
        for (const auto& [u, v] : arch.local_coupling(q))
            local_map.push_back({dp.local_index_of(q, u), dp.local_index_of(q, v)});
        RoutedCircuit routed = route(dp.locals[q], local_map);
        out.swap_counts[q] = routed.swap_count;
        for (const Instruction& instr : routed.circuit.instructions) {
            if (!instr.is_barrier() || instr.original_index < 0) continue;
            auto key = std::make_pair(instr.original_index, q);
            if (!barrier_positions.count(key)) barrier_positions[key] = instr.qubits;
        }
        out.locals[q] = std::move(routed.circuit);
    }

    for (RemoteEvent& event : out.remote_events) {
        for (int q : event.endpoint_qpus) {
            auto it = barrier_positions.find({event.original_index, q});
            if (it == barrier_positions.end())
                raise(ErrorKind::Pipeline, "missing synchronization barrier for remote event " +
                                               std::to_string(event.original_index));
            // operands owned by q, in operand order, map onto the barrier's
            // routed operand list
            std::size_t slot = 0;
            for (int& p : event.phys_operands) {
                if (arch.qpu_of(p) != q) continue;
                p = dp.physical_index_of(q, it->second.at(slot));
                ++slot;
            }
        }
    }
    return out;
}

}  // namespace modumap
