#pragma once

#include <string>
#include <vector>

#include "core/network.hpp"

namespace modumap {

enum class LocalTopology { Clique, Line, Ring, Grid };

struct ArchitectureConfig {
    int num_qpus = 1;         // N
    int compute_per_qpu = 1;  // C
    int comm_per_qpu = 0;     // P
    LocalTopology local_topology = LocalTopology::Line;
    int grid_rows = 0;  // grid only; rows * cols must equal C + P
    int grid_cols = 0;

    int block_size() const { return compute_per_qpu + comm_per_qpu; }
};

// The modular machine: N homogeneous blocks of C compute + P communication
// qubits. QPU q owns physical indices [q*B, (q+1)*B); the last P indices of
// each block are its communication qubits. Symmetric physical links are
// stored as two directed edges.
class ModularArchitecture {
public:
    const ArchitectureConfig& config() const { return config_; }
    int num_qpus() const { return config_.num_qpus; }
    int block_size() const { return block_size_; }
    int num_physical() const { return num_physical_; }
    int comm_per_qpu() const { return config_.comm_per_qpu; }
    int capacity() const { return block_size_; }  // K = C + P

    // sorted directed edges over physical indices
    const std::vector<std::pair<int, int>>& coupling_edges() const { return coupling_edges_; }

    int qpu_of(int physical) const;
    std::pair<int, int> block_range(int qpu) const;  // [first, last)
    const std::vector<int>& comm_qubits(int qpu) const;
    bool is_comm(int physical) const;

    // coupling edges with both endpoints inside qpu's block
    std::vector<std::pair<int, int>> local_coupling(int qpu) const;

    friend ModularArchitecture build_architecture(const ArchitectureConfig& cfg,
                                                  const QpuGraph& qpu_graph);

private:
    ArchitectureConfig config_;
    int block_size_ = 0;
    int num_physical_ = 0;
    std::vector<std::pair<int, int>> coupling_edges_;
    std::vector<std::vector<int>> comm_qubits_;  // per QPU, sorted physical indices
};

// Builds the physical machine. Local blocks carry the chosen topology; each
// pair of QPUs adjacent in the interconnect graph is joined by one directed
// edge pair between designated communication qubits (round-robin over each
// QPU's P comm qubits, in sorted neighbor order).
ModularArchitecture build_architecture(const ArchitectureConfig& cfg, const QpuGraph& qpu_graph);

}  // namespace modumap
