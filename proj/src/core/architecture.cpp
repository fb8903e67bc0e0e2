#include "core/architecture.hpp"

#include <algorithm>

#include "core/error.hpp"

namespace modumap {

namespace {

// undirected local links over block-relative indices [0, B)
std::vector<std::pair<int, int>> local_links(const ArchitectureConfig& cfg) {
    int B = cfg.block_size();
    std::vector<std::pair<int, int>> links;
    switch (cfg.local_topology) {
        case LocalTopology::Clique:
            for (int a = 0; a < B; ++a)
                for (int b = a + 1; b < B; ++b) links.push_back({a, b});
            break;
        case LocalTopology::Line:
            for (int a = 0; a + 1 < B; ++a) links.push_back({a, a + 1});
            break;
        case LocalTopology::Ring:
            for (int a = 0; a + 1 < B; ++a) links.push_back({a, a + 1});
            if (B >= 3) links.push_back({0, B - 1});
            break;
        case LocalTopology::Grid: {
            int rows = cfg.grid_rows, cols = cfg.grid_cols;
            if (rows < 1 || cols < 1 || rows * cols != B)
                raise(ErrorKind::Config, "grid rows*cols must equal C+P");
            auto id = [cols](int r, int c) { return r * cols + c; };
            for (int r = 0; r < rows; ++r)
                for (int c = 0; c < cols; ++c) {
                    if (c + 1 < cols) links.push_back({id(r, c), id(r, c + 1)});
                    if (r + 1 < rows) links.push_back({id(r, c), id(r + 1, c)});
                }
            break;
        }
    }
    return links;
}

}  // namespace

int ModularArchitecture::qpu_of(int physical) const {
    if (physical < 0 || physical >= num_physical_)
        raise(ErrorKind::InvalidIndex,
              "physical index " + std::to_string(physical) + " out of range");
    return physical / block_size_;
}

std::pair<int, int> ModularArchitecture::block_range(int qpu) const {
    if (qpu < 0 || qpu >= config_.num_qpus)
        raise(ErrorKind::InvalidIndex, "QPU index " + std::to_string(qpu) + " out of range");
    return {qpu * block_size_, (qpu + 1) * block_size_};
}

const std::vector<int>& ModularArchitecture::comm_qubits(int qpu) const {
    if (qpu < 0 || qpu >= config_.num_qpus)
        raise(ErrorKind::InvalidIndex, "QPU index " + std::to_string(qpu) + " out of range");
    return comm_qubits_[qpu];
}

bool ModularArchitecture::is_comm(int physical) const {
    int q = qpu_of(physical);
    return physical - q * block_size_ >= config_.compute_per_qpu;
}

std::vector<std::pair<int, int>> ModularArchitecture::local_coupling(int qpu) const {
    auto [first, last] = block_range(qpu);
    std::vector<std::pair<int, int>> edges;
    for (const auto& [u, v] : coupling_edges_)
        if (u >= first && u < last && v >= first && v < last) edges.push_back({u, v});
    return edges;
}

ModularArchitecture build_architecture(const ArchitectureConfig& cfg, const QpuGraph& qpu_graph) {
    if (cfg.num_qpus < 1) raise(ErrorKind::Config, "num_qpus must be >= 1");
    if (cfg.compute_per_qpu < 1) raise(ErrorKind::Config, "compute_per_qpu must be >= 1");
    if (cfg.comm_per_qpu < 0) raise(ErrorKind::Config, "comm_per_qpu must be >= 0");
    if (qpu_graph.num_qpus() != cfg.num_qpus)
        raise(ErrorKind::Config, "QPU graph does not match num_qpus");

    ModularArchitecture arch;
    arch.config_ = cfg;
    arch.block_size_ = cfg.block_size();
    arch.num_physical_ = cfg.num_qpus * arch.block_size_;

    std::vector<std::pair<int, int>> edges;
    const auto block_links = local_links(cfg);
    for (int q = 0; q < cfg.num_qpus; ++q) {
        int base = q * arch.block_size_;
        for (const auto& [a, b] : block_links) {
            edges.push_back({base + a, base + b});
            edges.push_back({base + b, base + a});
        }
        std::vector<int> comm;
        for (int k = cfg.compute_per_qpu; k < arch.block_size_; ++k) comm.push_back(base + k);
        arch.comm_qubits_.push_back(std::move(comm));
    }

    // Inter-QPU links join designated comm qubits of QPU pairs that are
    // directly adjacent in the interconnect graph. Each QPU assigns its comm
    // qubits round-robin over its sorted neighbor list. With P = 0 no
    // inter-QPU physical links exist.
    if (cfg.comm_per_qpu > 0) {
        int P = cfg.comm_per_qpu;
        std::vector<std::vector<int>> qpu_neighbors(static_cast<std::size_t>(cfg.num_qpus));
        for (int q = 0; q < cfg.num_qpus; ++q)
            for (const auto& [nbr, id] : qpu_graph.adjacency(q)) {
                (void)id;
                if (nbr < cfg.num_qpus) qpu_neighbors[q].push_back(nbr);  // skip switch nodes
            }
        auto slot_of = [&](int q, int nbr) {
            const auto& nbrs = qpu_neighbors[q];
            auto it = std::find(nbrs.begin(), nbrs.end(), nbr);
            return static_cast<int>(it - nbrs.begin()) % P;
        };
        for (int a = 0; a < cfg.num_qpus; ++a)
            for (int b : qpu_neighbors[a]) {
                if (b <= a) continue;
                int pa = arch.comm_qubits_[a][slot_of(a, b)];
                int pb = arch.comm_qubits_[b][slot_of(b, a)];
                edges.push_back({pa, pb});
                edges.push_back({pb, pa});
            }
    }

    std::sort(edges.begin(), edges.end());
    edges.erase(std::unique(edges.begin(), edges.end()), edges.end());
    arch.coupling_edges_ = std::move(edges);
    return arch;
}

}  // namespace modumap
