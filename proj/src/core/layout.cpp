#include "core/layout.hpp"

#include <algorithm>
#include <set>

#include "core/error.hpp"

namespace modumap {

std::vector<double> external_scores(const InteractionGraph& g, const Partition& pi) {
    if (pi.size() != static_cast<std::size_t>(g.num_qubits()))
        raise(ErrorKind::InvalidIndex, "partition length does not match qubit count");
    std::vector<double> scores(pi.size(), 0.0);
    for (const WeightedEdge& e : g.edges()) {
        if (pi[e.a] == pi[e.b]) continue;
        scores[e.a] += e.weight;
        scores[e.b] += e.weight;
    }
    return scores;
}

namespace {

// remote QPUs a qubit interacts with
std::set<int> contacts(const InteractionGraph& g, const Partition& pi, int v) {
    std::set<int> out;
    for (const auto& [u, w] : g.neighbors(v)) {
        (void)w;
        if (pi[u] != pi[v]) out.insert(pi[u]);
    }
    return out;
}

std::vector<int> select_comm_qubits(const std::vector<int>& members,
                                    const std::vector<double>& scores,
                                    const InteractionGraph& g, const Partition& pi,
                                    LayoutMode mode, int count) {
    std::vector<int> pool = members;  // ascending logical order
    std::vector<int> chosen;
    if (mode == LayoutMode::TopK) {
        std::stable_sort(pool.begin(), pool.end(),
                         [&](int x, int y) { return scores[x] > scores[y]; });
        chosen.assign(pool.begin(), pool.begin() + count);
        return chosen;
    }
    // diverse: each pick maximizes s_i plus a bonus of the current maximum
    // score per remote QPU the candidate would newly cover
    std::set<int> covered;
    while (static_cast<int>(chosen.size()) < count) {
        double max_score = 0.0;
        for (int v : pool) max_score = std::max(max_score, scores[v]);
        int best = -1;
        double best_value = 0.0;
        for (int v : pool) {
            int newly = 0;
            for (int q : contacts(g, pi, v))
                if (!covered.count(q)) ++newly;
            double value = scores[v] + max_score * newly;
            if (best < 0 || value > best_value) {
                best = v;
                best_value = value;
            }
        }
        chosen.push_back(best);
        for (int q : contacts(g, pi, best)) covered.insert(q);
        pool.erase(std::find(pool.begin(), pool.end(), best));
    }
    return chosen;
}

}  // namespace

Layout assign_layout(const Partition& pi, const InteractionGraph& g,
                     const ModularArchitecture& arch, LayoutMode mode) {
    const int n = static_cast<int>(pi.size());
    const int num_qpus = arch.num_qpus();
    const int P = arch.comm_per_qpu();
    const int C = arch.config().compute_per_qpu;

    std::vector<std::vector<int>> members(static_cast<std::size_t>(num_qpus));
    for (int v = 0; v < n; ++v) {
        if (pi[v] < 0 || pi[v] >= num_qpus)
            raise(ErrorKind::InvalidIndex, "partition entry out of QPU range");
        members[pi[v]].push_back(v);
    }
    const std::vector<double> scores = external_scores(g, pi);

    Layout layout;
    layout.phys_of.assign(static_cast<std::size_t>(n), -1);
    for (int q = 0; q < num_qpus; ++q) {
        const auto& qubits = members[q];
        if (static_cast<int>(qubits.size()) > arch.capacity())
            raise(ErrorKind::LayoutOverflow,
                  "QPU " + std::to_string(q) + " holds " + std::to_string(qubits.size()) +
                      " qubits, capacity " + std::to_string(arch.capacity()));
        int comm_count = std::min<int>(P, static_cast<int>(qubits.size()));
        std::vector<int> comm = select_comm_qubits(qubits, scores, g, pi, mode, comm_count);
        const std::vector<int>& comm_phys = arch.comm_qubits(q);
        for (std::size_t k = 0; k < comm.size(); ++k) layout.phys_of[comm[k]] = comm_phys[k];

        int base = arch.block_range(q).first;
        int slot = 0;
        for (int v : qubits) {
            if (layout.phys_of[v] >= 0) continue;  // already on a comm position
            if (slot >= C)
                raise(ErrorKind::LayoutOverflow,
                      "compute positions exhausted on QPU " + std::to_string(q));
            layout.phys_of[v] = base + slot;
            ++slot;
        }
    }
    validate_layout(layout, pi, arch);
    return layout;
}

void validate_layout(const Layout& layout, const Partition& pi,
                     const ModularArchitecture& arch) {
    if (layout.phys_of.size() != pi.size())
        raise(ErrorKind::LayoutIncomplete, "layout length does not match partition length");
    std::vector<char> used(static_cast<std::size_t>(arch.num_physical()), 0);
    for (std::size_t v = 0; v < layout.phys_of.size(); ++v) {
        int p = layout.phys_of[v];
        if (p < 0 || p >= arch.num_physical())
            raise(ErrorKind::LayoutIncomplete,
                  "qubit " + std::to_string(v) + " has no valid physical position");
        if (used[p])
            raise(ErrorKind::LayoutNotInjective,
                  "physical index " + std::to_string(p) + " assigned twice");
        used[p] = 1;
        if (arch.qpu_of(p) != pi[v])
            raise(ErrorKind::LayoutQpuMismatch,
                  "qubit " + std::to_string(v) + " placed on QPU " +
                      std::to_string(arch.qpu_of(p)) + " but partitioned to " +
                      std::to_string(pi[v]));
    }
}

Circuit apply_layout(const Circuit& c, const Layout& layout, int num_physical) {
    if (layout.phys_of.size() != static_cast<std::size_t>(c.num_qubits))
        raise(ErrorKind::LayoutIncomplete, "layout does not cover the circuit");
    Circuit mapped;
    mapped.num_qubits = num_physical;
    mapped.num_clbits = c.num_clbits;
    mapped.instructions.reserve(c.instructions.size());
    for (const Instruction& instr : c.instructions) {
        Instruction out = instr;
        for (int& q : out.qubits) q = layout.phys_of[q];
        mapped.instructions.push_back(std::move(out));
    }
    return mapped;
}

}  // namespace modumap
