#include "core/routing.hpp"

#include <algorithm>
#include <deque>
#include <limits>
#include <numeric>

#include "core/error.hpp"

namespace modumap {

namespace {

constexpr int kUnreached = std::numeric_limits<int>::max();

// undirected adjacency, sorted neighbors
std::vector<std::vector<int>> undirected_adjacency(int num_vertices, const CouplingMap& coupling) {
    std::vector<std::vector<int>> adj(static_cast<std::size_t>(num_vertices));
    for (const auto& [u, v] : coupling) {
        if (u < 0 || v < 0 || u >= num_vertices || v >= num_vertices)
            raise(ErrorKind::InvalidIndex, "coupling edge endpoint out of range");
        adj[u].push_back(v);
        adj[v].push_back(u);
    }
    for (auto& nbrs : adj) {
        std::sort(nbrs.begin(), nbrs.end());
        nbrs.erase(std::unique(nbrs.begin(), nbrs.end()), nbrs.end());
    }
    return adj;
}

std::vector<int> bfs(const std::vector<std::vector<int>>& adj, int src) {
    std::vector<int> dist(adj.size(), kUnreached);
    std::deque<int> queue;
    dist[src] = 0;
    queue.push_back(src);
    while (!queue.empty()) {
        int v = queue.front();
        queue.pop_front();
        for (int u : adj[v])
            if (dist[u] == kUnreached) {
                dist[u] = dist[v] + 1;
                queue.push_back(u);
            }
    }
    return dist;
}

// lexicographically smallest shortest vertex path from `from` to `to`
std::vector<int> lex_path(const std::vector<std::vector<int>>& adj, int from, int to) {
    std::vector<int> dist_to = bfs(adj, to);
    if (dist_to[from] == kUnreached) return {};
    std::vector<int> path{from};
    int cur = from;
    while (cur != to) {
        for (int u : adj[cur])
            if (dist_to[u] == dist_to[cur] - 1) {
                path.push_back(u);
                cur = u;
                break;
            }
    }
    return path;
}

bool coupled(const std::vector<std::vector<int>>& adj, int u, int v) {
    return std::binary_search(adj[u].begin(), adj[u].end(), v);
}

}  // namespace

RoutedCircuit route(const Circuit& c, const CouplingMap& coupling) {
    const int n = c.num_qubits;
    const auto adj = undirected_adjacency(n, coupling);

    // pos[token] = current vertex of the qubit that started at `token`
    std::vector<int> pos(static_cast<std::size_t>(n));
    std::vector<int> token_at(static_cast<std::size_t>(n));
    std::iota(pos.begin(), pos.end(), 0);
    std::iota(token_at.begin(), token_at.end(), 0);

    RoutedCircuit out;
    out.circuit.num_qubits = n;
    out.circuit.num_clbits = c.num_clbits;

    auto apply_swap = [&](int u, int v) {
        Instruction swap;
        swap.name = "swap";
        swap.qubits = {u, v};
        swap.original_index = -1;
        out.circuit.instructions.push_back(std::move(swap));
        ++out.swap_count;
        int tu = token_at[u], tv = token_at[v];
        std::swap(token_at[u], token_at[v]);
        pos[tu] = v;
        pos[tv] = u;
    };

    for (const Instruction& instr : c.instructions) {
        for (int q : instr.qubits)
            if (q < 0 || q >= n)
                raise(ErrorKind::InvalidIndex,
                      "operand " + std::to_string(q) + " outside the coupling map");
        if (!instr.is_barrier() && instr.qubits.size() > 2)
            raise(ErrorKind::RoutingInvalid,
                  "cannot route instruction '" + instr.name + "' with more than 2 operands");

        if (instr.qubits.size() == 2 && !instr.is_barrier()) {
            int u = pos[instr.qubits[0]];
            int v = pos[instr.qubits[1]];
            if (!coupled(adj, u, v)) {
                int lo = std::min(u, v), hi = std::max(u, v);
                std::vector<int> path = lex_path(adj, lo, hi);
                if (path.empty())
                    raise(ErrorKind::RoutingDisconnected,
                          "operands " + std::to_string(u) + " and " + std::to_string(v) +
                              " are not connected by the coupling map");
                for (std::size_t k = 0; k + 2 < path.size(); ++k)
                    apply_swap(path[k], path[k + 1]);
            }
        }
        Instruction mapped = instr;
        for (int& q : mapped.qubits) q = pos[q];
        out.circuit.instructions.push_back(std::move(mapped));
    }
    out.final_mapping = pos;
    return out;
}

void verify_routed(const Circuit& original, const RoutedCircuit& routed,
                   const CouplingMap& coupling) {
    const int n = routed.circuit.num_qubits;
    const auto adj = undirected_adjacency(n, coupling);

    std::vector<int> pos(static_cast<std::size_t>(n));
    std::vector<int> token_at(static_cast<std::size_t>(n));
    std::iota(pos.begin(), pos.end(), 0);
    std::iota(token_at.begin(), token_at.end(), 0);

    std::size_t next_original = 0;
    for (std::size_t k = 0; k < routed.circuit.instructions.size(); ++k) {
        const Instruction& instr = routed.circuit.instructions[k];
        if (instr.qubits.size() == 2 && !instr.is_barrier() &&
            !coupled(adj, instr.qubits[0], instr.qubits[1]))
            raise(ErrorKind::RoutingInvalid,
                  "instruction " + std::to_string(k) + " acts on non-coupled pair (" +
                      std::to_string(instr.qubits[0]) + ", " + std::to_string(instr.qubits[1]) +
                      ")");
        if (instr.name == "swap" && instr.original_index < 0) {
            int u = instr.qubits[0], v = instr.qubits[1];
            int tu = token_at[u], tv = token_at[v];
            std::swap(token_at[u], token_at[v]);
            pos[tu] = v;
            pos[tv] = u;
            continue;
        }
        if (next_original >= original.instructions.size())
            raise(ErrorKind::RoutingInvalid,
                  "routed circuit has extra instruction at index " + std::to_string(k));
        const Instruction& ref = original.instructions[next_original];
        ++next_original;
        bool same = ref.name == instr.name && ref.params == instr.params &&
                    ref.clbits == instr.clbits && ref.qubits.size() == instr.qubits.size();
        if (same)
            for (std::size_t i = 0; i < ref.qubits.size(); ++i)
                if (pos[ref.qubits[i]] != instr.qubits[i]) same = false;
        if (!same)
            raise(ErrorKind::RoutingInvalid,
                  "routed instruction " + std::to_string(k) +
                      " does not match the original sequence under the tracked mapping");
    }
    if (next_original != original.instructions.size())
        raise(ErrorKind::RoutingInvalid, "routed circuit drops original instructions");
    if (pos != routed.final_mapping)
        raise(ErrorKind::RoutingInvalid, "final mapping does not match the replayed swaps");
}

}  // namespace modumap
