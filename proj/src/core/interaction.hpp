#pragma once

#include <vector>

#include "core/circuit.hpp"

namespace modumap {

struct WeightedEdge {
    int a, b;   // canonical, a < b
    double weight;
};

// Weighted undirected logical interaction graph. Weights are accumulated
// two-qubit interaction counts, optionally decayed by gamma^t where t is the
// global 0-based index of the two-qubit operation.
class InteractionGraph {
public:
    InteractionGraph() = default;

    // Test/tooling constructor. Canonicalizes pairs and sums duplicates;
    // zero-weight edges are dropped, other values are stored as given so
    // validators can inspect them.
    static InteractionGraph from_edges(int num_qubits, const std::vector<WeightedEdge>& edges,
                                       double gamma = 1.0);

    int num_qubits() const { return num_qubits_; }
    double gamma() const { return gamma_; }

    // 0 when the pair does not interact.
    double weight(int a, int b) const;

    const std::vector<WeightedEdge>& edges() const { return edges_; }
    const std::vector<std::pair<int, double>>& neighbors(int v) const { return adjacency_[v]; }

    double weighted_degree(int v) const;
    double total_weight() const;

    friend InteractionGraph extract_weights(const Circuit& c, double gamma);

private:
    int num_qubits_ = 0;
    double gamma_ = 1.0;
    std::vector<WeightedEdge> edges_;                         // sorted by (a, b)
    std::vector<std::vector<std::pair<int, double>>> adjacency_;

    void build_adjacency();
};

// Extracts edge weights from the circuit: pair (i,j) accumulates gamma^t for
// each of its two-qubit operations, t counting all two-qubit operations of
// the circuit from 0. gamma = 1 gives plain counts.
InteractionGraph extract_weights(const Circuit& c, double gamma = 1.0);

}  // namespace modumap
