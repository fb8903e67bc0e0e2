#include "core/interaction.hpp"

#include <algorithm>
#include <cmath>
#include <map>

#include "core/error.hpp"

namespace modumap {

InteractionGraph InteractionGraph::from_edges(int num_qubits,
                                              const std::vector<WeightedEdge>& edges,
                                              double gamma) {
    std::map<std::pair<int, int>, double> acc;
    for (const WeightedEdge& e : edges) {
        int a = std::min(e.a, e.b);
        int b = std::max(e.a, e.b);
        if (a < 0 || b >= num_qubits || a == b)
            raise(ErrorKind::InvalidIndex, "interaction edge (" + std::to_string(e.a) + ", " +
                                               std::to_string(e.b) + ") out of range");
        acc[{a, b}] += e.weight;
    }
    InteractionGraph g;
    g.num_qubits_ = num_qubits;
    g.gamma_ = gamma;
    for (const auto& [pair, w] : acc) {
        if (w == 0.0) continue;
        g.edges_.push_back({pair.first, pair.second, w});
    }
    g.build_adjacency();
    return g;
}

void InteractionGraph::build_adjacency() {
    adjacency_.assign(static_cast<std::size_t>(num_qubits_), {});
    for (const WeightedEdge& e : edges_) {
        adjacency_[e.a].push_back({e.b, e.weight});
        adjacency_[e.b].push_back({e.a, e.weight});
    }
}

double InteractionGraph::weight(int a, int b) const {
    if (a > b) std::swap(a, b);
    auto it = std::lower_bound(edges_.begin(), edges_.end(), std::make_pair(a, b),
                               [](const WeightedEdge& e, const std::pair<int, int>& key) {
                                   return std::make_pair(e.a, e.b) < key;
                               });
    if (it != edges_.end() && it->a == a && it->b == b) return it->weight;
    return 0.0;
}

double InteractionGraph::weighted_degree(int v) const {
    if (v < 0 || v >= num_qubits_)
        raise(ErrorKind::InvalidIndex, "qubit index " + std::to_string(v) + " out of range");
    double sum = 0.0;
    for (const auto& [u, w] : adjacency_[v]) {
        (void)u;
        sum += w;
    }
    return sum;
}

double InteractionGraph::total_weight() const {
    double sum = 0.0;
    for (const WeightedEdge& e : edges_) sum += e.weight;
    return sum;
}

InteractionGraph extract_weights(const Circuit& c, double gamma) {
    if (!(gamma > 0.0) || gamma > 1.0 || !std::isfinite(gamma))
        raise(ErrorKind::InvalidParameter,
              "gamma must be in (0, 1], got " + std::to_string(gamma));
    std::map<std::pair<int, int>, double> acc;
    long t = 0;
    double decay = 1.0;  // gamma^t, t counts two-qubit operations from 0
    for (const TwoQubitOp& op : two_qubit_ops(c)) {
        acc[{op.a, op.b}] += decay;
        ++t;
        decay = (gamma == 1.0) ? 1.0 : decay * gamma;
    }
    InteractionGraph g;
    g.num_qubits_ = c.num_qubits;
    g.gamma_ = gamma;
    for (const auto& [pair, w] : acc) g.edges_.push_back({pair.first, pair.second, w});
    g.build_adjacency();
    return g;
}

}  // namespace modumap
