#pragma once

#include <vector>

#include "core/circuit.hpp"

namespace modumap {

// Directed coupling edges over the circuit's qubit index space.
using CouplingMap = std::vector<std::pair<int, int>>;

struct RoutedCircuit {
    Circuit circuit;          // every 2-qubit gate acts on a coupled pair
    int swap_count = 0;       // inserted swaps (original_index == -1)
    std::vector<int> final_mapping;  // original position -> final position
};

// Greedy SWAP insertion: instructions are processed in order; when a gate's
// operands sit at undirected distance d > 1, d-1 swaps move the operand with
// the lower current index along the lexicographically smallest shortest path
// toward the other. Gates may use a coupling edge in either direction.
RoutedCircuit route(const Circuit& c, const CouplingMap& coupling);

// Checks operand adjacency of every 2-qubit instruction and replays the
// routed circuit against the original: deleting inserted swaps and applying
// the tracked mapping must reproduce the original gate sequence. Inserted
// swaps are identified by original_index < 0, so the original circuit's
// instructions must carry nonnegative original_index values.
void verify_routed(const Circuit& original, const RoutedCircuit& routed,
                   const CouplingMap& coupling);

}  // namespace modumap
