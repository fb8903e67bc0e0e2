#pragma once

#include <vector>

#include "core/architecture.hpp"
#include "core/interaction.hpp"

namespace modumap {

enum class LayoutMode { TopK, Diverse };

// Injective logical -> physical map; feasibility means every logical qubit
// lands inside its partition's block.
struct Layout {
    std::vector<int> phys_of;
};

// s_i: total interaction weight qubit i sends across its QPU boundary.
std::vector<double> external_scores(const InteractionGraph& g, const Partition& pi);

// Puts up to P logical qubits of each QPU on communication positions
// (selected by external score; diverse mode adds a bonus for covering
// remote QPUs not yet served) and the rest on compute positions in
// ascending logical order.
Layout assign_layout(const Partition& pi, const InteractionGraph& g,
                     const ModularArchitecture& arch, LayoutMode mode);

// Injectivity, index range, and block feasibility; one distinct error each.
void validate_layout(const Layout& layout, const Partition& pi,
                     const ModularArchitecture& arch);

// Relabels logical operands to physical indices without reordering.
Circuit apply_layout(const Circuit& c, const Layout& layout, int num_physical);

}  // namespace modumap
