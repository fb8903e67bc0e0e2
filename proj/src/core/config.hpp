#pragma once

#include <cstdint>
#include <optional>
#include <string>

#include "core/architecture.hpp"
#include "core/layout.hpp"
#include "core/partition.hpp"
#include "core/scheduler.hpp"

#include <json.hpp>

namespace modumap {

enum class PartitionerAlgorithm { HeavyEdge, BalancedGreedy, Tpccap, TpccapSa };

std::string to_string(PartitionerAlgorithm algorithm);
PartitionerAlgorithm parse_algorithm(const std::string& name);

// Effective run configuration with every default materialized. Loaded from a
// single JSON document; unknown keys and out-of-range values are rejected
// with path-qualified messages.
struct RunConfig {
    ArchitectureConfig arch;
    QpuTopologyKind qpu_topology = QpuTopologyKind::Mesh;
    QpuTopologyParams qpu_params;

    PartitionerAlgorithm algorithm = PartitionerAlgorithm::Tpccap;
    ObjectiveParams objective;
    double lambda = 0.25;
    std::uint64_t seed = 0;
    int pass_limit = 20;
    std::optional<double> sa_initial_temp;  // nullopt: max(1, J(start)/10)
    double sa_cooling = 0.995;
    std::optional<long> sa_steps;           // nullopt: 200 * n

    LayoutMode layout_mode = LayoutMode::TopK;

    CostParams cost;
    double gamma = 1.0;
};

RunConfig load_run_config(const std::string& json_text);

// Full parameter echo for the report; auto-resolved SA fields keep their
// resolved values when provided.
nlohmann::json effective_config_json(const RunConfig& cfg, std::optional<long> resolved_sa_steps);

}  // namespace modumap
