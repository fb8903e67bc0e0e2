#pragma once

#include <optional>
#include <string>

#include "core/config.hpp"
#include "core/distributed.hpp"
#include "core/layout.hpp"
#include "core/routing.hpp"
#include "core/scheduler.hpp"

#include <json.hpp>

namespace modumap {

// Everything one compilation produced. Serialized as canonical JSON so that
// identical inputs and seed yield byte-identical reports.
struct CompilationResult {
    std::string mode;  // "global" or "distributed"
    int num_logical_qubits = 0;
    int num_clbits = 0;
    long num_instructions = 0;
    long num_two_qubit_ops = 0;

    Partition partition;
    PartitionerAlgorithm algorithm = PartitionerAlgorithm::Tpccap;
    ObjectiveBreakdown objective;
    double cut = 0.0;
    std::vector<int> boundary;
    TrafficMatrix traffic;
    std::vector<QpuLink> links;
    LinkLoads link_loads;

    Layout layout;

    std::optional<RoutedCircuit> global_routed;       // global mode
    std::optional<DistributedProgram> program;        // distributed mode, locals routed
    std::optional<ScheduleReport> schedule;           // distributed mode

    GateCounts counts;
    long depth = 0;
    long n_remote = 0;
    ScalarCost costs;

    RunConfig config;
    std::optional<long> resolved_sa_steps;
};

// Stable serialization: object keys sorted, floats printed with 12
// significant digits, no locale dependence.
std::string canonical_dump(const nlohmann::json& j);

nlohmann::json report_json(const CompilationResult& result);

nlohmann::json schedule_json(const ScheduleReport& report);

std::string instruction_text(const Instruction& instr);

}  // namespace modumap
