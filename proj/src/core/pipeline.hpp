#pragma once

#include <string>

#include "core/report.hpp"

namespace modumap {

// Full-coupling-map path: partition, layout, route over the whole machine.
// Remote interactions become ordinary routed SWAP traffic.
CompilationResult compile_global(const Circuit& c, const RunConfig& cfg);

// Distributed path: partition, layout, remote-event extraction, local-only
// routing, topology-aware schedule estimation.
CompilationResult compile_distributed(const Circuit& c, const RunConfig& cfg);

// mode is "global" or "distributed".
CompilationResult run_compile(const Circuit& c, const RunConfig& cfg, const std::string& mode);

// Stage-level entry: weight extraction + partitioner + objective only.
CompilationResult run_partition_stage(const Circuit& c, const RunConfig& cfg);

}  // namespace modumap
