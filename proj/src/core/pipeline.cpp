#include "core/pipeline.hpp"

#include "core/error.hpp"
#include "core/rng.hpp"

namespace modumap {

namespace {

struct Stage {
    const Circuit& circuit;
    const RunConfig& cfg;
    InteractionGraph weights;
    QpuGraph qpu_graph;
    DistanceTable distances;
    ModularArchitecture arch;
    Partition partition;
    std::optional<long> resolved_sa_steps;
};

Partition run_partitioner(Stage& s) {
    const RunConfig& cfg = s.cfg;
    const int N = cfg.arch.num_qpus;
    const int K = cfg.arch.block_size();
    const int P = cfg.arch.comm_per_qpu;
    switch (cfg.algorithm) {
        case PartitionerAlgorithm::HeavyEdge:
            return heavy_edge_partition(s.weights, N, K);
        case PartitionerAlgorithm::BalancedGreedy:
            return balanced_greedy_partition(s.weights, N, K, cfg.lambda, cfg.seed,
                                             cfg.pass_limit);
        case PartitionerAlgorithm::Tpccap:
            return tpccap_partition(s.weights, s.qpu_graph, s.distances, N, K, P, cfg.objective,
                                    cfg.lambda, cfg.seed, cfg.pass_limit);
        case PartitionerAlgorithm::TpccapSa: {
            SaParams sa;
            sa.initial_temp = cfg.sa_initial_temp.value_or(0.0);  // 0 = auto schedule
            sa.cooling = cfg.sa_cooling;
            sa.steps = cfg.sa_steps.value_or(200L * s.circuit.num_qubits);
            sa.rng_seed = mix_seed(cfg.seed, 2);
            s.resolved_sa_steps = sa.steps;
            return tpccap_sa_partition(s.weights, s.qpu_graph, s.distances, N, K, P,
                                       cfg.objective, cfg.lambda, cfg.seed, cfg.pass_limit, sa);
        }
    }
    raise(ErrorKind::Config, "unknown partitioner algorithm");
}

Stage prepare_stage(const Circuit& c, const RunConfig& cfg) {
    Stage s{c, cfg, {}, {}, {}, {}, {}, std::nullopt};
    s.weights = extract_weights(c, cfg.gamma);
    validate_partition_inputs(s.weights, cfg.arch.num_qpus, cfg.arch.block_size());
    s.qpu_graph = build_qpu_graph(cfg.qpu_topology, cfg.arch.num_qpus, cfg.qpu_params);
    s.distances = all_pairs_distances(s.qpu_graph);
    s.arch = build_architecture(cfg.arch, s.qpu_graph);
    s.partition = run_partitioner(s);
    return s;
}

CompilationResult base_result(const Stage& s, const std::string& mode) {
    CompilationResult r;
    r.mode = mode;
    r.config = s.cfg;
    r.resolved_sa_steps = s.resolved_sa_steps;
    r.algorithm = s.cfg.algorithm;
    r.num_logical_qubits = s.circuit.num_qubits;
    r.num_clbits = s.circuit.num_clbits;
    r.num_instructions = static_cast<long>(s.circuit.instructions.size());
    r.num_two_qubit_ops = static_cast<long>(two_qubit_ops(s.circuit).size());

    r.partition = s.partition;
    r.objective = objective(s.weights, s.partition, s.qpu_graph, s.distances,
                            s.cfg.arch.comm_per_qpu, s.cfg.objective);
    r.cut = cut_weight(s.weights, s.partition);
    r.boundary = boundary_counts(s.weights, s.partition, s.cfg.arch.num_qpus);
    r.traffic = traffic_matrix(s.weights, s.partition, s.cfg.arch.num_qpus);
    r.links = s.qpu_graph.links();
    RouteResult routed = s.cfg.objective.routing_mode == RoutingMode::SinglePath
                             ? route_single_path(s.qpu_graph, s.distances, r.traffic)
                             : route_ecmp(s.qpu_graph, r.traffic);
    r.link_loads = routed.loads;
    return r;
}

}  // namespace

CompilationResult compile_global(const Circuit& c, const RunConfig& cfg) {
    Stage s = prepare_stage(c, cfg);
    CompilationResult r = base_result(s, "global");

    r.layout = assign_layout(s.partition, s.weights, s.arch, cfg.layout_mode);
    Circuit mapped = apply_layout(c, r.layout, s.arch.num_physical());
    RoutedCircuit routed = route(mapped, s.arch.coupling_edges());

    r.counts = gate_counts(routed.circuit);
    r.depth = circuit_depth(routed.circuit);
    r.n_remote = 0;  // monolithic routing hides remote traffic as swaps
    r.costs = scalar_cost(r.counts.n1, r.counts.n2, r.counts.n_swap, 0, r.depth, cfg.cost);
    r.global_routed = std::move(routed);
    return r;
}

CompilationResult compile_distributed(const Circuit& c, const RunConfig& cfg) {
    Stage s = prepare_stage(c, cfg);
    CompilationResult r = base_result(s, "distributed");

    r.layout = assign_layout(s.partition, s.weights, s.arch, cfg.layout_mode);
    Circuit mapped = apply_layout(c, r.layout, s.arch.num_physical());
    DistributedProgram dp = route_locals(extract_distributed(mapped, s.arch), s.arch);
    ScheduleResult schedule = estimate_schedule(dp, s.arch, s.qpu_graph, s.distances, cfg.cost);

    GateCounts counts;
    for (const Circuit& local : dp.locals) {
        GateCounts lc = gate_counts(local);
        counts.n1 += lc.n1;
        counts.n2 += lc.n2;
        counts.n_swap += lc.n_swap;
    }
    r.counts = counts;
    r.depth = circuit_depth(mapped);
    r.n_remote = remote_count(dp);
    r.costs =
        scalar_cost(counts.n1, counts.n2, counts.n_swap, r.n_remote, r.depth, cfg.cost);
    r.schedule = schedule.report;
    r.program = std::move(dp);
    return r;
}

CompilationResult run_compile(const Circuit& c, const RunConfig& cfg, const std::string& mode) {
    if (mode == "global") return compile_global(c, cfg);
    if (mode == "distributed") return compile_distributed(c, cfg);
    raise(ErrorKind::Config, "mode must be 'global' or 'distributed', got '" + mode + "'");
}

CompilationResult run_partition_stage(const Circuit& c, const RunConfig& cfg) {
    Stage s = prepare_stage(c, cfg);
    CompilationResult r = base_result(s, "partition");
    r.layout.phys_of.clear();
    return r;
}

}  // namespace modumap
