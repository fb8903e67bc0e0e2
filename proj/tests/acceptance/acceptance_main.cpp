// Acceptance suite: one self-contained check per release criterion, each
// printed as a single PASS/FAIL line with its runtime. The binary exits
// nonzero if any criterion fails.

#include <chrono>
#include <cstdio>
#include <cstdlib>
#include <fstream>
#include <functional>
#include <iostream>
#include <limits>
#include <map>
#include <set>
#include <sstream>
#include <string>
#include <vector>

#include "core/distributed.hpp"
#include "core/error.hpp"
#include "core/pipeline.hpp"
#include "core/rng.hpp"
#include "core/routing.hpp"
#include "core/scheduler.hpp"
#include "../generators.hpp"
#include "../oracle.hpp"

#ifndef MODUMAP_CLI_PATH
#define MODUMAP_CLI_PATH "modumap"
#endif
#ifndef FIXTURE_DIR
#define FIXTURE_DIR "fixtures"
#endif

using namespace modumap;

namespace {

struct Check {
    bool ok = true;
    std::string detail;

    void require(bool condition, const std::string& message) {
        if (!condition && ok) {
            ok = false;
            detail = message;
        }
    }
};

InteractionGraph random_weights(Rng& rng, int n) {
    std::vector<WeightedEdge> edges;
    double p = n > 1 ? std::min(1.0, 6.0 / n) : 0.0;
    for (int a = 0; a < n; ++a)
        for (int b = a + 1; b < n; ++b)
            if (rng.uniform01() < p) edges.push_back({a, b, 0.1 + rng.uniform01() * 9.9});
    return InteractionGraph::from_edges(n, edges);
}

Circuit indexed(Circuit c) {
    for (std::size_t k = 0; k < c.instructions.size(); ++k)
        c.instructions[k].original_index = static_cast<long>(k);
    return c;
}

// --- criterion 1: per-QPU capacity invariant over all four partitioners ----

void check_capacity_invariant(Check& check) {
    Rng rng(101);
    for (int trial = 0; trial < 500; ++trial) {
        int n = rng.uniform_int(1, 64);
        int num_qpus = rng.uniform_int(1, 8);
        int capacity = (n + num_qpus - 1) / num_qpus + rng.uniform_int(0, 3);
        int ports = rng.uniform_int(0, 3);
        InteractionGraph g = random_weights(rng, n);
        QpuGraph qg = build_qpu_graph(
            trial % 2 ? QpuTopologyKind::Ring : QpuTopologyKind::Mesh, num_qpus, {});
        DistanceTable dist = all_pairs_distances(qg);
        ObjectiveParams params;
        params.routing_mode = trial % 3 ? RoutingMode::SinglePath : RoutingMode::Ecmp;
        SaParams sa;
        sa.cooling = 0.97;
        sa.steps = 60;
        sa.rng_seed = rng.next_u64();
        std::uint64_t seed = rng.next_u64();

        const Partition results[4] = {
            heavy_edge_partition(g, num_qpus, capacity),
            balanced_greedy_partition(g, num_qpus, capacity, 0.25, seed),
            tpccap_partition(g, qg, dist, num_qpus, capacity, ports, params, 0.25, seed),
            tpccap_sa_partition(g, qg, dist, num_qpus, capacity, ports, params, 0.25, seed, 20,
                                sa),
        };
        for (const Partition& pi : results) {
            std::vector<int> loads = partition_loads(pi, num_qpus);
            for (int load : loads)
                check.require(load <= capacity,
                              "capacity violated on trial " + std::to_string(trial));
            check.require(static_cast<int>(pi.size()) == n, "partition has wrong length");
        }
        if (!check.ok) return;
    }
}

// --- criterion 2: ECMP flow conservation ------------------------------------

void check_flow_conservation(Check& check) {
    Rng rng(202);
    const QpuTopologyKind kinds[4] = {QpuTopologyKind::Ring, QpuTopologyKind::Mesh,
                                      QpuTopologyKind::DegreeBounded, QpuTopologyKind::FatTree};
    for (int trial = 0; trial < 100; ++trial) {
        int n = rng.uniform_int(2, 10);
        QpuTopologyParams params;
        params.degree = std::min(n - 1, 2 + rng.uniform_int(0, 2));
        params.levels = 1 + rng.uniform_int(0, 2);
        QpuGraph qg = build_qpu_graph(kinds[trial % 4], n, params);
        DistanceTable dist = all_pairs_distances(qg);

        TrafficMatrix tm = TrafficMatrix::zeros(n);
        for (int a = 0; a < n; ++a)
            for (int b = a + 1; b < n; ++b) {
                if (rng.uniform01() < 0.3) continue;
                double w = rng.uniform01() * 5.0;
                tm.at(a, b) = w;
                tm.at(b, a) = w;
            }
        for (int a = 0; a < n; ++a)
            for (int b = a + 1; b < n; ++b) {
                double w = tm.at(a, b);
                if (w == 0.0 || !dist.reachable(a, b)) continue;
                TrafficMatrix single = TrafficMatrix::zeros(n);
                single.at(a, b) = w;
                single.at(b, a) = w;
                RouteResult r = route_ecmp(qg, single);
                check.require(r.unroutable_pairs.empty(), "connected pair marked unroutable");
                double outflow = 0.0;
                for (const auto& [nbr, id] : qg.adjacency(a)) {
                    (void)nbr;
                    outflow += r.loads.load[id];
                }
                check.require(std::abs(outflow - w) <= 1e-9,
                              "source outflow " + std::to_string(outflow) + " != injected " +
                                  std::to_string(w));
                double hop_weighted = r.loads.total();
                check.require(std::abs(hop_weighted - w * dist.at(a, b)) <= 1e-9,
                              "total load != traffic x distance");
                if (!check.ok) return;
            }
    }
}

// --- criterion 3: objective oracle equivalence over exhaustive partitions ---

void check_objective_oracle(Check& check) {
    Rng rng(303);
    for (int graph_index = 0; graph_index < 20; ++graph_index) {
        int n = rng.uniform_int(2, 8);
        InteractionGraph g = random_weights(rng, n);
        QpuGraph qg = build_qpu_graph(QpuTopologyKind::Mesh, 2, {});
        DistanceTable dist = all_pairs_distances(qg);
        ObjectiveParams params;
        params.alpha = 0.5 + rng.uniform01();
        params.beta = rng.uniform01() * 2.0;
        params.eta = rng.uniform01();
        params.routing_mode = graph_index % 2 ? RoutingMode::Ecmp : RoutingMode::SinglePath;
        int ports = rng.uniform_int(0, 2);
        oracle::Graph og = oracle::from_qpu_graph(qg);

        double exhaustive_min = std::numeric_limits<double>::infinity();
        for (int mask = 0; mask < (1 << n); ++mask) {
            Partition pi(n);
            for (int v = 0; v < n; ++v) pi[v] = (mask >> v) & 1;
            double got = objective(g, pi, qg, dist, ports, params).total;
            double want = oracle::evaluate(g, pi, og, ports, params).total;
            double scale = std::max({1.0, std::abs(got), std::abs(want)});
            check.require(std::abs(got - want) <= 1e-9 * scale,
                          "objective mismatch vs oracle: " + std::to_string(got) + " vs " +
                              std::to_string(want));
            exhaustive_min = std::min(exhaustive_min, want);
            if (!check.ok) return;
        }

        std::uint64_t seed = rng.next_u64();
        Partition greedy = balanced_greedy_partition(g, 2, n, 0.25, seed);
        Partition improved = tpccap_partition(g, qg, dist, 2, n, ports, params, 0.25, seed);
        double j_greedy = objective(g, greedy, qg, dist, ports, params).total;
        double j_improved = objective(g, improved, qg, dist, ports, params).total;
        check.require(j_improved >= exhaustive_min - 1e-9 * std::max(1.0, exhaustive_min),
                      "local search beat the exhaustive minimum");
        check.require(j_improved <= j_greedy + 1e-9 * std::max(1.0, j_greedy),
                      "local search worsened the greedy start");
    }
}

// --- criterion 4: extraction conservation ------------------------------------

void check_extraction_conservation(Check& check) {
    Rng rng(404);
    for (int trial = 0; trial < 200; ++trial) {
        ArchitectureConfig cfg = testgen::random_arch(rng, 2);
        ModularArchitecture arch =
            build_architecture(cfg, build_qpu_graph(QpuTopologyKind::Mesh, cfg.num_qpus, {}));
        Circuit mapped =
            indexed(testgen::random_circuit(rng, arch.num_physical(), rng.uniform_int(0, 60)));
        DistributedProgram dp = extract_distributed(mapped, arch);

        std::multiset<std::string> got, want;
        for (const Instruction& instr : mapped.instructions) {
            if (instr.is_barrier()) continue;
            std::string key = instr.name;
            for (int q : instr.qubits) key += "," + std::to_string(q);
            want.insert(key + "@" + std::to_string(instr.original_index));
        }
        long previous = -1;
        for (const RemoteEvent& e : dp.remote_events) {
            check.require(e.original_index > previous, "remote events out of order");
            previous = e.original_index;
            std::string key = e.name;
            for (int q : e.phys_operands) key += "," + std::to_string(q);
            got.insert(key + "@" + std::to_string(e.original_index));
            for (int q : e.endpoint_qpus) {
                int barriers = 0;
                for (const Instruction& instr : dp.locals[q].instructions)
                    if (instr.is_barrier() && instr.original_index == e.original_index)
                        ++barriers;
                check.require(barriers == 1, "expected exactly one barrier per endpoint");
            }
        }
        for (int q = 0; q < dp.num_qpus; ++q) {
            long last = -1;
            for (const Instruction& instr : dp.locals[q].instructions) {
                if (instr.is_barrier()) continue;
                check.require(instr.original_index > last, "per-QPU order not preserved");
                last = instr.original_index;
                std::string key = instr.name;
                for (int v : instr.qubits)
                    key += "," + std::to_string(dp.physical_index_of(q, v));
                got.insert(key + "@" + std::to_string(instr.original_index));
            }
        }
        check.require(got == want, "instruction multiset not conserved on trial " +
                                       std::to_string(trial));
        if (!check.ok) return;
    }
}

// --- criterion 5: routing validity -------------------------------------------

void check_routing_validity(Check& check) {
    // fixture: distance-2 operands insert exactly one swap
    Circuit fixture;
    fixture.num_qubits = 3;
    fixture.add_gate("cx", {0, 2}, {}, 0);
    CouplingMap line3{{0, 1}, {1, 0}, {1, 2}, {2, 1}};
    RoutedCircuit routed_fixture = route(fixture, line3);
    check.require(routed_fixture.swap_count == 1, "distance-2 fixture needs exactly 1 swap");

    Rng rng(505);
    for (int trial = 0; trial < 200; ++trial) {
        int kind = rng.uniform_int(0, 3);
        CouplingMap map;
        int n = 0;
        auto add_undirected = [&map](int a, int b) {
            map.push_back({a, b});
            map.push_back({b, a});
        };
        switch (kind) {
            case 0:
                n = rng.uniform_int(2, 9);
                for (int i = 0; i + 1 < n; ++i) add_undirected(i, i + 1);
                break;
            case 1:
                n = rng.uniform_int(3, 9);
                for (int i = 0; i + 1 < n; ++i) add_undirected(i, i + 1);
                add_undirected(0, n - 1);
                break;
            case 2:
                n = rng.uniform_int(2, 6);
                for (int a = 0; a < n; ++a)
                    for (int b = a + 1; b < n; ++b) add_undirected(a, b);
                break;
            default: {
                int rows = rng.uniform_int(2, 3), cols = rng.uniform_int(2, 3);
                n = rows * cols;
                for (int r = 0; r < rows; ++r)
                    for (int c = 0; c < cols; ++c) {
                        if (c + 1 < cols) add_undirected(r * cols + c, r * cols + c + 1);
                        if (r + 1 < rows) add_undirected(r * cols + c, (r + 1) * cols + c);
                    }
                break;
            }
        }
        Circuit c = indexed(testgen::random_circuit(rng, n, rng.uniform_int(1, 40)));
        RoutedCircuit routed = route(c, map);
        try {
            verify_routed(c, routed, map);
        } catch (const Error& e) {
            check.require(false, std::string("routed-equivalence failed: ") + e.what());
            return;
        }
    }
}

// --- criterion 6: schedule feasibility and cost formulas ---------------------

void check_schedule_feasibility(Check& check) {
    {
        QpuGraph qg = build_qpu_graph(QpuTopologyKind::Mesh, 2, {});
        DistanceTable dist = all_pairs_distances(qg);
        CostParams cp;
        cp.tau_e = 1.0;
        cp.tau_c = 2.0;
        cp.tau_r = 0.5;
        cp.rho = 0.0;
        check.require(remote_cost(0, 1, dist, cp) == 3.5, "remote_cost fixture must equal 3.5");
        CostParams local;
        local.tau_1 = 1.0;
        local.tau_2 = 2.0;
        local.tau_swap = 6.0;
        check.require(scalar_cost(2, 3, 1, 0, 0, local).c_local == 14.0,
                      "scalar_cost fixture must equal 14");
        check.require(scalar_cost(0, 0, 0, 0, 10, local).c_total == 0.1 * 10 * 2.0,
                      "depth term fixture must equal 2");
        check.require(scalar_cost(0, 0, 0, 4, 0, cp).c_remote == 4 * (1.0 + 2.0 + 0.5),
                      "remote scalar fixture mismatch");
    }

    Rng rng(606);
    for (int trial = 0; trial < 100; ++trial) {
        int num_qpus = rng.uniform_int(2, 4);
        int ports = rng.uniform_int(1, 2);
        QpuTopologyKind kind =
            std::vector<QpuTopologyKind>{QpuTopologyKind::Mesh, QpuTopologyKind::Ring,
                                         QpuTopologyKind::Switch}[rng.uniform_int(0, 2)];
        QpuTopologyParams params;
        if (kind == QpuTopologyKind::Switch && rng.coin())
            params.switch_pair_limit = rng.uniform_int(1, 3);
        QpuGraph qg = build_qpu_graph(kind, num_qpus, params);
        DistanceTable dist = all_pairs_distances(qg);
        ArchitectureConfig cfg;
        cfg.num_qpus = num_qpus;
        cfg.compute_per_qpu = rng.uniform_int(1, 2);
        cfg.comm_per_qpu = ports;
        cfg.local_topology = LocalTopology::Line;
        ModularArchitecture arch = build_architecture(cfg, qg);
        Circuit mapped =
            indexed(testgen::random_circuit(rng, arch.num_physical(), rng.uniform_int(1, 40)));
        DistributedProgram dp = route_locals(extract_distributed(mapped, arch), arch);
        ScheduleResult result = estimate_schedule(dp, arch, qg, dist, CostParams{});

        oracle::Graph og = oracle::from_qpu_graph(qg);
        long rounds_seen = 0;
        for (const LayerSchedule& ls : result.layers) {
            rounds_seen += static_cast<long>(ls.rounds.size());
            for (const Round& round : ls.rounds) {
                std::map<int, int> port_use;
                std::map<std::pair<int, int>, int> link_use;
                std::set<std::pair<int, int>> pairs;
                for (std::size_t idx : round.event_indices) {
                    const RemoteEvent& e = dp.remote_events[ls.layer.remote_events[idx]];
                    for (int q : e.endpoint_qpus) ++port_use[q];
                    for (std::size_t k = 1; k < e.endpoint_qpus.size(); ++k) {
                        int a = std::min(e.endpoint_qpus[0], e.endpoint_qpus[k]);
                        int b = std::max(e.endpoint_qpus[0], e.endpoint_qpus[k]);
                        pairs.insert({a, b});
                        auto path = oracle::lex_min_path(og, a, b);
                        for (std::size_t i = 0; i + 1 < path.size(); ++i)
                            ++link_use[{std::min(path[i], path[i + 1]),
                                        std::max(path[i], path[i + 1])}];
                    }
                }
                for (const auto& [q, used] : port_use)
                    check.require(used <= ports, "port limit violated in a packed round");
                for (const auto& [edge, used] : link_use) {
                    int id = qg.link_id(edge.first, edge.second);
                    check.require(id >= 0 && used <= qg.links()[id].capacity,
                                  "link capacity violated in a packed round");
                }
                if (qg.switch_pair_limit())
                    check.require(static_cast<int>(pairs.size()) <= *qg.switch_pair_limit(),
                                  "switch pair limit violated");
            }
        }
        check.require(rounds_seen == result.report.num_rounds, "round count mismatch");
        if (!check.ok) return;
    }
}

// --- criterion 7: CLI determinism on the fixture set -------------------------

int run_cli(const std::string& args, const std::string& out_path) {
    std::string cmd = std::string(MODUMAP_CLI_PATH) + " " + args + " --out " + out_path +
                      " 2>acceptance_cli_err.txt";
    return std::system(cmd.c_str());
}

std::string slurp(const std::string& path) {
    std::ifstream in(path, std::ios::binary);
    std::ostringstream buffer;
    buffer << in.rdbuf();
    return buffer.str();
}

void check_cli_determinism(Check& check) {
    struct Fixture {
        const char* circuit;
        const char* config;
        const char* mode;
    };
    const std::vector<Fixture> fixtures = {
        {"ghz6.qasm", "cfg_heavy_ring.json", "global"},
        {"ghz6.qasm", "cfg_heavy_ring.json", "distributed"},
        {"ladder8.qasm", "cfg_greedy_mesh.json", "global"},
        {"ladder8.qasm", "cfg_greedy_mesh.json", "distributed"},
        {"qft5.qasm", "cfg_tpccap_ring_ecmp.json", "global"},
        {"qft5.qasm", "cfg_tpccap_ring_ecmp.json", "distributed"},
        {"mixed12.qasm", "cfg_sa_switch.json", "global"},
        {"mixed12.qasm", "cfg_sa_switch.json", "distributed"},
        {"mixed12.qasm", "cfg_tpccap_fattree_diverse.json", "distributed"},
        {"ladder8.qasm", "cfg_sa_grid_clos.json", "distributed"},
        {"qft5.qasm", "cfg_heavy_degree.json", "distributed"},
        {"ghz6.qasm", "cfg_greedy_single.json", "global"},
    };
    const std::string dir = FIXTURE_DIR;
    for (std::size_t i = 0; i < fixtures.size(); ++i) {
        std::string args = std::string("compile ") + dir + "/" + fixtures[i].circuit + " " +
                           dir + "/" + fixtures[i].config + " --mode " + fixtures[i].mode;
        std::string out1 = "acceptance_run_a_" + std::to_string(i) + ".json";
        std::string out2 = "acceptance_run_b_" + std::to_string(i) + ".json";
        int rc1 = run_cli(args, out1);
        int rc2 = run_cli(args, out2);
        check.require(rc1 == 0 && rc2 == 0,
                      "fixture " + std::to_string(i) + " exited nonzero");
        if (!check.ok) return;
        std::string a = slurp(out1);
        std::string b = slurp(out2);
        check.require(!a.empty(), "fixture " + std::to_string(i) + " produced no output");
        check.require(a == b, "fixture " + std::to_string(i) + " is not byte-identical");
        if (!check.ok) return;
    }
}

// --- criterion 8: validation surfaces ----------------------------------------

void check_validation_surfaces(Check& check) {
    auto kind_of = [](const std::function<void()>& fn) -> ErrorKind {
        try {
            fn();
        } catch (const Error& e) {
            return e.kind();
        }
        return ErrorKind::Pipeline;
    };

    ErrorKind non_finite = kind_of([] {
        validate_partition_inputs(InteractionGraph::from_edges(
                                      2, {{0, 1, std::numeric_limits<double>::infinity()}}),
                                  2, 2);
    });
    check.require(non_finite == ErrorKind::NonFiniteWeight,
                  "non-finite weight must raise its own error");

    ErrorKind demand = kind_of([] {
        validate_partition_inputs(InteractionGraph::from_edges(5, {{0, 1, 1.0}}), 2, 2);
    });
    check.require(demand == ErrorKind::DemandExceedsCapacity,
                  "demand > capacity must raise its own error");

    ErrorKind asymmetric = kind_of([] {
        TrafficMatrix tm = TrafficMatrix::zeros(2);
        tm.at(0, 1) = 1.0;
        validate_traffic_matrix(tm);
    });
    check.require(asymmetric == ErrorKind::InvalidTrafficMatrix,
                  "asymmetric traffic matrix must raise its own error");

    ErrorKind infeasible_layout = kind_of([] {
        ArchitectureConfig cfg;
        cfg.num_qpus = 2;
        cfg.compute_per_qpu = 1;
        cfg.comm_per_qpu = 0;
        ModularArchitecture arch =
            build_architecture(cfg, build_qpu_graph(QpuTopologyKind::Mesh, 2, {}));
        Layout layout;
        layout.phys_of = {0, 1};  // qubit 1 belongs on QPU 1
        validate_layout(layout, {0, 0}, arch);
    });
    check.require(infeasible_layout == ErrorKind::LayoutQpuMismatch,
                  "infeasible layout must raise its own error");

    ErrorKind bad_distance = kind_of([] {
        DistanceTable bad;
        bad.num_qpus = 2;
        bad.dist = {0, -3, -3, 0};
        validate_distance_table(bad);
    });
    check.require(bad_distance == ErrorKind::InvalidDistanceTable,
                  "invalid distance table must raise its own error");

    const std::set<ErrorKind> kinds{non_finite, demand, asymmetric, infeasible_layout,
                                    bad_distance};
    check.require(kinds.size() == 5, "validation errors must be pairwise distinct");
}

struct Criterion {
    std::string name;
    double time_limit_seconds;
    std::function<void(Check&)> body;
};

}  // namespace

int main() {
    const std::vector<Criterion> criteria = {
        {"capacity-invariant", 60.0, check_capacity_invariant},
        {"ecmp-flow-conservation", 10.0, check_flow_conservation},
        {"objective-oracle-equivalence", 30.0, check_objective_oracle},
        {"extraction-conservation", 10.0, check_extraction_conservation},
        {"routing-validity", 20.0, check_routing_validity},
        {"schedule-feasibility", 20.0, check_schedule_feasibility},
        {"cli-determinism", 120.0, check_cli_determinism},
        {"validation-surfaces", 10.0, check_validation_surfaces},
    };

    int failures = 0;
    for (std::size_t i = 0; i < criteria.size(); ++i) {
        Check check;
        auto start = std::chrono::steady_clock::now();
        try {
            criteria[i].body(check);
        } catch (const std::exception& e) {
            check.require(false, std::string("unexpected exception: ") + e.what());
        }
        double elapsed =
            std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
        check.require(elapsed < criteria[i].time_limit_seconds,
                      "runtime " + std::to_string(elapsed) + "s over the " +
                          std::to_string(criteria[i].time_limit_seconds) + "s limit");
        if (check.ok) {
            std::printf("PASS  %zu %-32s (%.2fs)\n", i + 1, criteria[i].name.c_str(), elapsed);
        } else {
            std::printf("FAIL  %zu %-32s (%.2fs): %s\n", i + 1, criteria[i].name.c_str(),
                        elapsed, check.detail.c_str());
            ++failures;
        }
    }
    return failures == 0 ? 0 : 1;
}
