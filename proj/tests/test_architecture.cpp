#include <doctest.h>

#include <algorithm>
#include <set>

#include "core/architecture.hpp"
#include "core/error.hpp"
#include "core/rng.hpp"

using namespace modumap;

namespace {

ModularArchitecture make(int n, int c, int p, LocalTopology topo, QpuTopologyKind qkind,
                         int rows = 0, int cols = 0) {
    ArchitectureConfig cfg;
    cfg.num_qpus = n;
    cfg.compute_per_qpu = c;
    cfg.comm_per_qpu = p;
    cfg.local_topology = topo;
    cfg.grid_rows = rows;
    cfg.grid_cols = cols;
    return build_architecture(cfg, build_qpu_graph(qkind, n, {}));
}

std::set<std::pair<int, int>> edges_of(const ModularArchitecture& arch) {
    return {arch.coupling_edges().begin(), arch.coupling_edges().end()};
}

}  // namespace

TEST_CASE("line blocks carry the expected directed edges") {
    ModularArchitecture arch = make(2, 2, 1, LocalTopology::Line, QpuTopologyKind::Mesh);
    CHECK(arch.block_size() == 3);
    CHECK(arch.num_physical() == 6);
    CHECK(arch.block_range(0) == std::pair<int, int>{0, 3});
    auto edges = edges_of(arch);
    for (auto e : std::vector<std::pair<int, int>>{{0, 1}, {1, 0}, {1, 2}, {2, 1}})
        CHECK(edges.count(e));
    // block 1 offset copy
    for (auto e : std::vector<std::pair<int, int>>{{3, 4}, {4, 3}, {4, 5}, {5, 4}})
        CHECK(edges.count(e));
}

TEST_CASE("a single clique block has n*(n-1) directed edges") {
    ModularArchitecture arch = make(1, 3, 0, LocalTopology::Clique, QpuTopologyKind::Mesh);
    CHECK(arch.coupling_edges().size() == 6);
}

TEST_CASE("qpu_of implements the block quotient") {
    ModularArchitecture arch = make(2, 4, 2, LocalTopology::Line, QpuTopologyKind::Mesh);
    CHECK(arch.block_size() == 6);
    CHECK(arch.qpu_of(0) == 0);
    CHECK(arch.qpu_of(5) == 0);
    CHECK(arch.qpu_of(6) == 1);
    CHECK(arch.qpu_of(7) == 1);
    CHECK_THROWS_AS(arch.qpu_of(12), Error);
    CHECK_THROWS_AS(arch.qpu_of(-1), Error);
}

TEST_CASE("local_coupling restricts to the block") {
    ModularArchitecture arch = make(2, 2, 1, LocalTopology::Line, QpuTopologyKind::Mesh);
    auto local = arch.local_coupling(1);
    std::set<std::pair<int, int>> got(local.begin(), local.end());
    CHECK(got == std::set<std::pair<int, int>>{{3, 4}, {4, 3}, {4, 5}, {5, 4}});

    ModularArchitecture pair = make(1, 2, 0, LocalTopology::Clique, QpuTopologyKind::Mesh);
    auto tiny = pair.local_coupling(0);
    CHECK(tiny.size() == 2);

    ModularArchitecture solo = make(2, 1, 0, LocalTopology::Line, QpuTopologyKind::Mesh);
    CHECK(solo.local_coupling(0).empty());  // B = 1
}

TEST_CASE("ring and grid local topologies") {
    ModularArchitecture ring = make(1, 4, 0, LocalTopology::Ring, QpuTopologyKind::Mesh);
    auto edges = edges_of(ring);
    CHECK(edges.count({0, 3}));
    CHECK(edges.count({3, 0}));
    CHECK(ring.coupling_edges().size() == 8);

    ModularArchitecture grid = make(1, 4, 2, LocalTopology::Grid, QpuTopologyKind::Mesh, 2, 3);
    auto ge = edges_of(grid);
    CHECK(ge.count({0, 1}));
    CHECK(ge.count({0, 3}));
    CHECK(!ge.count({2, 3}));  // row-major: 2 and 3 are on different rows
    CHECK(grid.coupling_edges().size() == 2 * 7);  // 2x3 grid has 7 undirected links

    ArchitectureConfig bad;
    bad.num_qpus = 1;
    bad.compute_per_qpu = 4;
    bad.comm_per_qpu = 0;
    bad.local_topology = LocalTopology::Grid;
    bad.grid_rows = 2;
    bad.grid_cols = 3;
    CHECK_THROWS_AS(build_architecture(bad, build_qpu_graph(QpuTopologyKind::Mesh, 1, {})),
                    Error);
}

TEST_CASE("communication qubits are the block tails and carry the inter-QPU links") {
    ModularArchitecture arch = make(3, 2, 2, LocalTopology::Line, QpuTopologyKind::Ring);
    CHECK(arch.comm_qubits(0) == std::vector<int>{2, 3});
    CHECK(arch.comm_qubits(1) == std::vector<int>{6, 7});
    CHECK(arch.is_comm(2));
    CHECK(!arch.is_comm(1));
    for (const auto& [u, v] : arch.coupling_edges()) {
        if (arch.qpu_of(u) == arch.qpu_of(v)) continue;
        CHECK(arch.is_comm(u));
        CHECK(arch.is_comm(v));
    }
}

TEST_CASE("intra-block links appear in both directions and blocks cover all indices") {
    Rng rng(12);
    for (int trial = 0; trial < 20; ++trial) {
        int n = rng.uniform_int(1, 4);
        int c = rng.uniform_int(1, 4);
        int p = rng.uniform_int(0, 2);
        LocalTopology topo = std::vector<LocalTopology>{
            LocalTopology::Clique, LocalTopology::Line, LocalTopology::Ring}[rng.uniform_int(0, 2)];
        QpuTopologyKind qkind = std::vector<QpuTopologyKind>{
            QpuTopologyKind::Mesh, QpuTopologyKind::Ring, QpuTopologyKind::Switch}[rng.uniform_int(0, 2)];
        ModularArchitecture arch = make(n, c, p, topo, qkind);
        auto edges = edges_of(arch);
        for (const auto& [u, v] : edges)
            if (arch.qpu_of(u) == arch.qpu_of(v)) CHECK(edges.count({v, u}));
        // blocks partition the physical index range
        std::set<int> seen;
        for (int q = 0; q < n; ++q) {
            auto [first, last] = arch.block_range(q);
            for (int pview = first; pview < last; ++pview) {
                CHECK(!seen.count(pview));
                seen.insert(pview);
                CHECK(arch.qpu_of(pview) == q);
            }
        }
        CHECK(static_cast<int>(seen.size()) == arch.num_physical());
        // every block's local coupling is connected when B >= 2
        if (arch.block_size() >= 2) {
            auto local = arch.local_coupling(0);
            std::vector<std::set<int>> adj(arch.block_size());
            for (auto [u, v] : local) adj[u].insert(v);
            std::set<int> reach{0};
            std::vector<int> stack{0};
            while (!stack.empty()) {
                int x = stack.back();
                stack.pop_back();
                for (int y : adj[x])
                    if (!reach.count(y)) {
                        reach.insert(y);
                        stack.push_back(y);
                    }
            }
            CHECK(static_cast<int>(reach.size()) == arch.block_size());
        }
    }
}

TEST_CASE("inter-QPU links only exist with communication qubits") {
    ModularArchitecture no_comm = make(3, 2, 0, LocalTopology::Line, QpuTopologyKind::Mesh);
    for (const auto& [u, v] : no_comm.coupling_edges())
        CHECK(no_comm.qpu_of(u) == no_comm.qpu_of(v));
}
