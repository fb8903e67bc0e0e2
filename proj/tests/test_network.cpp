#include <doctest.h>

#include <map>
#include <set>

#include "core/error.hpp"
#include "core/network.hpp"
#include "core/rng.hpp"
#include "oracle.hpp"

using namespace modumap;

namespace {

std::set<std::pair<int, int>> edge_set(const QpuGraph& g) {
    std::set<std::pair<int, int>> out;
    for (const auto& l : g.links()) out.insert({l.a, l.b});
    return out;
}

TrafficMatrix single_pair(int n, int a, int b, double w) {
    TrafficMatrix tm = TrafficMatrix::zeros(n);
    tm.at(a, b) = w;
    tm.at(b, a) = w;
    return tm;
}

}  // namespace

TEST_CASE("topology generators") {
    QpuGraph ring = build_qpu_graph(QpuTopologyKind::Ring, 4, {});
    CHECK(edge_set(ring) == std::set<std::pair<int, int>>{{0, 1}, {1, 2}, {2, 3}, {0, 3}});

    QpuGraph mesh = build_qpu_graph(QpuTopologyKind::Mesh, 3, {});
    CHECK(mesh.links().size() == 3);

    QpuGraph trivial = build_qpu_graph(QpuTopologyKind::Ring, 1, {});
    CHECK(trivial.links().empty());

    QpuGraph two = build_qpu_graph(QpuTopologyKind::Ring, 2, {});
    CHECK(two.links().size() == 1);

    QpuTopologyParams deg_params;
    deg_params.degree = 2;
    QpuGraph circulant = build_qpu_graph(QpuTopologyKind::DegreeBounded, 5, deg_params);
    CHECK(edge_set(circulant) ==
          std::set<std::pair<int, int>>{{0, 1}, {1, 2}, {2, 3}, {3, 4}, {0, 4}});
    deg_params.degree = 3;
    QpuGraph deg3 = build_qpu_graph(QpuTopologyKind::DegreeBounded, 6, deg_params);
    for (int v = 0; v < 6; ++v) CHECK(deg3.adjacency(v).size() <= 3);
    deg_params.degree = 6;
    CHECK_THROWS_AS(build_qpu_graph(QpuTopologyKind::DegreeBounded, 6, deg_params), Error);

    QpuTopologyParams clos_params;
    clos_params.mid_switches = 2;
    QpuGraph clos = build_qpu_graph(QpuTopologyKind::Clos, 4, clos_params);
    CHECK(clos.num_qpus() == 4);
    CHECK(clos.num_vertices() == 6);  // 4 leaves + 2 spines
    CHECK(clos.links().size() == 8);

    QpuTopologyParams ft_params;
    ft_params.levels = 2;
    QpuGraph ft = build_qpu_graph(QpuTopologyKind::FatTree, 4, ft_params);
    CHECK(ft.num_qpus() == 4);
    CHECK(ft.num_vertices() > 4);
    ft_params.levels = 0;
    CHECK_THROWS_AS(build_qpu_graph(QpuTopologyKind::FatTree, 4, ft_params), Error);
}

TEST_CASE("all_pairs_distances on the standard topologies") {
    QpuGraph ring = build_qpu_graph(QpuTopologyKind::Ring, 4, {});
    DistanceTable d = all_pairs_distances(ring);
    CHECK(d.at(0, 2) == 2);
    CHECK(d.at(0, 1) == 1);
    CHECK(d.at(3, 0) == 1);

    QpuGraph mesh = build_qpu_graph(QpuTopologyKind::Mesh, 4, {});
    DistanceTable dm = all_pairs_distances(mesh);
    for (int a = 0; a < 4; ++a)
        for (int b = 0; b < 4; ++b) CHECK(dm.at(a, b) == (a == b ? 0 : 1));

    // internal switch hops count toward the distance
    QpuTopologyParams clos_params;
    clos_params.mid_switches = 1;
    DistanceTable dc = all_pairs_distances(build_qpu_graph(QpuTopologyKind::Clos, 3, clos_params));
    CHECK(dc.at(0, 2) == 2);

    // a degree-1 circulant over an odd vertex count has no edges at all
    QpuTopologyParams lonely;
    lonely.degree = 1;
    DistanceTable dd =
        all_pairs_distances(build_qpu_graph(QpuTopologyKind::DegreeBounded, 3, lonely));
    CHECK(dd.at(0, 1) == DistanceTable::kUnreachable);
    CHECK_NOTHROW(validate_distance_table(dd));
}

TEST_CASE("distance tables are symmetric with zero diagonal and obey the triangle inequality") {
    Rng rng(5150);
    for (int trial = 0; trial < 20; ++trial) {
        QpuTopologyKind kind =
            std::vector<QpuTopologyKind>{QpuTopologyKind::Ring, QpuTopologyKind::Mesh,
                                         QpuTopologyKind::DegreeBounded,
                                         QpuTopologyKind::FatTree}[rng.uniform_int(0, 3)];
        int n = rng.uniform_int(2, 9);
        QpuTopologyParams params;
        params.degree = std::min(n - 1, 2 + rng.uniform_int(0, 2));
        params.levels = 1 + rng.uniform_int(0, 2);
        QpuGraph g = build_qpu_graph(kind, n, params);
        DistanceTable d = all_pairs_distances(g);
        validate_distance_table(d);
        for (int a = 0; a < n; ++a)
            for (int b = 0; b < n; ++b)
                for (int c = 0; c < n; ++c) {
                    if (!d.reachable(a, b) || !d.reachable(b, c)) continue;
                    REQUIRE(d.reachable(a, c));
                    CHECK(d.at(a, c) <= d.at(a, b) + d.at(b, c));
                }
    }
}

TEST_CASE("validate_distance_table rejects malformed tables") {
    DistanceTable bad;
    bad.num_qpus = 2;
    bad.dist = {0, 1, 2, 0};  // asymmetric
    CHECK_THROWS_AS(validate_distance_table(bad), Error);
    bad.dist = {0, -1, -1, 0};  // negative
    CHECK_THROWS_AS(validate_distance_table(bad), Error);
    bad.dist = {1, 1, 1, 0};  // nonzero diagonal
    CHECK_THROWS_AS(validate_distance_table(bad), Error);
    try {
        validate_distance_table(bad);
    } catch (const Error& e) {
        CHECK(e.kind() == ErrorKind::InvalidDistanceTable);
    }
}

TEST_CASE("traffic_matrix aggregates cut weights per QPU pair") {
    InteractionGraph g = InteractionGraph::from_edges(3, {{0, 1, 2.0}, {0, 2, 3.0}});
    TrafficMatrix same = traffic_matrix(g, {0, 0, 0}, 2);
    for (double v : same.t) CHECK(v == 0.0);

    TrafficMatrix split = traffic_matrix(g, {0, 1, 1}, 2);
    CHECK(split.at(0, 1) == doctest::Approx(5.0));
    CHECK(split.at(1, 0) == doctest::Approx(5.0));
    CHECK(split.at(0, 0) == 0.0);

    InteractionGraph pair = InteractionGraph::from_edges(2, {{0, 1, 2.0}});
    TrafficMatrix tm = traffic_matrix(pair, {0, 1}, 2);
    CHECK(tm.at(0, 1) == doctest::Approx(2.0));
}

TEST_CASE("validate_traffic_matrix rejects each malformed shape distinctly") {
    TrafficMatrix tm = TrafficMatrix::zeros(2);
    tm.at(0, 1) = 1.0;  // asymmetric
    CHECK_THROWS_WITH_AS(validate_traffic_matrix(tm), "traffic matrix is asymmetric", Error);
    tm = TrafficMatrix::zeros(2);
    tm.at(0, 1) = tm.at(1, 0) = -1.0;
    CHECK_THROWS_WITH_AS(validate_traffic_matrix(tm), "traffic matrix has negative entry", Error);
    tm = TrafficMatrix::zeros(2);
    tm.at(0, 1) = tm.at(1, 0) = std::numeric_limits<double>::infinity();
    CHECK_THROWS_WITH_AS(validate_traffic_matrix(tm), "traffic matrix has non-finite entry",
                         Error);
    tm = TrafficMatrix::zeros(2);
    tm.at(0, 0) = 1.0;
    CHECK_THROWS_WITH_AS(validate_traffic_matrix(tm), "traffic matrix has nonzero diagonal",
                         Error);
}

TEST_CASE("route_single_path uses the lexicographically smallest shortest path") {
    QpuGraph ring = build_qpu_graph(QpuTopologyKind::Ring, 4, {});
    DistanceTable dist = all_pairs_distances(ring);

    RouteResult adjacent = route_single_path(ring, dist, single_pair(4, 0, 1, 2.0));
    CHECK(adjacent.loads.load[ring.link_id(0, 1)] == doctest::Approx(2.0));
    CHECK(adjacent.loads.total() == doctest::Approx(2.0));

    // two shortest paths exist between 0 and 2; the oracle enumerates them
    // and picks the lexicographic minimum
    oracle::Graph og = oracle::from_qpu_graph(ring);
    auto expected = oracle::single_path_loads(og, {{{0, 2}, 1.0}});
    RouteResult r = route_single_path(ring, dist, single_pair(4, 0, 2, 1.0));
    CHECK(oracle::lex_min_path(og, 0, 2) == std::vector<int>{0, 1, 2});
    for (std::size_t id = 0; id < ring.links().size(); ++id) {
        auto key = std::make_pair(ring.links()[id].a, ring.links()[id].b);
        double want = expected.count(key) ? expected[key] : 0.0;
        CHECK(r.loads.load[id] == doctest::Approx(want));
    }

    RouteResult zero = route_single_path(ring, dist, TrafficMatrix::zeros(4));
    CHECK(zero.loads.total() == 0.0);
}

TEST_CASE("route_ecmp splits across equal-cost paths") {
    QpuGraph ring = build_qpu_graph(QpuTopologyKind::Ring, 4, {});
    oracle::Graph og = oracle::from_qpu_graph(ring);

    RouteResult r = route_ecmp(ring, single_pair(4, 0, 2, 2.0));
    auto expected = oracle::ecmp_loads(og, {{{0, 2}, 2.0}});
    for (std::size_t id = 0; id < ring.links().size(); ++id) {
        auto key = std::make_pair(ring.links()[id].a, ring.links()[id].b);
        CHECK(r.loads.load[id] == doctest::Approx(expected.at(key)));
        CHECK(r.loads.load[id] == doctest::Approx(1.0));  // each of the 4 edges carries 1.0
    }

    // unique shortest path: full traffic on the path edges
    QpuGraph line = build_qpu_graph(QpuTopologyKind::DegreeBounded, 3, {.degree = 2});
    // degree-2 circulant on 3 vertices is the triangle; use fat tree for a path
    QpuTopologyParams ft;
    ft.levels = 1;
    QpuGraph tree = build_qpu_graph(QpuTopologyKind::FatTree, 2, ft);
    RouteResult unique = route_ecmp(tree, single_pair(2, 0, 1, 1.0));
    CHECK(unique.loads.load[tree.link_id(0, 2)] == doctest::Approx(1.0));
    CHECK(unique.loads.load[tree.link_id(1, 2)] == doctest::Approx(1.0));
    (void)line;

    RouteResult adj = route_ecmp(ring, single_pair(4, 1, 2, 3.0));
    CHECK(adj.loads.load[ring.link_id(1, 2)] == doctest::Approx(3.0));
    CHECK(adj.loads.total() == doctest::Approx(3.0));
}

TEST_CASE("shortest-path DAG invariants") {
    Rng rng(31337);
    for (int trial = 0; trial < 30; ++trial) {
        QpuTopologyKind kind = std::vector<QpuTopologyKind>{
            QpuTopologyKind::Ring, QpuTopologyKind::Mesh, QpuTopologyKind::DegreeBounded,
            QpuTopologyKind::Clos}[rng.uniform_int(0, 3)];
        int n = rng.uniform_int(2, 8);
        QpuTopologyParams params;
        params.degree = std::min(n - 1, 2);
        params.mid_switches = 1 + rng.uniform_int(0, 2);
        QpuGraph g = build_qpu_graph(kind, n, params);
        int a = rng.uniform_int(0, n - 1);
        int b = rng.uniform_int(0, n - 1);
        if (a == b) continue;
        ShortestPathDag dag = build_shortest_path_dag(g, a, b);
        CHECK(dag.sigma[a] == 1.0);
        for (int v = 0; v < g.num_vertices(); ++v) {
            if (v == a || dag.dist_from_source[v] == ShortestPathDag::kUnreachableVertex)
                continue;
            double sum = 0.0;
            for (int u : dag.preds[v]) sum += dag.sigma[u];
            CHECK(dag.sigma[v] == doctest::Approx(sum));
        }
        // sigma(b) equals the number of enumerated shortest paths
        auto paths = oracle::all_shortest_paths(oracle::from_qpu_graph(g), a, b);
        if (!paths.empty())
            CHECK(dag.sigma[b] == doctest::Approx(static_cast<double>(paths.size())));
    }
}

TEST_CASE("ECMP conserves injected traffic (per-pair flow)") {
    Rng rng(777);
    for (int trial = 0; trial < 40; ++trial) {
        QpuTopologyKind kind = std::vector<QpuTopologyKind>{
            QpuTopologyKind::Ring, QpuTopologyKind::Mesh, QpuTopologyKind::DegreeBounded,
            QpuTopologyKind::FatTree}[rng.uniform_int(0, 3)];
        int n = rng.uniform_int(2, 10);
        QpuTopologyParams params;
        params.degree = std::min(n - 1, 2 + rng.uniform_int(0, 2));
        params.levels = 1 + rng.uniform_int(0, 2);
        QpuGraph g = build_qpu_graph(kind, n, params);
        DistanceTable d = all_pairs_distances(g);
        int a = rng.uniform_int(0, n - 1);
        int b = rng.uniform_int(0, n - 1);
        if (a == b || !d.reachable(a, b)) continue;
        double w = 0.5 + rng.uniform01() * 4.0;
        RouteResult r = route_ecmp(g, single_pair(n, a, b, w));
        // all load sits on source-incident edges exactly once
        double outflow = 0.0;
        for (const auto& [nbr, id] : g.adjacency(a)) {
            (void)nbr;
            outflow += r.loads.load[id];
        }
        CHECK(outflow == doctest::Approx(w).epsilon(1e-9));
        CHECK(r.loads.total() == doctest::Approx(w * d.at(a, b)).epsilon(1e-9));
    }
}

TEST_CASE("ECMP equals single-path routing when the shortest path is unique") {
    QpuTopologyParams ft;
    ft.levels = 3;
    QpuGraph tree = build_qpu_graph(QpuTopologyKind::FatTree, 6, ft);  // trees: unique paths
    DistanceTable dist = all_pairs_distances(tree);
    Rng rng(4242);
    TrafficMatrix tm = TrafficMatrix::zeros(6);
    for (int a = 0; a < 6; ++a)
        for (int b = a + 1; b < 6; ++b) {
            double w = rng.uniform01() * 3.0;
            tm.at(a, b) = w;
            tm.at(b, a) = w;
        }
    RouteResult ecmp = route_ecmp(tree, tm);
    RouteResult single = route_single_path(tree, dist, tm);
    for (std::size_t id = 0; id < tree.links().size(); ++id)
        CHECK(ecmp.loads.load[id] == doctest::Approx(single.loads.load[id]));
}

TEST_CASE("traffic between disconnected QPUs is reported, not routed") {
    QpuTopologyParams lonely;
    lonely.degree = 1;
    QpuGraph g = build_qpu_graph(QpuTopologyKind::DegreeBounded, 3, lonely);  // no edges
    DistanceTable dist = all_pairs_distances(g);
    RouteResult r = route_single_path(g, dist, single_pair(3, 0, 2, 1.0));
    REQUIRE(r.unroutable_pairs.size() == 1);
    CHECK(r.unroutable_pairs[0] == std::pair<int, int>{0, 2});
    RouteResult re = route_ecmp(g, single_pair(3, 0, 2, 1.0));
    CHECK(re.unroutable_pairs.size() == 1);
}

TEST_CASE("congestion_stats") {
    LinkLoads loads;
    loads.load = {1.0, 1.0, 1.0, 1.0};
    CongestionStats s = congestion_stats(loads);
    CHECK(s.max_load == 1.0);
    CHECK(s.sum_load == doctest::Approx(4.0));
    CHECK(s.sum_sq_load == doctest::Approx(4.0));

    CHECK(congestion_stats(LinkLoads{}).sum_load == 0.0);
    CHECK(congestion_stats(LinkLoads{}).max_load == 0.0);

    LinkLoads one;
    one.load = {3.0};
    CHECK(congestion_stats(one).sum_sq_load == doctest::Approx(9.0));
}
