#include "core/network.hpp"

#include <algorithm>
#include <cmath>
#include <deque>
#include <map>

#include "core/error.hpp"
#include "core/interaction.hpp"

namespace modumap {

QpuGraph::QpuGraph(QpuTopologyKind kind, int num_qpus, int num_vertices,
                   std::vector<QpuLink> links, const QpuTopologyParams& params)
    : kind_(kind), num_qpus_(num_qpus), num_vertices_(num_vertices), links_(std::move(links)) {
    if (kind == QpuTopologyKind::Switch) {
        switch_pair_limit_ = params.switch_pair_limit;
        switch_reconfig_delay_ = params.switch_reconfig_delay;
    }
    for (QpuLink& l : links_) {
        if (l.a > l.b) std::swap(l.a, l.b);
        if (l.a == l.b || l.a < 0 || l.b >= num_vertices_)
            raise(ErrorKind::InvalidIndex, "invalid QPU link endpoints");
        if (!(l.capacity > 0.0) || !std::isfinite(l.capacity))
            raise(ErrorKind::InvalidParameter, "link capacity must be positive and finite");
    }
    std::sort(links_.begin(), links_.end(),
              [](const QpuLink& x, const QpuLink& y) { return std::tie(x.a, x.b) < std::tie(y.a, y.b); });
    adjacency_.assign(static_cast<std::size_t>(num_vertices_), {});
    for (std::size_t id = 0; id < links_.size(); ++id) {
        adjacency_[links_[id].a].push_back({links_[id].b, static_cast<int>(id)});
        adjacency_[links_[id].b].push_back({links_[id].a, static_cast<int>(id)});
    }
    for (auto& nbrs : adjacency_) std::sort(nbrs.begin(), nbrs.end());
}

int QpuGraph::link_id(int a, int b) const {
    if (a < 0 || b < 0 || a >= num_vertices_ || b >= num_vertices_) return -1;
    for (const auto& [nbr, id] : adjacency_[a])
        if (nbr == b) return id;
    return -1;
}

QpuGraph build_qpu_graph(QpuTopologyKind kind, int num_qpus, const QpuTopologyParams& params) {
    if (num_qpus < 1) raise(ErrorKind::InvalidParameter, "QPU count must be >= 1");
    const double cap = params.link_capacity;
    if (!(cap > 0.0) || !std::isfinite(cap))
        raise(ErrorKind::InvalidParameter, "link capacity must be positive and finite");
    std::vector<QpuLink> links;
    int num_vertices = num_qpus;

    switch (kind) {
        case QpuTopologyKind::Switch:
        case QpuTopologyKind::Mesh:
            if (kind == QpuTopologyKind::Switch && params.switch_pair_limit &&
                *params.switch_pair_limit < 1)
                raise(ErrorKind::InvalidParameter, "switch pair limit must be >= 1");
            for (int a = 0; a < num_qpus; ++a)
                for (int b = a + 1; b < num_qpus; ++b) links.push_back({a, b, cap});
            break;
        case QpuTopologyKind::Ring:
            if (num_qpus == 2) {
                links.push_back({0, 1, cap});
            } else if (num_qpus >= 3) {
                for (int a = 0; a < num_qpus; ++a) links.push_back({a, (a + 1) % num_qpus, cap});
            }
            break;
        case QpuTopologyKind::DegreeBounded: {
            int k = params.degree;
            if (k < 1 || k >= num_qpus)
                raise(ErrorKind::InvalidParameter,
                      "degree bound must satisfy 1 <= k < N, got k=" + std::to_string(k));
            // circulant graph: offsets 1..k/2, plus the antipodal matching
            // when k is odd and N even
            for (int off = 1; off <= k / 2; ++off)
                for (int a = 0; a < num_qpus; ++a) {
                    int b = (a + off) % num_qpus;
                    if (a < b) links.push_back({a, b, cap});
                    else if (off * 2 != num_qpus || a < num_qpus / 2)
                        links.push_back({std::min(a, b), std::max(a, b), cap});
                }
            if (k % 2 == 1 && num_qpus % 2 == 0) {
                int half = num_qpus / 2;
                for (int a = 0; a < half; ++a) links.push_back({a, a + half, cap});
            }
            // dedupe offsets that wrapped onto the same undirected pair
            std::sort(links.begin(), links.end(), [](const QpuLink& x, const QpuLink& y) {
                return std::tie(x.a, x.b) < std::tie(y.a, y.b);
            });
            links.erase(std::unique(links.begin(), links.end(),
                                    [](const QpuLink& x, const QpuLink& y) {
                                        return x.a == y.a && x.b == y.b;
                                    }),
                        links.end());
            break;
        }
        case QpuTopologyKind::Clos: {
            int m = params.mid_switches;
            if (m < 1) raise(ErrorKind::InvalidParameter, "clos spine count must be >= 1");
            num_vertices = num_qpus + m;
            for (int s = 0; s < m; ++s)
                for (int leaf = 0; leaf < num_qpus; ++leaf)
                    links.push_back({leaf, num_qpus + s, cap});
            break;
        }
        case QpuTopologyKind::FatTree: {
            int levels = params.levels;
            if (levels < 1) raise(ErrorKind::InvalidParameter, "fat-tree levels must be >= 1");
            // binary aggregation: each level pairs consecutive nodes of the
            // level below under a new switch; a final root joins any leftover
            // top nodes so the graph is connected
            std::vector<int> below(static_cast<std::size_t>(num_qpus));
            for (int i = 0; i < num_qpus; ++i) below[i] = i;
            int next_vertex = num_qpus;
            for (int level = 0; level < levels && below.size() > 1; ++level) {
                std::vector<int> above;
                for (std::size_t i = 0; i < below.size(); i += 2) {
                    int sw = next_vertex++;
                    links.push_back({below[i], sw, cap});
                    if (i + 1 < below.size()) links.push_back({below[i + 1], sw, cap});
                    above.push_back(sw);
                }
                below = std::move(above);
            }
            if (below.size() > 1) {
                int root = next_vertex++;
                for (int v : below) links.push_back({v, root, cap});
            }
            num_vertices = next_vertex;
            break;
        }
    }
    return QpuGraph(kind, num_qpus, num_vertices, std::move(links), params);
}

namespace {

// BFS hop distances from src over the whole vertex set (switches included).
std::vector<int> bfs_distances(const QpuGraph& g, int src) {
    std::vector<int> dist(static_cast<std::size_t>(g.num_vertices()),
                          DistanceTable::kUnreachable);
    std::deque<int> queue;
    dist[src] = 0;
    queue.push_back(src);
    while (!queue.empty()) {
        int v = queue.front();
        queue.pop_front();
        for (const auto& [u, id] : g.adjacency(v)) {
            (void)id;
            if (dist[u] != DistanceTable::kUnreachable) continue;
            dist[u] = dist[v] + 1;
            queue.push_back(u);
        }
    }
    return dist;
}

}  // namespace

DistanceTable all_pairs_distances(const QpuGraph& g) {
    DistanceTable table;
    table.num_qpus = g.num_qpus();
    table.dist.assign(static_cast<std::size_t>(g.num_qpus()) * g.num_qpus(),
                      DistanceTable::kUnreachable);
    for (int a = 0; a < g.num_qpus(); ++a) {
        std::vector<int> d = bfs_distances(g, a);
        for (int b = 0; b < g.num_qpus(); ++b) table.at(a, b) = d[b];
    }
    return table;
}

void validate_distance_table(const DistanceTable& dist) {
    int n = dist.num_qpus;
    if (n < 0 || dist.dist.size() != static_cast<std::size_t>(n) * n)
        raise(ErrorKind::InvalidDistanceTable, "distance table has wrong shape");
    for (int a = 0; a < n; ++a) {
        if (dist.at(a, a) != 0)
            raise(ErrorKind::InvalidDistanceTable, "distance table has nonzero diagonal");
        for (int b = 0; b < n; ++b) {
            int d = dist.at(a, b);
            if (d < 0)
                raise(ErrorKind::InvalidDistanceTable, "distance table has negative entry");
            if (d != dist.at(b, a))
                raise(ErrorKind::InvalidDistanceTable, "distance table is asymmetric");
        }
    }
}

TrafficMatrix traffic_matrix(const InteractionGraph& g, const Partition& pi, int num_qpus) {
    if (pi.size() != static_cast<std::size_t>(g.num_qubits()))
        raise(ErrorKind::InvalidIndex, "partition length does not match qubit count");
    TrafficMatrix tm = TrafficMatrix::zeros(num_qpus);
    for (const WeightedEdge& e : g.edges()) {
        int a = pi[e.a];
        int b = pi[e.b];
        if (a < 0 || a >= num_qpus || b < 0 || b >= num_qpus)
            raise(ErrorKind::InvalidIndex, "partition entry out of QPU range");
        if (a == b) continue;
        tm.at(a, b) += e.weight;
        tm.at(b, a) += e.weight;
    }
    return tm;
}

void validate_traffic_matrix(const TrafficMatrix& tm) {
    int n = tm.num_qpus;
    if (n < 0 || tm.t.size() != static_cast<std::size_t>(n) * n)
        raise(ErrorKind::InvalidTrafficMatrix, "traffic matrix has wrong shape");
    for (int a = 0; a < n; ++a) {
        if (tm.at(a, a) != 0.0)
            raise(ErrorKind::InvalidTrafficMatrix, "traffic matrix has nonzero diagonal");
        for (int b = 0; b < n; ++b) {
            double v = tm.at(a, b);
            if (!std::isfinite(v))
                raise(ErrorKind::InvalidTrafficMatrix, "traffic matrix has non-finite entry");
            if (v < 0.0)
                raise(ErrorKind::InvalidTrafficMatrix, "traffic matrix has negative entry");
            if (v != tm.at(b, a))
                raise(ErrorKind::InvalidTrafficMatrix, "traffic matrix is asymmetric");
        }
    }
}

double LinkLoads::total() const {
    double s = 0.0;
    for (double v : load) s += v;
    return s;
}

double LinkLoads::max() const {
    double m = 0.0;
    for (double v : load) m = std::max(m, v);
    return m;
}

double LinkLoads::sum_squares() const {
    double s = 0.0;
    for (double v : load) s += v * v;
    return s;
}

CongestionStats congestion_stats(const LinkLoads& loads) {
    return {loads.max(), loads.total(), loads.sum_squares()};
}

ShortestPathDag build_shortest_path_dag(const QpuGraph& g, int source, int destination) {
    ShortestPathDag dag;
    dag.source = source;
    dag.destination = destination;
    dag.dist_from_source = bfs_distances(g, source);
    for (int& d : dag.dist_from_source)
        if (d == DistanceTable::kUnreachable) d = ShortestPathDag::kUnreachableVertex;
    dag.sigma.assign(static_cast<std::size_t>(g.num_vertices()), 0.0);
    dag.preds.assign(static_cast<std::size_t>(g.num_vertices()), {});
    dag.sigma[source] = 1.0;
    // vertices in BFS-distance order; sigma(v) sums sigma over predecessors
    std::vector<int> order;
    for (int v = 0; v < g.num_vertices(); ++v)
        if (dag.dist_from_source[v] != ShortestPathDag::kUnreachableVertex) order.push_back(v);
    std::sort(order.begin(), order.end(), [&](int x, int y) {
        return std::make_pair(dag.dist_from_source[x], x) <
               std::make_pair(dag.dist_from_source[y], y);
    });
    for (int v : order) {
        if (v == source) continue;
        for (const auto& [u, id] : g.adjacency(v)) {
            (void)id;
            if (dag.dist_from_source[u] == ShortestPathDag::kUnreachableVertex) continue;
            if (dag.dist_from_source[u] + 1 == dag.dist_from_source[v]) {
                dag.preds[v].push_back(u);
                dag.sigma[v] += dag.sigma[u];
            }
        }
    }
    return dag;
}

std::vector<int> lex_shortest_path(const QpuGraph& g, int from, int to) {
    if (from == to) return {from};
    std::vector<int> dist_to = bfs_distances(g, to);
    if (dist_to[from] == DistanceTable::kUnreachable) return {};
    // greedily choosing the smallest neighbor that still decreases the
    // distance yields the lexicographically smallest vertex sequence
    std::vector<int> path{from};
    int cur = from;
    while (cur != to) {
        int next = -1;
        for (const auto& [u, id] : g.adjacency(cur)) {
            (void)id;
            if (dist_to[u] == dist_to[cur] - 1) {
                next = u;
                break;  // adjacency is sorted by neighbor index
            }
        }
        path.push_back(next);
        cur = next;
    }
    return path;
}

PairFlow pair_flow_single_path(const QpuGraph& g, int a, int b) {
    std::vector<int> path = lex_shortest_path(g, a, b);
    PairFlow flow;
    for (std::size_t i = 0; i + 1 < path.size(); ++i)
        flow.push_back({g.link_id(path[i], path[i + 1]), 1.0});
    return flow;
}

PairFlow pair_flow_ecmp(const QpuGraph& g, int a, int b) {
    ShortestPathDag dag = build_shortest_path_dag(g, a, b);
    PairFlow flow;
    if (a == b || dag.dist_from_source[b] == ShortestPathDag::kUnreachableVertex) return flow;
    // propagate one unit backward from the destination, splitting at each
    // vertex among predecessors in proportion sigma(u)/sigma(v)
    std::vector<double> inflow(static_cast<std::size_t>(g.num_vertices()), 0.0);
    inflow[b] = 1.0;
    std::vector<int> order;
    for (int v = 0; v < g.num_vertices(); ++v)
        if (dag.dist_from_source[v] != ShortestPathDag::kUnreachableVertex &&
            dag.dist_from_source[v] <= dag.dist_from_source[b])
            order.push_back(v);
    std::sort(order.begin(), order.end(), [&](int x, int y) {
        return std::make_pair(dag.dist_from_source[x], x) >
               std::make_pair(dag.dist_from_source[y], y);
    });
    std::map<int, double> per_link;
    for (int v : order) {
        if (v == a || inflow[v] == 0.0) continue;
        for (int u : dag.preds[v]) {
            double share = inflow[v] * (dag.sigma[u] / dag.sigma[v]);
            inflow[u] += share;
            per_link[g.link_id(u, v)] += share;
        }
    }
    for (const auto& [id, share] : per_link) flow.push_back({id, share});
    return flow;
}

namespace {

RouteResult route_with(const QpuGraph& g, const TrafficMatrix& tm,
                       PairFlow (*pair_flow)(const QpuGraph&, int, int)) {
    validate_traffic_matrix(tm);
    if (tm.num_qpus != g.num_qpus())
        raise(ErrorKind::InvalidTrafficMatrix, "traffic matrix does not match QPU count");
    RouteResult result;
    result.loads.load.assign(g.links().size(), 0.0);
    for (int a = 0; a < tm.num_qpus; ++a) {
        for (int b = a + 1; b < tm.num_qpus; ++b) {
            double traffic = tm.at(a, b);
            if (traffic == 0.0) continue;
            PairFlow flow = pair_flow(g, a, b);
            if (flow.empty()) {
                result.unroutable_pairs.push_back({a, b});
                continue;
            }
            for (const auto& [id, share] : flow) result.loads.load[id] += traffic * share;
        }
    }
    return result;
}

}  // namespace

RouteResult route_single_path(const QpuGraph& g, const DistanceTable& dist,
                              const TrafficMatrix& tm) {
    validate_distance_table(dist);
    return route_with(g, tm, pair_flow_single_path);
}

RouteResult route_ecmp(const QpuGraph& g, const TrafficMatrix& tm) {
    return route_with(g, tm, pair_flow_ecmp);
}

}  // namespace modumap
