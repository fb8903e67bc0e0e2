#pragma once

#include <limits>
#include <optional>
#include <string>
#include <vector>

namespace modumap {

class InteractionGraph;
using Partition = std::vector<int>;

enum class QpuTopologyKind {
    Switch,         // virtual crossbar: complete graph with a pair limit per round
    Mesh,           // complete graph
    Ring,           // cycle
    DegreeBounded,  // deterministic circulant graph of degree <= k
    Clos,           // leaves attached to m internal spine switches
    FatTree,        // leaves under a binary switch hierarchy of given depth
};

struct QpuTopologyParams {
    int degree = 2;               // degree_bounded
    int mid_switches = 1;         // clos
    int levels = 1;               // fat_tree
    double link_capacity = 1.0;   // applied to every link
    std::optional<int> switch_pair_limit;  // switch kind only
    double switch_reconfig_delay = 0.0;    // switch kind only
};

struct QpuLink {
    int a, b;  // canonical, a < b; vertex indices (QPUs first, then switches)
    double capacity;
};

// Undirected QPU-level interconnect. Vertices 0..num_qpus-1 are QPUs;
// vertices beyond that are internal switch nodes that carry no qubits and
// only relay traffic.
class QpuGraph {
public:
    QpuGraph() = default;
    QpuGraph(QpuTopologyKind kind, int num_qpus, int num_vertices, std::vector<QpuLink> links,
             const QpuTopologyParams& params);

    QpuTopologyKind kind() const { return kind_; }
    int num_qpus() const { return num_qpus_; }
    int num_vertices() const { return num_vertices_; }
    const std::vector<QpuLink>& links() const { return links_; }
    // (neighbor, link id) pairs, sorted by neighbor
    const std::vector<std::pair<int, int>>& adjacency(int v) const { return adjacency_[v]; }
    std::optional<int> switch_pair_limit() const { return switch_pair_limit_; }
    double switch_reconfig_delay() const { return switch_reconfig_delay_; }

    // -1 when (a, b) is not a link.
    int link_id(int a, int b) const;

private:
    QpuTopologyKind kind_ = QpuTopologyKind::Mesh;
    int num_qpus_ = 0;
    int num_vertices_ = 0;
    std::vector<QpuLink> links_;
    std::vector<std::vector<std::pair<int, int>>> adjacency_;
    std::optional<int> switch_pair_limit_;
    double switch_reconfig_delay_ = 0.0;
};

QpuGraph build_qpu_graph(QpuTopologyKind kind, int num_qpus, const QpuTopologyParams& params);

// Hop distances between QPU pairs (internal switch hops counted).
struct DistanceTable {
    static constexpr int kUnreachable = std::numeric_limits<int>::max();

    int num_qpus = 0;
    std::vector<int> dist;  // row-major num_qpus x num_qpus

    int at(int a, int b) const { return dist[static_cast<std::size_t>(a) * num_qpus + b]; }
    int& at(int a, int b) { return dist[static_cast<std::size_t>(a) * num_qpus + b]; }
    bool reachable(int a, int b) const { return at(a, b) != kUnreachable; }
};

DistanceTable all_pairs_distances(const QpuGraph& g);

// Rejects tables that are not square/symmetric, have a nonzero diagonal, or
// negative entries (kUnreachable is a valid sentinel).
void validate_distance_table(const DistanceTable& dist);

// Symmetric nonnegative QPU traffic matrix with zero diagonal.
struct TrafficMatrix {
    int num_qpus = 0;
    std::vector<double> t;  // row-major

    static TrafficMatrix zeros(int n) {
        return {n, std::vector<double>(static_cast<std::size_t>(n) * n, 0.0)};
    }
    double at(int a, int b) const { return t[static_cast<std::size_t>(a) * num_qpus + b]; }
    double& at(int a, int b) { return t[static_cast<std::size_t>(a) * num_qpus + b]; }
};

TrafficMatrix traffic_matrix(const InteractionGraph& g, const Partition& pi, int num_qpus);

// Shape, symmetry, nonnegativity, finiteness, zero diagonal.
void validate_traffic_matrix(const TrafficMatrix& tm);

// Per-link accumulated traffic load.
struct LinkLoads {
    std::vector<double> load;  // indexed by link id

    double total() const;
    double max() const;
    double sum_squares() const;
};

struct CongestionStats {
    double max_load = 0.0;
    double sum_load = 0.0;
    double sum_sq_load = 0.0;
};

CongestionStats congestion_stats(const LinkLoads& loads);

// Shortest-path DAG for one (source, destination) pair: per-vertex distance
// from the source, number of shortest paths sigma, and shortest-path
// predecessors. Only vertices on some s-d shortest path matter to routing.
struct ShortestPathDag {
    int source = 0;
    int destination = 0;
    std::vector<int> dist_from_source;      // kUnreachableVertex when unreachable
    std::vector<double> sigma;              // shortest-path counts from the source
    std::vector<std::vector<int>> preds;    // shortest-path predecessors per vertex

    static constexpr int kUnreachableVertex = std::numeric_limits<int>::max();
};

ShortestPathDag build_shortest_path_dag(const QpuGraph& g, int source, int destination);

// Per-pair unit-traffic link shares: routing one unit of (a, b) traffic adds
// share to each listed link. Single-path puts 1.0 on every edge of the
// lexicographically smallest shortest path; ECMP splits by sigma ratios.
// Empty when the pair is disconnected.
using PairFlow = std::vector<std::pair<int, double>>;  // (link id, share)

PairFlow pair_flow_single_path(const QpuGraph& g, int a, int b);
PairFlow pair_flow_ecmp(const QpuGraph& g, int a, int b);

// Lexicographically smallest shortest vertex path between two vertices;
// empty when disconnected.
std::vector<int> lex_shortest_path(const QpuGraph& g, int from, int to);

struct RouteResult {
    LinkLoads loads;
    std::vector<std::pair<int, int>> unroutable_pairs;  // traffic between disconnected QPUs
};

RouteResult route_single_path(const QpuGraph& g, const DistanceTable& dist,
                              const TrafficMatrix& tm);
RouteResult route_ecmp(const QpuGraph& g, const TrafficMatrix& tm);

}  // namespace modumap
