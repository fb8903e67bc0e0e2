#include "core/partition.hpp"

#include <algorithm>
#include <cmath>
#include <map>
#include <numeric>

#include "core/error.hpp"
#include "core/rng.hpp"

namespace modumap {

namespace {

void check_partition_shape(const InteractionGraph& g, const Partition& pi) {
    if (pi.size() != static_cast<std::size_t>(g.num_qubits()))
        raise(ErrorKind::InvalidIndex, "partition length does not match qubit count");
}

}  // namespace

double cut_weight(const InteractionGraph& g, const Partition& pi) {
    check_partition_shape(g, pi);
    double cut = 0.0;
    for (const WeightedEdge& e : g.edges())
        if (pi[e.a] != pi[e.b]) cut += e.weight;
    return cut;
}

std::vector<int> boundary_counts(const InteractionGraph& g, const Partition& pi, int num_qpus) {
    check_partition_shape(g, pi);
    std::vector<int> counts(static_cast<std::size_t>(num_qpus), 0);
    for (int v = 0; v < g.num_qubits(); ++v) {
        bool boundary = false;
        for (const auto& [u, w] : g.neighbors(v)) {
            (void)w;
            if (pi[u] != pi[v]) {
                boundary = true;
                break;
            }
        }
        if (boundary) ++counts[pi[v]];
    }
    return counts;
}

std::vector<int> partition_loads(const Partition& pi, int num_qpus) {
    std::vector<int> loads(static_cast<std::size_t>(num_qpus), 0);
    for (int q : pi) {
        if (q < 0 || q >= num_qpus)
            raise(ErrorKind::InvalidIndex, "partition entry out of QPU range");
        ++loads[q];
    }
    return loads;
}

ObjectiveBreakdown objective(const InteractionGraph& g, const Partition& pi, const QpuGraph& qg,
                             const DistanceTable& dist, int ports,
                             const ObjectiveParams& params) {
    check_partition_shape(g, pi);
    validate_distance_table(dist);
    if (dist.num_qpus != qg.num_qpus())
        raise(ErrorKind::InvalidDistanceTable, "distance table does not match QPU count");

    ObjectiveBreakdown out;
    double cut_distance = 0.0;
    for (const WeightedEdge& e : g.edges()) {
        int a = pi[e.a], b = pi[e.b];
        if (a == b) continue;
        int d = dist.at(a, b);
        if (d != DistanceTable::kUnreachable) cut_distance += e.weight * d;
        // unreachable pairs are charged through the routing penalty below
    }
    out.cut_distance_term = params.alpha * cut_distance;

    const std::vector<int> b_q = boundary_counts(g, pi, qg.num_qpus());
    double port = 0.0;
    for (int q = 0; q < qg.num_qpus(); ++q) {
        double over = std::max(0, b_q[q] - ports);
        port += over * over;
    }
    out.port_term = params.beta * port;

    TrafficMatrix tm = traffic_matrix(g, pi, qg.num_qpus());
    RouteResult routed = params.routing_mode == RoutingMode::SinglePath
                             ? route_single_path(qg, dist, tm)
                             : route_ecmp(qg, tm);
    out.congestion_term = params.eta * routed.loads.sum_squares();
    out.disconnected_pairs = static_cast<int>(routed.unroutable_pairs.size());

    out.total = out.cut_distance_term + out.port_term + out.congestion_term +
                params.disconnected_penalty * out.disconnected_pairs;
    return out;
}

void validate_partition_inputs(const InteractionGraph& g, int num_qpus, int capacity) {
    if (num_qpus < 1 || capacity < 1)
        raise(ErrorKind::InvalidParameter, "QPU count and capacity must be >= 1");
    for (const WeightedEdge& e : g.edges()) {
        if (e.a < 0 || e.b < 0 || e.a >= g.num_qubits() || e.b >= g.num_qubits() || e.a == e.b)
            raise(ErrorKind::InvalidIndex, "interaction edge endpoint out of range");
        if (!std::isfinite(e.weight))
            raise(ErrorKind::NonFiniteWeight, "non-finite weight on edge (" +
                                                  std::to_string(e.a) + ", " +
                                                  std::to_string(e.b) + ")");
        if (e.weight < 0.0)
            raise(ErrorKind::NegativeWeight, "negative weight on edge (" + std::to_string(e.a) +
                                                 ", " + std::to_string(e.b) + ")");
    }
    long demand = g.num_qubits();
    long total_capacity = static_cast<long>(num_qpus) * capacity;
    if (demand > total_capacity)
        raise(ErrorKind::DemandExceedsCapacity,
              "demand exceeds capacity: " + std::to_string(demand) + " qubits > " +
                  std::to_string(num_qpus) + " QPUs x " + std::to_string(capacity));
}

// ---------------------------------------------------------------------------
// IncrementalObjective

struct IncrementalObjective::PendingChanges {
    double d_cut = 0.0;
    double d_port = 0.0;
    double d_cong = 0.0;
    int d_unroutable = 0;

    std::vector<std::pair<int, int>> moved;          // (qubit, new qpu)
    std::vector<std::pair<int, int>> cross_new;      // (qubit, new cross count)
    std::vector<std::pair<int, int>> boundary_new;   // (qpu, new b_q)
    std::vector<std::tuple<int, double, int>> traffic_new;  // (pair idx, T, edge count)
    std::vector<std::pair<int, double>> link_new;    // (link id, new load)

    void clear() { *this = PendingChanges{}; }
};

IncrementalObjective::IncrementalObjective(const InteractionGraph& g, const QpuGraph& qg,
                                           const DistanceTable& dist, int ports,
                                           const ObjectiveParams& params, Partition initial)
    : g_(g), qg_(qg), dist_(dist), num_qpus_(qg.num_qpus()), ports_(ports), params_(params),
      assign_(std::move(initial)) {
    check_partition_shape(g_, assign_);
    validate_distance_table(dist_);
    flow_cache_.assign(static_cast<std::size_t>(num_qpus_) * num_qpus_, std::nullopt);
    rebuild();
}

const PairFlow& IncrementalObjective::flow_for(int a, int b) const {
    std::size_t idx = static_cast<std::size_t>(a) * num_qpus_ + b;
    if (!flow_cache_[idx]) {
        flow_cache_[idx] = params_.routing_mode == RoutingMode::SinglePath
                               ? pair_flow_single_path(qg_, a, b)
                               : pair_flow_ecmp(qg_, a, b);
    }
    return *flow_cache_[idx];
}

void IncrementalObjective::rebuild() {
    loads_ = partition_loads(assign_, num_qpus_);
    cross_count_.assign(assign_.size(), 0);
    boundary_.assign(static_cast<std::size_t>(num_qpus_), 0);
    traffic_.assign(static_cast<std::size_t>(num_qpus_) * num_qpus_, 0.0);
    traffic_edges_.assign(static_cast<std::size_t>(num_qpus_) * num_qpus_, 0);
    link_load_.assign(qg_.links().size(), 0.0);
    cut_distance_raw_ = 0.0;
    congestion_raw_ = 0.0;
    unroutable_ = 0;

    for (const WeightedEdge& e : g_.edges()) {
        int a = assign_[e.a], b = assign_[e.b];
        if (a == b) continue;
        ++cross_count_[e.a];
        ++cross_count_[e.b];
        int d = dist_.at(a, b);
        if (d != DistanceTable::kUnreachable) cut_distance_raw_ += e.weight * d;
        int lo = std::min(a, b), hi = std::max(a, b);
        std::size_t idx = static_cast<std::size_t>(lo) * num_qpus_ + hi;
        traffic_[idx] += e.weight;
        ++traffic_edges_[idx];
    }
    for (std::size_t v = 0; v < assign_.size(); ++v)
        if (cross_count_[v] > 0) ++boundary_[assign_[v]];
    port_raw_ = 0.0;
    for (int q = 0; q < num_qpus_; ++q) {
        double over = std::max(0, boundary_[q] - ports_);
        port_raw_ += over * over;
    }
    for (int a = 0; a < num_qpus_; ++a)
        for (int b = a + 1; b < num_qpus_; ++b) {
            std::size_t idx = static_cast<std::size_t>(a) * num_qpus_ + b;
            if (traffic_edges_[idx] == 0) continue;
            const PairFlow& flow = flow_for(a, b);
            if (flow.empty()) {
                ++unroutable_;
                continue;
            }
            for (const auto& [id, share] : flow) link_load_[id] += traffic_[idx] * share;
        }
    congestion_raw_ = 0.0;
    for (double l : link_load_) congestion_raw_ += l * l;
}

double IncrementalObjective::value() const {
    return params_.alpha * cut_distance_raw_ + params_.beta * port_raw_ +
           params_.eta * congestion_raw_ + params_.disconnected_penalty * unroutable_;
}

void IncrementalObjective::compute_changes(const std::vector<Move>& moves,
                                           PendingChanges& out) const {
    out.clear();
    for (const Move& m : moves) out.moved.push_back({m.qubit, m.to});
    auto new_qpu = [&](int v) {
        for (const auto& [q, to] : out.moved)
            if (q == v) return to;
        return assign_[v];
    };

    // affected edges: every edge incident to a moved qubit, once
    std::vector<std::pair<int, int>> edges;
    for (const Move& m : moves)
        for (const auto& [u, w] : g_.neighbors(m.qubit)) {
            (void)w;
            edges.push_back({std::min(m.qubit, u), std::max(m.qubit, u)});
        }
    std::sort(edges.begin(), edges.end());
    edges.erase(std::unique(edges.begin(), edges.end()), edges.end());

    std::map<int, std::pair<double, int>> traffic_delta;  // pair idx -> (dw, dcount)
    for (const auto& [x, y] : edges) {
        double w = g_.weight(x, y);
        int old_a = assign_[x], old_b = assign_[y];
        int new_a = new_qpu(x), new_b = new_qpu(y);
        if (old_a != old_b) {
            int d = dist_.at(old_a, old_b);
            if (d != DistanceTable::kUnreachable) out.d_cut -= w * d;
            std::size_t idx =
                static_cast<std::size_t>(std::min(old_a, old_b)) * num_qpus_ + std::max(old_a, old_b);
            auto& [dw, dc] = traffic_delta[static_cast<int>(idx)];
            dw -= w;
            dc -= 1;
        }
        if (new_a != new_b) {
            int d = dist_.at(new_a, new_b);
            if (d != DistanceTable::kUnreachable) out.d_cut += w * d;
            std::size_t idx =
                static_cast<std::size_t>(std::min(new_a, new_b)) * num_qpus_ + std::max(new_a, new_b);
            auto& [dw, dc] = traffic_delta[static_cast<int>(idx)];
            dw += w;
            dc += 1;
        }
    }

    // traffic -> link loads -> congestion
    std::map<int, double> link_delta;
    for (const auto& [idx, change] : traffic_delta) {
        const auto& [dw, dc] = change;
        double t_old = traffic_[idx];
        int cnt_new = traffic_edges_[idx] + dc;
        // snap to exactly zero when the last contributing edge leaves, so
        // float dust cannot keep a phantom pair alive
        double t_new = cnt_new == 0 ? 0.0 : t_old + dw;
        out.traffic_new.push_back({idx, t_new, cnt_new});
        int a = idx / num_qpus_, b = idx % num_qpus_;
        const PairFlow& flow = flow_for(a, b);
        if (flow.empty()) {
            out.d_unroutable += (cnt_new > 0 ? 1 : 0) - (traffic_edges_[idx] > 0 ? 1 : 0);
            continue;
        }
        for (const auto& [id, share] : flow) link_delta[id] += (t_new - t_old) * share;
    }
    for (const auto& [id, dl] : link_delta) {
        double l_old = link_load_[id];
        double l_new = l_old + dl;
        out.d_cong += l_new * l_new - l_old * l_old;
        out.link_new.push_back({id, l_new});
    }

    // cross counts and boundary counts for moved qubits and their neighbors
    std::vector<int> affected;
    for (const Move& m : moves) {
        affected.push_back(m.qubit);
        for (const auto& [u, w] : g_.neighbors(m.qubit)) {
            (void)w;
            affected.push_back(u);
        }
    }
    std::sort(affected.begin(), affected.end());
    affected.erase(std::unique(affected.begin(), affected.end()), affected.end());

    std::map<int, int> b_delta;
    for (int v : affected) {
        int q_new = new_qpu(v);
        int cross = 0;
        for (const auto& [u, w] : g_.neighbors(v)) {
            (void)w;
            if (new_qpu(u) != q_new) ++cross;
        }
        out.cross_new.push_back({v, cross});
        int was = cross_count_[v] > 0 ? 1 : 0;
        int now = cross > 0 ? 1 : 0;
        if (was) b_delta[assign_[v]] -= 1;
        if (now) b_delta[q_new] += 1;
    }
    for (const auto& [q, db] : b_delta) {
        if (db == 0) continue;
        double over_old = std::max(0, boundary_[q] - ports_);
        double over_new = std::max(0, boundary_[q] + db - ports_);
        out.d_port += over_new * over_new - over_old * over_old;
        out.boundary_new.push_back({q, boundary_[q] + db});
    }
}

double IncrementalObjective::delta(const std::vector<Move>& moves) const {
    PendingChanges changes;
    compute_changes(moves, changes);
    return params_.alpha * changes.d_cut + params_.beta * changes.d_port +
           params_.eta * changes.d_cong + params_.disconnected_penalty * changes.d_unroutable;
}

void IncrementalObjective::commit(const std::vector<Move>& moves) {
    PendingChanges changes;
    compute_changes(moves, changes);
    for (const auto& [v, to] : changes.moved) {
        --loads_[assign_[v]];
        ++loads_[to];
        assign_[v] = to;
    }
    for (const auto& [v, cross] : changes.cross_new) cross_count_[v] = cross;
    for (const auto& [q, b] : changes.boundary_new) boundary_[q] = b;
    for (const auto& [idx, t, cnt] : changes.traffic_new) {
        traffic_[idx] = t;
        traffic_edges_[idx] = cnt;
    }
    for (const auto& [id, l] : changes.link_new) link_load_[id] = l;
    cut_distance_raw_ += changes.d_cut;
    port_raw_ += changes.d_port;
    congestion_raw_ += changes.d_cong;
    unroutable_ += changes.d_unroutable;
    if (++commits_ % 1000 == 0) rebuild();  // bound floating-point drift
}

// ---------------------------------------------------------------------------
// Heavy-edge clustering

namespace {

struct DisjointSet {
    std::vector<int> parent, size;

    explicit DisjointSet(int n) : parent(n), size(n, 1) {
        std::iota(parent.begin(), parent.end(), 0);
    }
    int find(int v) {
        while (parent[v] != v) v = parent[v] = parent[parent[v]];
        return v;
    }
    void unite(int a, int b) {
        a = find(a);
        b = find(b);
        if (a == b) return;
        if (size[a] < size[b]) std::swap(a, b);
        parent[b] = a;
        size[a] += size[b];
    }
};

}  // namespace

Partition heavy_edge_partition(const InteractionGraph& g, int num_qpus, int capacity) {
    validate_partition_inputs(g, num_qpus, capacity);
    const int n = g.num_qubits();

    std::vector<WeightedEdge> edges = g.edges();
    std::sort(edges.begin(), edges.end(), [](const WeightedEdge& x, const WeightedEdge& y) {
        if (x.weight != y.weight) return x.weight > y.weight;
        return std::tie(x.a, x.b) < std::tie(y.a, y.b);
    });
    DisjointSet dsu(n);
    for (const WeightedEdge& e : edges) {
        int ra = dsu.find(e.a), rb = dsu.find(e.b);
        if (ra == rb) continue;
        if (dsu.size[ra] + dsu.size[rb] <= capacity) dsu.unite(ra, rb);
    }

    std::map<int, std::vector<int>> components;
    for (int v = 0; v < n; ++v) components[dsu.find(v)].push_back(v);
    std::vector<std::vector<int>> ordered;
    for (auto& [root, members] : components) {
        (void)root;
        ordered.push_back(std::move(members));
    }
    std::sort(ordered.begin(), ordered.end(),
              [](const std::vector<int>& x, const std::vector<int>& y) {
                  if (x.size() != y.size()) return x.size() > y.size();
                  return x.front() < y.front();
              });

    Partition pi(static_cast<std::size_t>(n), -1);
    std::vector<int> remaining(static_cast<std::size_t>(num_qpus), capacity);
    std::vector<int> leftovers;
    for (const std::vector<int>& comp : ordered) {
        int target = -1;
        for (int q = 0; q < num_qpus; ++q)
            if (remaining[q] >= static_cast<int>(comp.size())) {
                target = q;
                break;
            }
        if (target < 0) {
            // component fits nowhere whole; its members fall back to
            // singleton placement below
            leftovers.insert(leftovers.end(), comp.begin(), comp.end());
            continue;
        }
        for (int v : comp) pi[v] = target;
        remaining[target] -= static_cast<int>(comp.size());
    }
    std::sort(leftovers.begin(), leftovers.end());
    for (int v : leftovers)
        for (int q = 0; q < num_qpus; ++q)
            if (remaining[q] >= 1) {
                pi[v] = q;
                --remaining[q];
                break;
            }
    for (int v = 0; v < n; ++v)
        if (pi[v] < 0) raise(ErrorKind::DemandExceedsCapacity, "unplaced qubit after packing");
    return pi;
}

// ---------------------------------------------------------------------------
// Balanced greedy with local refinement

Partition balanced_greedy_partition(const InteractionGraph& g, int num_qpus, int capacity,
                                    double lambda, std::uint64_t rng_seed, int pass_limit) {
    validate_partition_inputs(g, num_qpus, capacity);
    if (!(lambda >= 0.0) || !std::isfinite(lambda))
        raise(ErrorKind::InvalidParameter, "lambda must be finite and >= 0");
    const int n = g.num_qubits();

    std::vector<int> order(static_cast<std::size_t>(n));
    std::iota(order.begin(), order.end(), 0);
    std::vector<double> degree(static_cast<std::size_t>(n));
    for (int v = 0; v < n; ++v) degree[v] = g.weighted_degree(v);
    std::stable_sort(order.begin(), order.end(),
                     [&](int x, int y) { return degree[x] > degree[y]; });

    Partition pi(static_cast<std::size_t>(n), -1);
    std::vector<int> loads(static_cast<std::size_t>(num_qpus), 0);
    std::vector<double> affinity(static_cast<std::size_t>(num_qpus), 0.0);
    for (int v : order) {
        std::fill(affinity.begin(), affinity.end(), 0.0);
        for (const auto& [u, w] : g.neighbors(v))
            if (pi[u] >= 0) affinity[pi[u]] += w;
        int best = -1;
        double best_score = 0.0;
        for (int q = 0; q < num_qpus; ++q) {
            if (loads[q] >= capacity) continue;
            double score = affinity[q] - lambda * static_cast<double>(loads[q]) / capacity;
            if (best < 0 || score > best_score) {
                best = q;
                best_score = score;
            }
        }
        if (best < 0) raise(ErrorKind::DemandExceedsCapacity, "no QPU with remaining capacity");
        pi[v] = best;
        ++loads[best];
    }

    // local refinement: move a qubit only when the move strictly reduces cut
    // weight and the destination has room
    Rng rng(mix_seed(rng_seed, 0));
    std::vector<int> scan(static_cast<std::size_t>(n));
    std::iota(scan.begin(), scan.end(), 0);
    std::vector<double> internal(static_cast<std::size_t>(num_qpus), 0.0);
    for (int pass = 0; pass < pass_limit; ++pass) {
        bool changed = false;
        rng.shuffle(scan);
        for (int v : scan) {
            std::fill(internal.begin(), internal.end(), 0.0);
            for (const auto& [u, w] : g.neighbors(v)) internal[pi[u]] += w;
            int cur = pi[v];
            int best = cur;
            double best_internal = internal[cur];
            for (int q = 0; q < num_qpus; ++q) {
                if (q == cur || loads[q] >= capacity) continue;
                if (internal[q] > best_internal) {
                    best = q;
                    best_internal = internal[q];
                }
            }
            if (best != cur) {
                --loads[cur];
                ++loads[best];
                pi[v] = best;
                changed = true;
            }
        }
        if (!changed) break;
    }
    return pi;
}

// ---------------------------------------------------------------------------
// TPCCAP local search

Partition tpccap_partition(const InteractionGraph& g, const QpuGraph& qg,
                           const DistanceTable& dist, int num_qpus, int capacity, int ports,
                           const ObjectiveParams& params, double lambda, std::uint64_t rng_seed,
                           int pass_limit) {
    Partition start = balanced_greedy_partition(g, num_qpus, capacity, lambda, rng_seed);
    const int n = g.num_qubits();
    if (n == 0) return start;

    IncrementalObjective inc(g, qg, dist, ports, params, start);
    Rng rng(mix_seed(rng_seed, 1));
    std::vector<int> scan(static_cast<std::size_t>(n));
    std::iota(scan.begin(), scan.end(), 0);
    std::vector<double> affinity(static_cast<std::size_t>(num_qpus), 0.0);

    for (int pass = 0; pass < pass_limit; ++pass) {
        bool changed = false;
        rng.shuffle(scan);
        for (int v : scan) {
            const Partition& pi = inc.assignment();
            std::fill(affinity.begin(), affinity.end(), 0.0);
            for (const auto& [u, w] : g.neighbors(v)) affinity[pi[u]] += w;
            // candidate destinations: QPUs hosting the strongest neighbor
            // affinity (top 3), plus the current QPU
            std::vector<std::pair<double, int>> ranked;
            for (int q = 0; q < num_qpus; ++q)
                if (affinity[q] > 0.0) ranked.push_back({-affinity[q], q});
            std::sort(ranked.begin(), ranked.end());
            std::vector<int> candidates;
            for (std::size_t i = 0; i < ranked.size() && i < 3; ++i)
                candidates.push_back(ranked[i].second);
            std::sort(candidates.begin(), candidates.end());

            int best_q = -1;
            double best_delta = -1e-12;  // strictly reducing moves only
            for (int q : candidates) {
                if (q == pi[v] || inc.load(q) >= capacity) continue;
                double d = inc.delta({{v, q}});
                if (d < best_delta) {
                    best_delta = d;
                    best_q = q;
                }
            }
            if (best_q >= 0) {
                inc.commit({{v, best_q}});
                changed = true;
            }
        }
        if (!changed) break;
    }

    // the search only applies reducing moves, but guard the contract against
    // accumulated float drift anyway
    Partition result = inc.assignment();
    double j_result = objective(g, result, qg, dist, ports, params).total;
    double j_start = objective(g, start, qg, dist, ports, params).total;
    return j_result <= j_start ? result : start;
}

// ---------------------------------------------------------------------------
// TPCCAP-SA refinement

Partition tpccap_sa_partition(const InteractionGraph& g, const QpuGraph& qg,
                              const DistanceTable& dist, int num_qpus, int capacity, int ports,
                              const ObjectiveParams& params, double lambda,
                              std::uint64_t rng_seed, int pass_limit, const SaParams& sa) {
    if (!std::isfinite(sa.initial_temp) || sa.initial_temp < 0.0)
        raise(ErrorKind::InvalidParameter, "SA initial temperature must be finite and >= 0");
    if (!(sa.cooling > 0.0) || !(sa.cooling < 1.0))
        raise(ErrorKind::InvalidParameter, "SA cooling factor must be in (0, 1)");
    if (sa.steps < 0) raise(ErrorKind::InvalidParameter, "SA step count must be >= 0");

    Partition start = tpccap_partition(g, qg, dist, num_qpus, capacity, ports, params, lambda,
                                       rng_seed, pass_limit);
    const int n = g.num_qubits();
    if (sa.steps == 0 || n == 0) return start;

    IncrementalObjective inc(g, qg, dist, ports, params, start);
    double j_current = inc.value();
    Partition best = start;
    double j_best = j_current;

    // initial_temp == 0 selects the default schedule max(1, J(start)/10)
    double temperature =
        sa.initial_temp > 0.0 ? sa.initial_temp : std::max(1.0, j_current / 10.0);

    Rng rng(sa.rng_seed);
    for (long step = 0; step < sa.steps; ++step, temperature *= sa.cooling) {
        std::vector<IncrementalObjective::Move> proposal;
        if (rng.coin()) {
            int v = rng.uniform_int(0, n - 1);
            std::vector<int> dests;
            for (int q = 0; q < num_qpus; ++q)
                if (q != inc.assignment()[v] && inc.load(q) < capacity) dests.push_back(q);
            if (dests.empty()) continue;
            proposal.push_back({v, dests[rng.uniform_int(0, static_cast<int>(dests.size()) - 1)]});
        } else {
            if (n < 2) continue;
            int i = rng.uniform_int(0, n - 1);
            int j = rng.uniform_int(0, n - 1);
            if (i == j || inc.assignment()[i] == inc.assignment()[j]) continue;
            proposal.push_back({i, inc.assignment()[j]});
            proposal.push_back({j, inc.assignment()[i]});
        }
        double d = inc.delta(proposal);
        bool accept = d <= 0.0;
        if (!accept) accept = rng.uniform01() < std::exp(-d / temperature);
        if (!accept) continue;
        inc.commit(proposal);
        j_current = inc.value();
        if (j_current < j_best) {
            j_best = j_current;
            best = inc.assignment();
        }
    }
    return best;
}

}  // namespace modumap
