#include "core/scheduler.hpp"

#include <algorithm>
#include <cmath>
#include <map>
#include <set>

#include "core/error.hpp"

namespace modumap {

void validate_cost_params(const CostParams& cp) {
    auto check = [](double v, const char* name) {
        if (!std::isfinite(v) || v < 0.0)
            raise(ErrorKind::InvalidParameter,
                  std::string(name) + " must be finite and >= 0");
    };
    check(cp.tau_1, "tau_1");
    check(cp.tau_2, "tau_2");
    check(cp.tau_swap, "tau_swap");
    check(cp.tau_e, "tau_e");
    check(cp.tau_c, "tau_c");
    check(cp.tau_r, "tau_r");
    if (!std::isfinite(cp.rho) || cp.rho < 0.0 || cp.rho > 1.0)
        raise(ErrorKind::InvalidParameter, "rho must be in [0, 1]");
}

double remote_cost(int a, int b, const DistanceTable& dist, const CostParams& cp) {
    if (a == b) raise(ErrorKind::InvalidParameter, "remote cost needs distinct QPUs");
    int d = dist.at(a, b);
    if (d == DistanceTable::kUnreachable)
        raise(ErrorKind::RoutingDisconnected,
              "QPUs " + std::to_string(a) + " and " + std::to_string(b) + " are disconnected");
    return d * cp.tau_e + (1.0 - cp.rho) * cp.tau_c + cp.tau_r;
}

std::vector<Layer> layerize(const DistributedProgram& dp) {
    std::vector<Layer> layers;
    auto layer_at = [&](std::size_t depth) -> Layer& {
        while (layers.size() <= depth) {
            Layer layer;
            layer.local_instructions.assign(static_cast<std::size_t>(dp.num_qpus), {});
            layers.push_back(std::move(layer));
        }
        return layers[depth];
    };

    std::vector<std::size_t> cursor(static_cast<std::size_t>(dp.num_qpus), 0);
    std::vector<std::vector<int>> qubit_next(static_cast<std::size_t>(dp.num_qpus),
                                             std::vector<int>(dp.block_size, 0));

    // processes q's local instructions; stops after consuming the barrier
    // tagged stop_index (the event synchronization point) and returns that
    // barrier's QPU-wide boundary
    auto advance = [&](int q, long stop_index) -> int {
        const Circuit& local = dp.locals[q];
        while (cursor[q] < local.instructions.size()) {
            const Instruction& instr = local.instructions[cursor[q]];
            if (instr.is_barrier()) {
                int boundary = 0;
                for (int v : qubit_next[q]) boundary = std::max(boundary, v);
                for (int& v : qubit_next[q]) v = boundary;
                ++cursor[q];
                if (stop_index >= 0 && instr.original_index == stop_index) return boundary;
                continue;
            }
            int depth = 0;
            for (int v : instr.qubits) depth = std::max(depth, qubit_next[q][v]);
            layer_at(static_cast<std::size_t>(depth)).local_instructions[q].push_back(cursor[q]);
            for (int v : instr.qubits) qubit_next[q][v] = depth + 1;
            ++cursor[q];
        }
        if (stop_index >= 0)
            raise(ErrorKind::Pipeline, "missing synchronization barrier for remote event " +
                                           std::to_string(stop_index));
        return 0;
    };

    for (std::size_t e = 0; e < dp.remote_events.size(); ++e) {
        const RemoteEvent& event = dp.remote_events[e];
        int depth = 0;
        for (int q : event.endpoint_qpus)
            depth = std::max(depth, advance(q, event.original_index));
        layer_at(static_cast<std::size_t>(depth)).remote_events.push_back(e);
        for (int p : event.phys_operands) {
            int q = p / dp.block_size;
            qubit_next[q][dp.local_index_of(q, p)] = depth + 1;
        }
    }
    for (int q = 0; q < dp.num_qpus; ++q) advance(q, -1);
    return layers;
}

std::vector<Round> pack_rounds(const std::vector<const RemoteEvent*>& events, const QpuGraph& qg,
                               const DistanceTable& dist, int ports, const CostParams& cp) {
    std::vector<Round> rounds;
    if (events.empty()) return rounds;

    struct RoundState {
        std::map<int, int> ports_used;           // QPU -> events touching it
        std::map<int, int> link_used;            // link id -> traffic units
        std::set<std::pair<int, int>> pairs;     // distinct endpoint pairs
    };
    RoundState state;
    Round current;

    // per-event QPU pairs (composites fan out from their first endpoint) and
    // the deterministic shortest path for each pair
    auto event_pairs = [&](const RemoteEvent& ev) {
        std::vector<std::pair<int, int>> pairs;
        for (std::size_t i = 1; i < ev.endpoint_qpus.size(); ++i) {
            int a = ev.endpoint_qpus[0], b = ev.endpoint_qpus[i];
            pairs.push_back({std::min(a, b), std::max(a, b)});
        }
        return pairs;
    };

    auto close_round = [&]() {
        for (const auto& [q, used] : state.ports_used)
            current.peak_ports = std::max(current.peak_ports, used);
        for (const auto& [id, used] : state.link_used)
            current.peak_utilization =
                std::max(current.peak_utilization, used / qg.links()[id].capacity);
        rounds.push_back(current);
        current = Round{};
        state = RoundState{};
    };

    for (std::size_t i = 0; i < events.size(); ++i) {
        const RemoteEvent& ev = *events[i];
        std::vector<std::pair<int, int>> pairs = event_pairs(ev);
        std::vector<std::vector<int>> paths;
        double cost = 0.0;
        for (const auto& [a, b] : pairs) {
            std::vector<int> path = lex_shortest_path(qg, a, b);
            if (path.empty())
                raise(ErrorKind::RoutingDisconnected,
                      "remote event between disconnected QPUs " + std::to_string(a) + " and " +
                          std::to_string(b));
            paths.push_back(std::move(path));
            cost = std::max(cost, remote_cost(a, b, dist, cp));
        }

        auto fits = [&]() {
            for (int q : ev.endpoint_qpus) {
                auto it = state.ports_used.find(q);
                int used = it == state.ports_used.end() ? 0 : it->second;
                if (used + 1 > ports) return false;
            }
            std::map<int, int> extra;
            for (const auto& path : paths)
                for (std::size_t k = 0; k + 1 < path.size(); ++k)
                    ++extra[qg.link_id(path[k], path[k + 1])];
            for (const auto& [id, units] : extra) {
                auto it = state.link_used.find(id);
                int used = it == state.link_used.end() ? 0 : it->second;
                if (used + units > qg.links()[id].capacity) return false;
            }
            if (qg.switch_pair_limit()) {
                std::set<std::pair<int, int>> all = state.pairs;
                for (const auto& p : pairs) all.insert(p);
                if (static_cast<int>(all.size()) > *qg.switch_pair_limit()) return false;
            }
            return true;
        };

        if (!fits()) {
            if (current.event_indices.empty())
                raise(ErrorKind::ScheduleInfeasible,
                      "remote event " + std::to_string(ev.original_index) +
                          " cannot be scheduled even in an empty round");
            close_round();
            if (!fits())
                raise(ErrorKind::ScheduleInfeasible,
                      "remote event " + std::to_string(ev.original_index) +
                          " cannot be scheduled even in an empty round");
        }
        current.event_indices.push_back(i);
        current.cost = std::max(current.cost, cost);
        for (int q : ev.endpoint_qpus) ++state.ports_used[q];
        for (const auto& path : paths)
            for (std::size_t k = 0; k + 1 < path.size(); ++k)
                ++state.link_used[qg.link_id(path[k], path[k + 1])];
        for (const auto& p : pairs) state.pairs.insert(p);
    }
    if (!current.event_indices.empty()) close_round();
    return rounds;
}

ScheduleResult estimate_schedule(const DistributedProgram& dp, const ModularArchitecture& arch,
                                 const QpuGraph& qg, const DistanceTable& dist,
                                 const CostParams& cp) {
    validate_cost_params(cp);
    ScheduleResult result;
    std::vector<Layer> layers = layerize(dp);
    result.report.num_layers = static_cast<long>(layers.size());
    result.report.num_remote_ops = remote_count(dp);

    for (Layer& layer : layers) {
        LayerSchedule ls;
        double local_cost = 0.0;
        for (int q = 0; q < dp.num_qpus; ++q) {
            double qpu_cost = 0.0;
            for (std::size_t idx : layer.local_instructions[q]) {
                const Instruction& instr = dp.locals[q].instructions[idx];
                if (instr.qubits.size() == 1)
                    qpu_cost += cp.tau_1;
                else if (instr.name == "swap")
                    qpu_cost += cp.tau_swap;
                else
                    qpu_cost += cp.tau_2;
            }
            local_cost = std::max(local_cost, qpu_cost);
        }
        ls.local_cost = local_cost;

        std::vector<const RemoteEvent*> events;
        for (std::size_t e : layer.remote_events) events.push_back(&dp.remote_events[e]);
        ls.rounds = pack_rounds(events, qg, dist, arch.comm_per_qpu(), cp);
        double remote = 0.0;
        for (const Round& round : ls.rounds) {
            remote += round.cost;
            result.report.peak_link_utilization =
                std::max(result.report.peak_link_utilization, round.peak_utilization);
            result.report.peak_port_usage =
                std::max(result.report.peak_port_usage, round.peak_ports);
        }
        if (qg.kind() == QpuTopologyKind::Switch && ls.rounds.size() > 1)
            remote += qg.switch_reconfig_delay() * static_cast<double>(ls.rounds.size() - 1);
        ls.remote_cost = remote;
        result.report.num_rounds += static_cast<long>(ls.rounds.size());

        result.report.makespan += std::max(ls.local_cost, ls.remote_cost);
        ls.layer = std::move(layer);
        result.layers.push_back(std::move(ls));
    }
    return result;
}

ScalarCost scalar_cost(long n1, long n2, long n_swap, long n_remote, long depth,
                       const CostParams& cp) {
    if (n1 < 0 || n2 < 0 || n_swap < 0 || n_remote < 0 || depth < 0)
        raise(ErrorKind::InvalidParameter, "instruction counts must be nonnegative");
    ScalarCost out;
    out.c_local = cp.tau_1 * static_cast<double>(n1) + cp.tau_2 * static_cast<double>(n2) +
                  cp.tau_swap * static_cast<double>(n_swap);
    out.c_remote = static_cast<double>(n_remote) * (cp.tau_e + cp.tau_c + cp.tau_r);
    out.c_total = out.c_local + out.c_remote + 0.1 * static_cast<double>(depth) * cp.tau_2;
    return out;
}

}  // namespace modumap
