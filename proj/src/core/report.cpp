#include "core/report.hpp"

#include <cmath>
#include <cstdio>
#include <sstream>

namespace modumap {

using nlohmann::json;

namespace {

void dump_value(const json& j, std::string& out) {
    switch (j.type()) {
        case json::value_t::object: {
            out += '{';
            bool first = true;
            for (auto it = j.begin(); it != j.end(); ++it) {  // keys already sorted
                if (!first) out += ',';
                first = false;
                out += json(it.key()).dump();
                out += ':';
                dump_value(it.value(), out);
            }
            out += '}';
            break;
        }
        case json::value_t::array: {
            out += '[';
            for (std::size_t i = 0; i < j.size(); ++i) {
                if (i) out += ',';
                dump_value(j[i], out);
            }
            out += ']';
            break;
        }
        case json::value_t::number_float: {
            double v = j.get<double>();
            if (!std::isfinite(v)) {
                out += "null";
                break;
            }
            char buf[40];
            std::snprintf(buf, sizeof buf, "%.12g", v);
            out += buf;
            break;
        }
        default:
            out += j.dump();
            break;
    }
}

}  // namespace

std::string canonical_dump(const json& j) {
    std::string out;
    dump_value(j, out);
    return out;
}

std::string instruction_text(const Instruction& instr) {
    std::ostringstream out;
    if (instr.is_measure()) {
        out << "measure q[" << instr.qubits.at(0) << "] -> c[" << instr.clbits.at(0) << "]";
        return out.str();
    }
    out << instr.name;
    if (!instr.params.empty()) {
        char buf[40];
        out << '(';
        for (std::size_t i = 0; i < instr.params.size(); ++i) {
            if (i) out << ',';
            std::snprintf(buf, sizeof buf, "%.12g", instr.params[i]);
            out << buf;
        }
        out << ')';
    }
    for (std::size_t i = 0; i < instr.qubits.size(); ++i)
        out << (i ? "," : " ") << "q[" << instr.qubits[i] << ']';
    return out.str();
}

json schedule_json(const ScheduleReport& report) {
    return json{
        {"makespan", report.makespan},
        {"num_layers", report.num_layers},
        {"num_remote_ops", report.num_remote_ops},
        {"num_rounds", report.num_rounds},
        {"peak_link_utilization", report.peak_link_utilization},
        {"peak_port_usage", report.peak_port_usage},
    };
}

json report_json(const CompilationResult& r) {
    json out;
    out["mode"] = r.mode;
    out["circuit"] = json{
        {"num_qubits", r.num_logical_qubits},
        {"num_clbits", r.num_clbits},
        {"num_instructions", r.num_instructions},
        {"num_two_qubit_ops", r.num_two_qubit_ops},
    };
    out["parameters"] = effective_config_json(r.config, r.resolved_sa_steps);

    out["partition"] = json{
        {"algorithm", to_string(r.algorithm)},
        {"assign", r.partition},
        {"loads", partition_loads(r.partition, r.config.arch.num_qpus)},
        {"boundary_counts", r.boundary},
        {"capacity", r.config.arch.block_size()},
    };
    out["objective"] = json{
        {"total", r.objective.total},
        {"cut_distance_term", r.objective.cut_distance_term},
        {"port_term", r.objective.port_term},
        {"congestion_term", r.objective.congestion_term},
        {"disconnected_pairs", r.objective.disconnected_pairs},
        {"cut_weight", r.cut},
    };

    json traffic = json::array();
    for (int a = 0; a < r.traffic.num_qpus; ++a) {
        json row = json::array();
        for (int b = 0; b < r.traffic.num_qpus; ++b) row.push_back(r.traffic.at(a, b));
        traffic.push_back(row);
    }
    out["traffic_matrix"] = traffic;

    json loads = json::array();
    for (std::size_t id = 0; id < r.links.size(); ++id)
        loads.push_back(json{{"a", r.links[id].a},
                             {"b", r.links[id].b},
                             {"capacity", r.links[id].capacity},
                             {"load", id < r.link_loads.load.size() ? r.link_loads.load[id] : 0.0}});
    out["link_loads"] = loads;
    CongestionStats stats = congestion_stats(r.link_loads);
    out["congestion"] = json{
        {"max_load", stats.max_load},
        {"sum_load", stats.sum_load},
        {"sum_sq_load", stats.sum_sq_load},
    };

    if (r.mode == "partition") return out;  // stage-level report stops here

    out["layout"] = json{
        {"mode", r.config.layout_mode == LayoutMode::TopK ? "top_k" : "diverse"},
        {"phys_of", r.layout.phys_of},
    };

    if (r.mode == "global") {
        // routing-inserted swaps only; source swap gates stay in n_swap
        out["swap_counts"] =
            json{{"total", r.global_routed ? r.global_routed->swap_count : 0}};
        out["remote_events"] = json::array();
    } else if (r.program) {
        json per_qpu = json::array();
        long total = 0;
        for (int s : r.program->swap_counts) {
            per_qpu.push_back(s);
            total += s;
        }
        out["swap_counts"] = json{{"per_qpu", per_qpu}, {"total", total}};

        json events = json::array();
        for (const RemoteEvent& e : r.program->remote_events)
            events.push_back(json{
                {"name", e.name},
                {"operands", e.phys_operands},
                {"endpoints", e.endpoint_qpus},
                {"params", e.params},
                {"clbits", e.clbits},
                {"original_index", e.original_index},
                {"composite", e.composite},
            });
        out["remote_events"] = events;

        json locals = json::array();
        for (int q = 0; q < r.program->num_qpus; ++q) {
            json instructions = json::array();
            for (const Instruction& instr : r.program->locals[q].instructions)
                instructions.push_back(instruction_text(instr));
            locals.push_back(json{{"qpu", q},
                                  {"num_instructions", r.program->locals[q].instructions.size()},
                                  {"instructions", instructions}});
        }
        out["locals"] = locals;
    }

    if (r.schedule) out["schedule"] = schedule_json(*r.schedule);

    out["costs"] = json{
        {"c_local", r.costs.c_local},
        {"c_remote", r.costs.c_remote},
        {"c_total", r.costs.c_total},
        {"n1", r.counts.n1},
        {"n2", r.counts.n2},
        {"n_swap", r.counts.n_swap},
        {"n_remote", r.n_remote},
        {"depth", r.depth},
    };
    return out;
}

}  // namespace modumap
