#include "core/config.hpp"

#include <cmath>
#include <set>

#include "core/error.hpp"

namespace modumap {

using nlohmann::json;

namespace {

[[noreturn]] void config_error(const std::string& path, const std::string& what) {
    raise(ErrorKind::Config, path + ": " + what);
}

// Wraps one JSON object and tracks which keys were consumed so typos fail
// loudly instead of silently using a default.
class Section {
public:
    Section(json j, std::string path) : j_(std::move(j)), path_(std::move(path)) {
        if (!j_.is_object()) config_error(path_, "must be a JSON object");
    }
    ~Section() = default;

    void finish() const {
        for (auto it = j_.begin(); it != j_.end(); ++it)
            if (!seen_.count(it.key())) config_error(path_ + "." + it.key(), "unknown key");
    }

    bool has(const std::string& key) const { return j_.contains(key) && !j_[key].is_null(); }

    const json* get(const std::string& key) {
        seen_.insert(key);
        if (!j_.contains(key) || j_[key].is_null()) return nullptr;
        return &j_[key];
    }

    long integer(const std::string& key, long fallback, long min, long max) {
        const json* v = get(key);
        if (!v) return fallback;
        if (!v->is_number_integer())
            config_error(path_ + "." + key, "must be an integer");
        long value = v->get<long>();
        if (value < min || value > max)
            config_error(path_ + "." + key, "must be in [" + std::to_string(min) + ", " +
                                                std::to_string(max) + "]");
        return value;
    }

    double real(const std::string& key, double fallback, double min, double max) {
        const json* v = get(key);
        if (!v) return fallback;
        if (!v->is_number()) config_error(path_ + "." + key, "must be a number");
        double value = v->get<double>();
        if (!std::isfinite(value) || value < min || value > max)
            config_error(path_ + "." + key, "must be finite and in [" + std::to_string(min) +
                                                ", " + std::to_string(max) + "]");
        return value;
    }

    std::string text(const std::string& key, const std::string& fallback) {
        const json* v = get(key);
        if (!v) return fallback;
        if (!v->is_string()) config_error(path_ + "." + key, "must be a string");
        return v->get<std::string>();
    }

    const std::string& path() const { return path_; }

private:
    json j_;
    std::string path_;
    std::set<std::string> seen_;
};

json empty_object() { return json::object(); }

}  // namespace

std::string to_string(PartitionerAlgorithm algorithm) {
    switch (algorithm) {
        case PartitionerAlgorithm::HeavyEdge: return "heavy_edge";
        case PartitionerAlgorithm::BalancedGreedy: return "balanced_greedy";
        case PartitionerAlgorithm::Tpccap: return "tpccap";
        case PartitionerAlgorithm::TpccapSa: return "tpccap_sa";
    }
    return "tpccap";
}

PartitionerAlgorithm parse_algorithm(const std::string& name) {
    if (name == "heavy_edge") return PartitionerAlgorithm::HeavyEdge;
    if (name == "balanced_greedy") return PartitionerAlgorithm::BalancedGreedy;
    if (name == "tpccap") return PartitionerAlgorithm::Tpccap;
    if (name == "tpccap_sa") return PartitionerAlgorithm::TpccapSa;
    raise(ErrorKind::Config, "partitioner.algorithm: unknown algorithm '" + name + "'");
}

RunConfig load_run_config(const std::string& json_text) {
    json doc;
    try {
        doc = json::parse(json_text);
    } catch (const json::parse_error& e) {
        raise(ErrorKind::Config, std::string("config is not valid JSON: ") + e.what());
    }
    if (!doc.is_object()) raise(ErrorKind::Config, "config root must be a JSON object");

    RunConfig cfg;
    Section root(doc, "config");

    {
        const json* a = root.get("architecture");
        Section arch(a ? *a : empty_object(), "architecture");
        cfg.arch.num_qpus = static_cast<int>(arch.integer("num_qpus", 1, 1, 1 << 20));
        cfg.arch.compute_per_qpu =
            static_cast<int>(arch.integer("compute_per_qpu", 1, 1, 1 << 20));
        cfg.arch.comm_per_qpu = static_cast<int>(arch.integer("comm_per_qpu", 0, 0, 1 << 20));
        std::string local = arch.text("local_topology", "line");
        if (local == "clique") cfg.arch.local_topology = LocalTopology::Clique;
        else if (local == "line") cfg.arch.local_topology = LocalTopology::Line;
        else if (local == "ring") cfg.arch.local_topology = LocalTopology::Ring;
        else if (local == "grid") cfg.arch.local_topology = LocalTopology::Grid;
        else config_error("architecture.local_topology", "unknown topology '" + local + "'");
        cfg.arch.grid_rows = static_cast<int>(arch.integer("grid_rows", 0, 0, 1 << 20));
        cfg.arch.grid_cols = static_cast<int>(arch.integer("grid_cols", 0, 0, 1 << 20));
        if (cfg.arch.local_topology == LocalTopology::Grid &&
            cfg.arch.grid_rows * cfg.arch.grid_cols != cfg.arch.block_size())
            config_error("architecture.grid_rows",
                         "grid_rows * grid_cols must equal compute_per_qpu + comm_per_qpu");

        std::string qpu = arch.text("qpu_topology", "mesh");
        if (qpu == "switch") cfg.qpu_topology = QpuTopologyKind::Switch;
        else if (qpu == "mesh") cfg.qpu_topology = QpuTopologyKind::Mesh;
        else if (qpu == "ring") cfg.qpu_topology = QpuTopologyKind::Ring;
        else if (qpu == "degree_bounded") cfg.qpu_topology = QpuTopologyKind::DegreeBounded;
        else if (qpu == "clos") cfg.qpu_topology = QpuTopologyKind::Clos;
        else if (qpu == "fat_tree") cfg.qpu_topology = QpuTopologyKind::FatTree;
        else config_error("architecture.qpu_topology", "unknown topology '" + qpu + "'");

        cfg.qpu_params.degree = static_cast<int>(arch.integer("degree", 2, 1, 1 << 20));
        cfg.qpu_params.mid_switches =
            static_cast<int>(arch.integer("mid_switches", 1, 1, 1 << 20));
        cfg.qpu_params.levels = static_cast<int>(arch.integer("levels", 1, 1, 64));
        cfg.qpu_params.link_capacity = arch.real("link_capacity", 1.0, 1e-12, 1e18);
        if (arch.has("switch_pair_limit"))
            cfg.qpu_params.switch_pair_limit =
                static_cast<int>(arch.integer("switch_pair_limit", 1, 1, 1 << 20));
        else
            arch.get("switch_pair_limit");
        cfg.qpu_params.switch_reconfig_delay = arch.real("switch_reconfig_delay", 0.0, 0.0, 1e18);
        arch.finish();
    }

    {
        const json* p = root.get("partitioner");
        Section part(p ? *p : empty_object(), "partitioner");
        cfg.algorithm = parse_algorithm(part.text("algorithm", "tpccap"));
        cfg.objective.alpha = part.real("alpha", 1.0, 0.0, 1e18);
        cfg.objective.beta = part.real("beta", 1.0, 0.0, 1e18);
        cfg.objective.eta = part.real("eta", 0.5, 0.0, 1e18);
        cfg.lambda = part.real("lambda", 0.25, 0.0, 1e18);
        std::string mode = part.text("routing_mode", "single_path");
        if (mode == "single_path") cfg.objective.routing_mode = RoutingMode::SinglePath;
        else if (mode == "ecmp") cfg.objective.routing_mode = RoutingMode::Ecmp;
        else config_error("partitioner.routing_mode", "must be 'single_path' or 'ecmp'");
        cfg.objective.disconnected_penalty =
            part.real("disconnected_penalty", 1e12, 0.0, 1e300);
        cfg.seed = static_cast<std::uint64_t>(
            part.integer("seed", 0, std::numeric_limits<long>::min() / 2,
                         std::numeric_limits<long>::max() / 2));
        cfg.pass_limit = static_cast<int>(part.integer("pass_limit", 20, 1, 1 << 20));

        const json* s = part.get("sa");
        Section sa(s ? *s : empty_object(), "partitioner.sa");
        if (sa.has("initial_temp"))
            cfg.sa_initial_temp = sa.real("initial_temp", 1.0, 1e-300, 1e300);
        else
            sa.get("initial_temp");
        cfg.sa_cooling = sa.real("cooling", 0.995, 1e-12, 1.0 - 1e-12);
        if (sa.has("steps")) cfg.sa_steps = sa.integer("steps", 0, 0, 1L << 40);
        else sa.get("steps");
        sa.finish();
        part.finish();
    }

    {
        const json* l = root.get("layout");
        Section layout(l ? *l : empty_object(), "layout");
        std::string mode = layout.text("mode", "top_k");
        if (mode == "top_k") cfg.layout_mode = LayoutMode::TopK;
        else if (mode == "diverse") cfg.layout_mode = LayoutMode::Diverse;
        else config_error("layout.mode", "must be 'top_k' or 'diverse'");
        layout.finish();
    }

    {
        const json* c = root.get("cost");
        Section cost(c ? *c : empty_object(), "cost");
        cfg.cost.tau_1 = cost.real("tau_1", 1.0, 0.0, 1e18);
        cfg.cost.tau_2 = cost.real("tau_2", 2.0, 0.0, 1e18);
        cfg.cost.tau_swap = cost.real("tau_swap", 6.0, 0.0, 1e18);
        cfg.cost.tau_e = cost.real("tau_e", 1.0, 0.0, 1e18);
        cfg.cost.tau_c = cost.real("tau_c", 1.0, 0.0, 1e18);
        cfg.cost.tau_r = cost.real("tau_r", 0.5, 0.0, 1e18);
        cfg.cost.rho = cost.real("rho", 0.0, 0.0, 1.0);
        cfg.gamma = cost.real("gamma", 1.0, 1e-12, 1.0);
        cost.finish();
    }
    root.finish();
    return cfg;
}

nlohmann::json effective_config_json(const RunConfig& cfg,
                                     std::optional<long> resolved_sa_steps) {
    json arch{
        {"num_qpus", cfg.arch.num_qpus},
        {"compute_per_qpu", cfg.arch.compute_per_qpu},
        {"comm_per_qpu", cfg.arch.comm_per_qpu},
        {"grid_rows", cfg.arch.grid_rows},
        {"grid_cols", cfg.arch.grid_cols},
        {"link_capacity", cfg.qpu_params.link_capacity},
        {"switch_reconfig_delay", cfg.qpu_params.switch_reconfig_delay},
        {"degree", cfg.qpu_params.degree},
        {"mid_switches", cfg.qpu_params.mid_switches},
        {"levels", cfg.qpu_params.levels},
    };
    switch (cfg.arch.local_topology) {
        case LocalTopology::Clique: arch["local_topology"] = "clique"; break;
        case LocalTopology::Line: arch["local_topology"] = "line"; break;
        case LocalTopology::Ring: arch["local_topology"] = "ring"; break;
        case LocalTopology::Grid: arch["local_topology"] = "grid"; break;
    }
    switch (cfg.qpu_topology) {
        case QpuTopologyKind::Switch: arch["qpu_topology"] = "switch"; break;
        case QpuTopologyKind::Mesh: arch["qpu_topology"] = "mesh"; break;
        case QpuTopologyKind::Ring: arch["qpu_topology"] = "ring"; break;
        case QpuTopologyKind::DegreeBounded: arch["qpu_topology"] = "degree_bounded"; break;
        case QpuTopologyKind::Clos: arch["qpu_topology"] = "clos"; break;
        case QpuTopologyKind::FatTree: arch["qpu_topology"] = "fat_tree"; break;
    }
    if (cfg.qpu_params.switch_pair_limit)
        arch["switch_pair_limit"] = *cfg.qpu_params.switch_pair_limit;
    else
        arch["switch_pair_limit"] = nullptr;

    json sa{{"cooling", cfg.sa_cooling}};
    if (cfg.sa_initial_temp) sa["initial_temp"] = *cfg.sa_initial_temp;
    else sa["initial_temp"] = nullptr;
    if (resolved_sa_steps) sa["steps"] = *resolved_sa_steps;
    else if (cfg.sa_steps) sa["steps"] = *cfg.sa_steps;
    else sa["steps"] = nullptr;

    json partitioner{
        {"algorithm", to_string(cfg.algorithm)},
        {"alpha", cfg.objective.alpha},
        {"beta", cfg.objective.beta},
        {"eta", cfg.objective.eta},
        {"lambda", cfg.lambda},
        {"routing_mode",
         cfg.objective.routing_mode == RoutingMode::SinglePath ? "single_path" : "ecmp"},
        {"disconnected_penalty", cfg.objective.disconnected_penalty},
        {"seed", static_cast<long>(cfg.seed)},
        {"pass_limit", cfg.pass_limit},
        {"sa", sa},
    };

    json cost{
        {"tau_1", cfg.cost.tau_1},   {"tau_2", cfg.cost.tau_2},
        {"tau_swap", cfg.cost.tau_swap}, {"tau_e", cfg.cost.tau_e},
        {"tau_c", cfg.cost.tau_c},   {"tau_r", cfg.cost.tau_r},
        {"rho", cfg.cost.rho},       {"gamma", cfg.gamma},
    };

    return json{
        {"architecture", arch},
        {"partitioner", partitioner},
        {"layout", {{"mode", cfg.layout_mode == LayoutMode::TopK ? "top_k" : "diverse"}}},
        {"cost", cost},
    };
}

}  // namespace modumap
