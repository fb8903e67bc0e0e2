// modumap command-line front end. Talks to the toolkit exclusively through
// the C API so it doubles as a usage example for the shared library.

#include <cstdlib>
#include <fstream>
#include <iostream>
#include <optional>
#include <sstream>
#include <string>

#include <CLI11.hpp>

#include "modumap/modumap.h"

namespace {

// exit codes: 0 ok, 1 parse, 2 config, 3 pipeline
constexpr int kExitParse = 1;
constexpr int kExitConfig = 2;
constexpr int kExitPipeline = 3;

std::optional<std::string> read_file(const std::string& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) return std::nullopt;
    std::ostringstream buffer;
    buffer << in.rdbuf();
    return buffer.str();
}

int write_output(const char* json, const std::string& out_path) {
    std::string text = std::string(json) + "\n";
    if (out_path.empty()) {
        std::cout << text;
        return 0;
    }
    std::ofstream out(out_path, std::ios::binary);
    if (!out) {
        std::cerr << "error: cannot write " << out_path << "\n";
        return kExitPipeline;
    }
    out << text;
    return 0;
}

int report_failure(const char* stage, mm_status status) {
    std::cerr << "error [" << stage << "]: " << mm_last_error() << "\n";
    switch (status) {
        case MM_ERR_PARSE: return kExitParse;
        case MM_ERR_CONFIG: return kExitConfig;
        default: return kExitPipeline;
    }
}

struct CircuitHandle {
    mm_circuit* ptr = nullptr;
    ~CircuitHandle() { mm_circuit_free(ptr); }
};

struct ConfigHandle {
    mm_config* ptr = nullptr;
    ~ConfigHandle() { mm_config_free(ptr); }
};

int load_circuit(const std::string& path, CircuitHandle& circuit) {
    auto text = read_file(path);
    if (!text) {
        std::cerr << "error [circuit]: cannot read " << path << "\n";
        return kExitParse;
    }
    mm_status status = mm_circuit_parse_qasm(text->c_str(), &circuit.ptr);
    if (status != MM_OK) return report_failure("circuit", status);
    return 0;
}

int load_config(const std::string& path, const std::string& algorithm_override,
                ConfigHandle& config) {
    auto text = read_file(path);
    if (!text) {
        std::cerr << "error [config]: cannot read " << path << "\n";
        return kExitConfig;
    }
    mm_status status = mm_config_parse_json(text->c_str(), &config.ptr);
    if (status != MM_OK) return report_failure("config", status);
    if (!algorithm_override.empty()) {
        status = mm_config_set_algorithm(config.ptr, algorithm_override.c_str());
        if (status != MM_OK) return report_failure("config", status);
    }
    // MODUMAP_SEED overrides the configured seed when set
    if (const char* env_seed = std::getenv("MODUMAP_SEED")) {
        char* end = nullptr;
        long long seed = std::strtoll(env_seed, &end, 10);
        if (end == env_seed || *end != '\0') {
            std::cerr << "error [config]: MODUMAP_SEED is not an integer\n";
            return kExitConfig;
        }
        mm_config_set_seed(config.ptr, seed);
    }
    return 0;
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"compilation toolkit for modular multi-QPU architectures"};
    app.require_subcommand(1);

    std::string circuit_path, config_path, out_path, mode = "distributed", algorithm,
                report_path;

    CLI::App* compile = app.add_subcommand("compile", "run a full compilation pipeline");
    compile->add_option("circuit", circuit_path, "OpenQASM 2 subset file")->required();
    compile->add_option("config", config_path, "JSON run configuration")->required();
    compile->add_option("--mode", mode, "global or distributed")
        ->check(CLI::IsMember({"global", "distributed"}));
    compile->add_option("--out", out_path, "write the JSON report here (default stdout)");

    CLI::App* partition = app.add_subcommand("partition", "run partitioning and the objective");
    partition->add_option("circuit", circuit_path, "OpenQASM 2 subset file")->required();
    partition->add_option("config", config_path, "JSON run configuration")->required();
    partition->add_option("--algorithm", algorithm,
                          "heavy_edge, balanced_greedy, tpccap, or tpccap_sa");
    partition->add_option("--out", out_path, "write the JSON report here (default stdout)");

    CLI::App* schedule = app.add_subcommand("schedule", "emit only the schedule estimate");
    schedule->add_option("circuit", circuit_path, "OpenQASM 2 subset file");
    schedule->add_option("config", config_path, "JSON run configuration");
    schedule->add_option("--report", report_path, "read an existing compilation report instead");
    schedule->add_option("--out", out_path, "write the JSON schedule here (default stdout)");

    try {
        app.parse(argc, argv);
    } catch (const CLI::CallForHelp& e) {
        return app.exit(e);
    } catch (const CLI::ParseError& e) {
        app.exit(e);
        return kExitConfig;
    }

    char* json = nullptr;
    mm_status status = MM_OK;

    if (compile->parsed()) {
        CircuitHandle circuit;
        ConfigHandle config;
        if (int rc = load_circuit(circuit_path, circuit)) return rc;
        if (int rc = load_config(config_path, "", config)) return rc;
        status = mm_compile(circuit.ptr, config.ptr, mode.c_str(), &json);
        if (status != MM_OK) return report_failure("compile", status);
    } else if (partition->parsed()) {
        CircuitHandle circuit;
        ConfigHandle config;
        if (int rc = load_circuit(circuit_path, circuit)) return rc;
        if (int rc = load_config(config_path, algorithm, config)) return rc;
        status = mm_partition(circuit.ptr, config.ptr, &json);
        if (status != MM_OK) return report_failure("partition", status);
    } else if (schedule->parsed()) {
        if (!report_path.empty()) {
            auto text = read_file(report_path);
            if (!text) {
                std::cerr << "error [schedule]: cannot read " << report_path << "\n";
                return kExitParse;
            }
            status = mm_schedule_from_report(text->c_str(), &json);
            if (status != MM_OK) return report_failure("schedule", status);
        } else {
            if (circuit_path.empty() || config_path.empty()) {
                std::cerr << "error [schedule]: need either --report or circuit + config\n";
                return kExitConfig;
            }
            CircuitHandle circuit;
            ConfigHandle config;
            if (int rc = load_circuit(circuit_path, circuit)) return rc;
            if (int rc = load_config(config_path, "", config)) return rc;
            status = mm_schedule(circuit.ptr, config.ptr, &json);
            if (status != MM_OK) return report_failure("schedule", status);
        }
    }

    int rc = write_output(json, out_path);
    mm_string_free(json);
    return rc;
}
