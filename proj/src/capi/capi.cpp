#include "modumap/modumap.h"

#include <cstring>
#include <new>
#include <string>

#include "core/config.hpp"
#include "core/error.hpp"
#include "core/pipeline.hpp"
#include "core/report.hpp"

struct mm_circuit {
    modumap::Circuit circuit;
};

struct mm_config {
    modumap::RunConfig config;
};

namespace {

thread_local std::string g_last_error = "ok";

mm_status status_for(const modumap::Error& e) {
    using modumap::ErrorKind;
    switch (e.kind()) {
        case ErrorKind::QasmSyntax:
        case ErrorKind::QasmIndexRange:
        case ErrorKind::QasmDuplicateRegister:
            return MM_ERR_PARSE;
        case ErrorKind::Config:
            return MM_ERR_CONFIG;
        default:
            return MM_ERR_PIPELINE;
    }
}

mm_status fail(mm_status status, const std::string& message) {
    g_last_error = message;
    return status;
}

template <typename Fn>
mm_status guarded(Fn&& fn) {
    try {
        return fn();
    } catch (const modumap::Error& e) {
        return fail(status_for(e), e.what());
    } catch (const std::bad_alloc&) {
        return fail(MM_ERR_PIPELINE, "out of memory");
    } catch (const std::exception& e) {
        return fail(MM_ERR_PIPELINE, e.what());
    }
}

char* copy_string(const std::string& s) {
    char* out = new char[s.size() + 1];
    std::memcpy(out, s.c_str(), s.size() + 1);
    return out;
}

}  // namespace

extern "C" {

const char* mm_version(void) { return "1.0.0"; }

const char* mm_last_error(void) { return g_last_error.c_str(); }

void mm_string_free(char* s) { delete[] s; }

mm_status mm_circuit_parse_qasm(const char* text, mm_circuit** out) {
    if (!text || !out) return fail(MM_ERR_ARGUMENT, "null argument");
    return guarded([&] {
        auto* handle = new mm_circuit{modumap::parse_qasm(text)};
        *out = handle;
        return MM_OK;
    });
}

void mm_circuit_free(mm_circuit* c) { delete c; }

int mm_circuit_num_qubits(const mm_circuit* c) { return c ? c->circuit.num_qubits : -1; }

int mm_circuit_num_instructions(const mm_circuit* c) {
    return c ? static_cast<int>(c->circuit.instructions.size()) : -1;
}

mm_status mm_config_parse_json(const char* text, mm_config** out) {
    if (!text || !out) return fail(MM_ERR_ARGUMENT, "null argument");
    return guarded([&] {
        auto* handle = new mm_config{modumap::load_run_config(text)};
        *out = handle;
        return MM_OK;
    });
}

void mm_config_free(mm_config* c) { delete c; }

mm_status mm_config_set_seed(mm_config* c, long long seed) {
    if (!c) return fail(MM_ERR_ARGUMENT, "null config");
    c->config.seed = static_cast<std::uint64_t>(seed);
    return MM_OK;
}

mm_status mm_config_set_algorithm(mm_config* c, const char* name) {
    if (!c || !name) return fail(MM_ERR_ARGUMENT, "null argument");
    return guarded([&] {
        c->config.algorithm = modumap::parse_algorithm(name);
        return MM_OK;
    });
}

mm_status mm_compile(const mm_circuit* circuit, const mm_config* config, const char* mode,
                     char** report_json) {
    if (!circuit || !config || !mode || !report_json)
        return fail(MM_ERR_ARGUMENT, "null argument");
    return guarded([&] {
        modumap::CompilationResult result =
            modumap::run_compile(circuit->circuit, config->config, mode);
        *report_json = copy_string(modumap::canonical_dump(modumap::report_json(result)));
        return MM_OK;
    });
}

mm_status mm_partition(const mm_circuit* circuit, const mm_config* config, char** report_json) {
    if (!circuit || !config || !report_json) return fail(MM_ERR_ARGUMENT, "null argument");
    return guarded([&] {
        modumap::CompilationResult result =
            modumap::run_partition_stage(circuit->circuit, config->config);
        *report_json = copy_string(modumap::canonical_dump(modumap::report_json(result)));
        return MM_OK;
    });
}

mm_status mm_schedule(const mm_circuit* circuit, const mm_config* config, char** schedule_json) {
    if (!circuit || !config || !schedule_json) return fail(MM_ERR_ARGUMENT, "null argument");
    return guarded([&] {
        modumap::CompilationResult result =
            modumap::compile_distributed(circuit->circuit, config->config);
        *schedule_json =
            copy_string(modumap::canonical_dump(modumap::schedule_json(*result.schedule)));
        return MM_OK;
    });
}

mm_status mm_schedule_from_report(const char* report_json, char** schedule_json) {
    if (!report_json || !schedule_json) return fail(MM_ERR_ARGUMENT, "null argument");
    try {
        nlohmann::json doc = nlohmann::json::parse(report_json);
        if (!doc.is_object() || !doc.contains("schedule") || !doc["schedule"].is_object())
            return fail(MM_ERR_PARSE, "report has no schedule object");
        *schedule_json = copy_string(modumap::canonical_dump(doc["schedule"]));
        return MM_OK;
    } catch (const nlohmann::json::parse_error& e) {
        return fail(MM_ERR_PARSE, std::string("malformed report: ") + e.what());
    } catch (const std::exception& e) {
        return fail(MM_ERR_PIPELINE, e.what());
    }
}

}  // extern "C"
