/*
 * modumap C API: compilation toolkit for modular multi-QPU architectures.
 *
 * All functions return a status code; out-parameters are written only on
 * MM_OK. Handles are opaque and must be released with the matching _free
 * function. Strings returned through char** out-parameters are owned by the
 * caller and released with mm_string_free. Error details for the most recent
 * failing call on the current thread are available via mm_last_error.
 */
#ifndef MODUMAP_H
#define MODUMAP_H

#ifdef __cplusplus
extern "C" {
#endif

typedef struct mm_circuit mm_circuit;
typedef struct mm_config mm_config;

typedef enum mm_status {
    MM_OK = 0,
    MM_ERR_PARSE = 1,    /* circuit or report text could not be parsed */
    MM_ERR_CONFIG = 2,   /* invalid configuration or unknown option */
    MM_ERR_PIPELINE = 3, /* a compilation stage failed validation */
    MM_ERR_ARGUMENT = 4, /* null handle or invalid argument */
} mm_status;

const char* mm_version(void);

/* Thread-local message for the most recent failure; never NULL. */
const char* mm_last_error(void);

void mm_string_free(char* s);

/* --- circuits ---------------------------------------------------------- */

/* Parses the supported OpenQASM 2 subset. */
mm_status mm_circuit_parse_qasm(const char* text, mm_circuit** out);
void mm_circuit_free(mm_circuit* c);
int mm_circuit_num_qubits(const mm_circuit* c);
int mm_circuit_num_instructions(const mm_circuit* c);

/* --- configuration ------------------------------------------------------ */

/* Loads a JSON run configuration; missing fields take documented defaults. */
mm_status mm_config_parse_json(const char* text, mm_config** out);
void mm_config_free(mm_config* c);
mm_status mm_config_set_seed(mm_config* c, long long seed);
mm_status mm_config_set_algorithm(mm_config* c, const char* name);

/* --- pipelines ---------------------------------------------------------- */

/* mode is "global" or "distributed"; *report_json receives canonical JSON. */
mm_status mm_compile(const mm_circuit* circuit, const mm_config* config, const char* mode,
                     char** report_json);

/* Weight extraction + partitioner + objective only. */
mm_status mm_partition(const mm_circuit* circuit, const mm_config* config, char** report_json);

/* Distributed compilation, emitting only the schedule object. */
mm_status mm_schedule(const mm_circuit* circuit, const mm_config* config, char** schedule_json);

/* Extracts the schedule object from an existing compilation report. */
mm_status mm_schedule_from_report(const char* report_json, char** schedule_json);

#ifdef __cplusplus
}
#endif

#endif /* MODUMAP_H */
