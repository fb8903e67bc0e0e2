#pragma once

#include <optional>
#include <string>
#include <string_view>
#include <vector>

namespace modumap {

// One gate, measurement, or barrier. A barrier with an empty qubit list
// spans all qubits of its circuit.
struct Instruction {
    std::string name;
    std::vector<int> qubits;
    std::vector<double> params;
    std::vector<int> clbits;
    long original_index = -1;  // position in the source circuit, -1 if unset

    bool is_barrier() const { return name == "barrier"; }
    bool is_measure() const { return name == "measure"; }
};

// Ordered instruction list over a fixed number of qubits. The same type
// serves logical circuits, physically mapped circuits, and per-QPU local
// circuits; only the index space differs.
struct Circuit {
    int num_qubits = 0;
    int num_clbits = 0;
    std::vector<Instruction> instructions;

    Instruction& add(Instruction instr) {
        instructions.push_back(std::move(instr));
        return instructions.back();
    }
    Instruction& add_gate(std::string name, std::vector<int> qubits,
                          std::vector<double> params = {}, long original_index = -1) {
        return add({std::move(name), std::move(qubits), std::move(params), {}, original_index});
    }
    std::size_t size() const { return instructions.size(); }
};

struct TwoQubitOp {
    std::size_t instruction_index;
    int a, b;  // canonical, a < b
};

struct GateCounts {
    long n1 = 0;      // single-qubit instructions (barriers excluded)
    long n2 = 0;      // two-qubit instructions other than swap
    long n_swap = 0;  // instructions named "swap"
};

// Parses the supported OpenQASM 2 subset: header lines, one qreg, at most
// one creg, gate statements, measure, barrier. `//` comments are ignored.
// Unknown gate names with 1 or 2 operands are accepted verbatim.
Circuit parse_qasm(std::string_view text);

// Serializes back into the same subset; parse_qasm(to_qasm(c)) == c.
std::string to_qasm(const Circuit& c);

// All instructions with exactly two qubit operands, excluding barriers and
// measurements, in circuit order, with canonical (min, max) pairs.
std::vector<TwoQubitOp> two_qubit_ops(const Circuit& c);

GateCounts gate_counts(const Circuit& c);

// Dependency depth: non-barrier instructions occupy layers, barriers only
// force a boundary across their operands (all qubits when the list is empty).
int circuit_depth(const Circuit& c);

bool operator==(const Instruction& a, const Instruction& b);
bool operator==(const Circuit& a, const Circuit& b);

}  // namespace modumap
