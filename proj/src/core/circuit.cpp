#include "core/circuit.hpp"

#include <algorithm>
#include <cctype>
#include <cstdio>
#include <cstdlib>
#include <map>
#include <sstream>

#include "core/error.hpp"

namespace modumap {

namespace {

struct KnownGate {
    int num_qubits;
    int num_params;
};

const std::map<std::string, KnownGate, std::less<>>& known_gates() {
    static const std::map<std::string, KnownGate, std::less<>> table = {
        {"x", {1, 0}},  {"y", {1, 0}},   {"z", {1, 0}},  {"h", {1, 0}},
        {"s", {1, 0}},  {"sdg", {1, 0}}, {"t", {1, 0}},  {"tdg", {1, 0}},
        {"rx", {1, 1}}, {"ry", {1, 1}},  {"rz", {1, 1}}, {"cx", {2, 0}},
        {"cz", {2, 0}}, {"swap", {2, 0}}, {"rzz", {2, 1}},
    };
    return table;
}

[[noreturn]] void syntax_error(int line, const std::string& what) {
    raise(ErrorKind::QasmSyntax, "line " + std::to_string(line) + ": " + what);
}

struct Statement {
    std::string text;
    int line;
};

// Strips // comments and splits on ';', remembering the line each statement
// starts on.
std::vector<Statement> split_statements(std::string_view text) {
    std::vector<Statement> out;
    std::string current;
    int line = 1;
    int stmt_line = 1;
    for (std::size_t i = 0; i < text.size(); ++i) {
        char c = text[i];
        if (c == '/' && i + 1 < text.size() && text[i + 1] == '/') {
            while (i < text.size() && text[i] != '\n') ++i;
            --i;
            continue;
        }
        if (c == '\n') {
            ++line;
            c = ' ';
        }
        if (c == ';') {
            out.push_back({current, stmt_line});
            current.clear();
            stmt_line = line;
            continue;
        }
        if (current.empty() && std::isspace(static_cast<unsigned char>(c))) {
            stmt_line = line;
            continue;
        }
        current.push_back(c);
    }
    std::string tail = current;
    tail.erase(std::remove_if(tail.begin(), tail.end(),
                              [](unsigned char c) { return std::isspace(c); }),
               tail.end());
    if (!tail.empty()) syntax_error(stmt_line, "missing ';' at end of input");
    return out;
}

class StatementScanner {
public:
    StatementScanner(const std::string& s, int line) : s_(s), line_(line) {}

    void skip_ws() {
        while (pos_ < s_.size() && std::isspace(static_cast<unsigned char>(s_[pos_]))) ++pos_;
    }
    bool done() {
        skip_ws();
        return pos_ >= s_.size();
    }
    bool consume(char c) {
        skip_ws();
        if (pos_ < s_.size() && s_[pos_] == c) {
            ++pos_;
            return true;
        }
        return false;
    }
    void expect(char c, const char* context) {
        if (!consume(c))
            syntax_error(line_, std::string("expected '") + c + "' " + context);
    }
    std::string identifier() {
        skip_ws();
        std::size_t start = pos_;
        while (pos_ < s_.size() &&
               (std::isalnum(static_cast<unsigned char>(s_[pos_])) || s_[pos_] == '_'))
            ++pos_;
        if (pos_ == start) syntax_error(line_, "expected identifier");
        return s_.substr(start, pos_ - start);
    }
    long integer() {
        skip_ws();
        std::size_t start = pos_;
        while (pos_ < s_.size() && std::isdigit(static_cast<unsigned char>(s_[pos_]))) ++pos_;
        if (pos_ == start) syntax_error(line_, "expected integer");
        return std::strtol(s_.c_str() + start, nullptr, 10);
    }
    double real() {
        skip_ws();
        const char* begin = s_.c_str() + pos_;
        char* end = nullptr;
        double v = std::strtod(begin, &end);
        if (end == begin) syntax_error(line_, "expected numeric parameter");
        pos_ += static_cast<std::size_t>(end - begin);
        return v;
    }
    bool peek_is(char c) {
        skip_ws();
        return pos_ < s_.size() && s_[pos_] == c;
    }
    int line() const { return line_; }

private:
    const std::string& s_;
    int line_;
    std::size_t pos_ = 0;
};

}  // namespace

Circuit parse_qasm(std::string_view text) {
    Circuit circuit;
    bool have_qreg = false;
    bool have_creg = false;
    std::string qreg_name;
    std::string creg_name;

    auto parse_qubit_operand = [&](StatementScanner& sc) {
        std::string reg = sc.identifier();
        if (!have_qreg || reg != qreg_name)
            syntax_error(sc.line(), "unknown quantum register '" + reg + "'");
        sc.expect('[', "before qubit index");
        long idx = sc.integer();
        sc.expect(']', "after qubit index");
        if (idx < 0 || idx >= circuit.num_qubits)
            raise(ErrorKind::QasmIndexRange,
                  "line " + std::to_string(sc.line()) + ": qubit index " + std::to_string(idx) +
                      " out of range [0, " + std::to_string(circuit.num_qubits) + ")");
        return static_cast<int>(idx);
    };

    for (const Statement& stmt : split_statements(text)) {
        StatementScanner sc(stmt.text, stmt.line);
        if (sc.done()) continue;
        std::string head = sc.identifier();

        if (head == "OPENQASM") {
            sc.real();  // version, unused
            continue;
        }
        if (head == "include") {
            continue;  // header line, contents ignored
        }
        if (head == "qreg" || head == "creg") {
            bool is_q = head == "qreg";
            if ((is_q && have_qreg) || (!is_q && have_creg))
                raise(ErrorKind::QasmDuplicateRegister,
                      "line " + std::to_string(stmt.line) + ": more than one " + head);
            std::string name = sc.identifier();
            sc.expect('[', "in register declaration");
            long n = sc.integer();
            sc.expect(']', "in register declaration");
            if (is_q) {
                have_qreg = true;
                qreg_name = name;
                circuit.num_qubits = static_cast<int>(n);
            } else {
                have_creg = true;
                creg_name = name;
                circuit.num_clbits = static_cast<int>(n);
            }
            continue;
        }

        Instruction instr;
        instr.name = head;
        instr.original_index = static_cast<long>(circuit.instructions.size());

        if (head == "barrier") {
            // "barrier;" with no operands means all qubits
            while (!sc.done()) {
                instr.qubits.push_back(parse_qubit_operand(sc));
                if (!sc.consume(',')) break;
            }
        } else if (head == "measure") {
            instr.qubits.push_back(parse_qubit_operand(sc));
            sc.expect('-', "in measure statement");
            sc.expect('>', "in measure statement");
            std::string reg = sc.identifier();
            if (!have_creg || reg != creg_name)
                syntax_error(stmt.line, "unknown classical register '" + reg + "'");
            sc.expect('[', "before clbit index");
            long cidx = sc.integer();
            sc.expect(']', "after clbit index");
            if (cidx < 0 || cidx >= circuit.num_clbits)
                raise(ErrorKind::QasmIndexRange,
                      "line " + std::to_string(stmt.line) + ": clbit index " +
                          std::to_string(cidx) + " out of range");
            instr.clbits.push_back(static_cast<int>(cidx));
        } else {
            if (!have_qreg) syntax_error(stmt.line, "gate statement before qreg");
            if (sc.consume('(')) {
                while (true) {
                    instr.params.push_back(sc.real());
                    if (sc.consume(',')) continue;
                    break;
                }
                sc.expect(')', "after gate parameters");
            }
            while (true) {
                instr.qubits.push_back(parse_qubit_operand(sc));
                if (!sc.consume(',')) break;
            }
            auto it = known_gates().find(head);
            if (it != known_gates().end()) {
                if (static_cast<int>(instr.qubits.size()) != it->second.num_qubits)
                    syntax_error(stmt.line, "gate '" + head + "' takes " +
                                                std::to_string(it->second.num_qubits) +
                                                " qubit operand(s)");
                if (static_cast<int>(instr.params.size()) != it->second.num_params)
                    syntax_error(stmt.line, "gate '" + head + "' takes " +
                                                std::to_string(it->second.num_params) +
                                                " parameter(s)");
            } else {
                if (instr.qubits.size() != 1 && instr.qubits.size() != 2)
                    syntax_error(stmt.line,
                                 "unknown gate '" + head + "' must have 1 or 2 qubit operands");
            }
        }
        if (!sc.done()) syntax_error(stmt.line, "trailing characters in statement");

        // operands must be pairwise distinct
        for (std::size_t i = 0; i < instr.qubits.size(); ++i)
            for (std::size_t j = i + 1; j < instr.qubits.size(); ++j)
                if (instr.qubits[i] == instr.qubits[j])
                    syntax_error(stmt.line, "duplicate qubit operand in '" + head + "'");

        circuit.instructions.push_back(std::move(instr));
    }
    if (!have_qreg && !circuit.instructions.empty())
        raise(ErrorKind::QasmSyntax, "no qreg declared");
    return circuit;
}

std::string to_qasm(const Circuit& c) {
    std::ostringstream out;
    out << "OPENQASM 2.0;\n";
    out << "include \"qelib1.inc\";\n";
    out << "qreg q[" << c.num_qubits << "];\n";
    if (c.num_clbits > 0) out << "creg c[" << c.num_clbits << "];\n";
    char buf[64];
    for (const Instruction& instr : c.instructions) {
        if (instr.is_measure()) {
            out << "measure q[" << instr.qubits.at(0) << "] -> c[" << instr.clbits.at(0) << "];\n";
            continue;
        }
        out << instr.name;
        if (!instr.params.empty()) {
            out << '(';
            for (std::size_t i = 0; i < instr.params.size(); ++i) {
                if (i) out << ',';
                std::snprintf(buf, sizeof buf, "%.17g", instr.params[i]);
                out << buf;
            }
            out << ')';
        }
        for (std::size_t i = 0; i < instr.qubits.size(); ++i) {
            out << (i ? "," : " ") << "q[" << instr.qubits[i] << ']';
        }
        out << ";\n";
    }
    return out.str();
}

std::vector<TwoQubitOp> two_qubit_ops(const Circuit& c) {
    std::vector<TwoQubitOp> ops;
    for (std::size_t k = 0; k < c.instructions.size(); ++k) {
        const Instruction& instr = c.instructions[k];
        if (instr.qubits.size() != 2 || instr.is_barrier() || instr.is_measure()) continue;
        int a = instr.qubits[0];
        int b = instr.qubits[1];
        ops.push_back({k, std::min(a, b), std::max(a, b)});
    }
    return ops;
}

GateCounts gate_counts(const Circuit& c) {
    GateCounts counts;
    for (const Instruction& instr : c.instructions) {
        if (instr.is_barrier()) continue;
        if (instr.qubits.size() == 1) {
            ++counts.n1;
        } else if (instr.qubits.size() == 2) {
            if (instr.name == "swap")
                ++counts.n_swap;
            else
                ++counts.n2;
        }
    }
    return counts;
}

int circuit_depth(const Circuit& c) {
    std::vector<int> next(static_cast<std::size_t>(c.num_qubits), 0);
    int depth = 0;
    for (const Instruction& instr : c.instructions) {
        if (instr.is_barrier()) {
            int boundary = 0;
            if (instr.qubits.empty()) {
                for (int v : next) boundary = std::max(boundary, v);
                for (int& v : next) v = boundary;
            } else {
                for (int q : instr.qubits) boundary = std::max(boundary, next[q]);
                for (int q : instr.qubits) next[q] = boundary;
            }
            continue;
        }
        int layer = 0;
        for (int q : instr.qubits) layer = std::max(layer, next[q]);
        for (int q : instr.qubits) next[q] = layer + 1;
        depth = std::max(depth, layer + 1);
    }
    return depth;
}

bool operator==(const Instruction& a, const Instruction& b) {
    return a.name == b.name && a.qubits == b.qubits && a.params == b.params &&
           a.clbits == b.clbits && a.original_index == b.original_index;
}

bool operator==(const Circuit& a, const Circuit& b) {
    return a.num_qubits == b.num_qubits && a.num_clbits == b.num_clbits &&
           a.instructions == b.instructions;
}

}  // namespace modumap
