#pragma once

#include <stdexcept>
#include <string>

namespace modumap {

// Every failure surfaced by the toolkit carries one of these kinds so that
// callers (and the C API) can tell validation classes apart without string
// matching.
enum class ErrorKind {
    // circuit / QASM ingestion
    QasmSyntax,
    QasmIndexRange,
    QasmDuplicateRegister,
    // configuration
    Config,
    // input validation
    InvalidIndex,
    NonFiniteWeight,
    NegativeWeight,
    DemandExceedsCapacity,
    InvalidParameter,
    InvalidTrafficMatrix,
    InvalidDistanceTable,
    // layout
    LayoutNotInjective,
    LayoutQpuMismatch,
    LayoutIncomplete,
    LayoutOverflow,
    // routing / scheduling
    RoutingDisconnected,
    RoutingInvalid,
    ScheduleInfeasible,
    // generic pipeline failure
    Pipeline,
};

class Error : public std::runtime_error {
public:
    Error(ErrorKind kind, const std::string& message)
        : std::runtime_error(message), kind_(kind) {}

    ErrorKind kind() const { return kind_; }

private:
    ErrorKind kind_;
};

[[noreturn]] inline void raise(ErrorKind kind, const std::string& message) {
    throw Error(kind, message);
}

}  // namespace modumap
