#pragma once

#include <stdexcept>
#include <string>

namespace fermatzeta {

/// Failure classes, mapped one-to-one onto CLI exit codes.
enum class ErrorKind {
    invalid_argument,  // malformed input (exit 1)
    gate,              // family/field/parameter rejected before computing (exit 2)
    convergence,       // series or precision control gave up (exit 3)
    verification,      // an oracle disagreed with the pipeline (exit 4)
};

class Error : public std::runtime_error {
public:
    Error(ErrorKind kind, std::string name, const std::string& message)
        : std::runtime_error(name + ": " + message), kind_(kind), name_(std::move(name)) {}

    ErrorKind kind() const noexcept { return kind_; }
    /// Short machine-readable tag, e.g. "DenominatorNotInvertible".
    const std::string& name() const noexcept { return name_; }

private:
    ErrorKind kind_;
    std::string name_;
};

inline int exit_code(ErrorKind kind) {
    switch (kind) {
    case ErrorKind::invalid_argument: return 1;
    case ErrorKind::gate: return 2;
    case ErrorKind::convergence: return 3;
    case ErrorKind::verification: return 4;
    }
    return 1;
}

}  // namespace fermatzeta
