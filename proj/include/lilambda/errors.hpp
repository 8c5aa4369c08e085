#pragma once

#include <stdexcept>
#include <string>

namespace lilambda {

/// Argument outside the documented domain of an operation.
struct InvalidArgument : std::invalid_argument {
    using std::invalid_argument::invalid_argument;
};

/// Evaluation point outside the region where the quantity is defined
/// (e.g. the secondary zeta series at Re s <= 1/2).
struct DomainError : std::domain_error {
    using std::domain_error::domain_error;
};

/// Working precision too low for an ill-conditioned alternating sum.
struct PrecisionError : std::runtime_error {
    using std::runtime_error::runtime_error;
};

/// Object is not in a state that allows the operation (empty catalog, ...).
struct InvalidState : std::logic_error {
    using std::logic_error::logic_error;
};

/// Malformed input file. Carries the 1-based line number.
struct FormatError : std::runtime_error {
    FormatError(const std::string& what, std::size_t line)
        : std::runtime_error(what + " (line " + std::to_string(line) + ")"), line_(line) {}
    [[nodiscard]] std::size_t line() const noexcept { return line_; }

private:
    std::size_t line_;
};

/// Well-formed input violating a data invariant (ordering, positivity).
struct ValidationError : std::runtime_error {
    using std::runtime_error::runtime_error;
};

/// Failure of an internal numerical procedure that should not happen for valid input.
struct InternalError : std::runtime_error {
    using std::runtime_error::runtime_error;
};

}  // namespace lilambda
