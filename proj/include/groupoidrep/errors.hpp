#pragma once

#include <stdexcept>
#include <string>
#include <vector>

namespace groupoidrep {

/// Malformed input: table indices out of range, shape mismatches.
class StructuralError : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

/// Input violates an algebraic axiom a constructor relies on.
class ValidationError : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

/// An operation was called outside its precondition.
class PreconditionError : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

/// Numerical rank or clustering could not be resolved.
class NumericalError : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

/// Outcome of a check. `witness` holds the arrow/object/element ids that
/// exhibit the first violation found.
struct Report {
    bool ok = true;
    std::string what;
    std::vector<int> witness;
    double residual = 0.0;

    static Report pass(double residual = 0.0) { return Report{true, {}, {}, residual}; }
    static Report fail(std::string what, std::vector<int> witness = {}, double residual = 0.0) {
        return Report{false, std::move(what), std::move(witness), residual};
    }
};

}  // namespace groupoidrep
