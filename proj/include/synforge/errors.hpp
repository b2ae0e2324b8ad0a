#pragma once

#include <stdexcept>
#include <string>

namespace synforge {

// Operand sizes do not match (vector lengths, matrix shapes).
struct DimensionError : std::invalid_argument {
    using std::invalid_argument::invalid_argument;
};

// A value fails a construction-time constraint (unnormalized channel, bad config field).
struct ValidationError : std::invalid_argument {
    using std::invalid_argument::invalid_argument;
};

// A finite secret resource (one-time pad, ancilla pool) ran out.
struct ResourceExhausted : std::runtime_error {
    using std::runtime_error::runtime_error;
};

// An operator is outside the class an operation supports (mixed Pauli where CSS-like required).
struct ClassificationError : std::runtime_error {
    using std::runtime_error::runtime_error;
};

// A vector is not a member of the required code/space.
struct MembershipError : std::invalid_argument {
    using std::invalid_argument::invalid_argument;
};

// A protocol step was entered with its precondition violated.
struct ProtocolError : std::logic_error {
    using std::logic_error::logic_error;
};

// Malformed input file; carries a 1-based line number when known.
struct ParseError : std::runtime_error {
    int line = 0;
    ParseError(const std::string& msg, int line_no = 0)
        : std::runtime_error(line_no > 0 ? "line " + std::to_string(line_no) + ": " + msg : msg),
          line(line_no) {}
};

} // namespace synforge
