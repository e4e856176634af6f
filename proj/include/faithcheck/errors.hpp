#pragma once

#include <stdexcept>
#include <string>

namespace faithcheck {

// Malformed text input (dist files, DAG specs, statements, CLI values).
struct ParseError : std::runtime_error {
    using std::runtime_error::runtime_error;
};

// Well-formed input that violates a domain invariant (mass sum, cycles,
// overlapping query sets, out-of-range ids).
struct InputError : std::runtime_error {
    using std::runtime_error::runtime_error;
};

}  // namespace faithcheck
