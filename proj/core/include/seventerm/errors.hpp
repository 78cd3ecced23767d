#pragma once

#include <stdexcept>
#include <string>

namespace seventerm {

// Malformed input data: bad multiplication tables, non-normal subgroups,
// invalid module actions, unreadable problem files.
struct ValidationError : std::runtime_error {
    explicit ValidationError(const std::string& what) : std::runtime_error(what) {}
};

// An operation was called outside its contract (class not invariant, size
// limit exceeded, vector not in the span it must lie in). The message names
// the offending datum.
struct PreconditionError : std::runtime_error {
    explicit PreconditionError(const std::string& what) : std::runtime_error(what) {}
};

// A runtime self-check that should be impossible to fail has failed; this
// signals a bug in this library, not in the caller's data.
struct InternalError : std::logic_error {
    explicit InternalError(const std::string& what) : std::logic_error(what) {}
};

} // namespace seventerm
