#pragma once

#include <stdexcept>
#include <string>

namespace pianoskill {

/// Malformed input file (syntax level).
struct ParseError : std::runtime_error {
    using std::runtime_error::runtime_error;
};

/// Structurally valid input that violates a documented invariant.
struct ValidationError : std::runtime_error {
    using std::runtime_error::runtime_error;
};

/// Filesystem / media access failure.
struct IoError : std::runtime_error {
    using std::runtime_error::runtime_error;
};

/// Failure inside a training run (non-finite loss, unresolvable media, ...).
struct TrainingError : std::runtime_error {
    using std::runtime_error::runtime_error;
};

} // namespace pianoskill
