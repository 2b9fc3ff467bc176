#pragma once

#include <stdexcept>
#include <string>

namespace hydrospec {

// Bad user input: unknown kinds, malformed parameters, inconsistent config.
struct config_error : std::invalid_argument {
    using std::invalid_argument::invalid_argument;
};

// A contour failed its a-posteriori certification for the requested study window.
struct validation_error : std::runtime_error {
    using std::runtime_error::runtime_error;
};

// A numerical routine could not meet its contract (singular solve, stalled
// iteration, branch collision, ...).
struct numerical_error : std::runtime_error {
    using std::runtime_error::runtime_error;
};

} // namespace hydrospec
