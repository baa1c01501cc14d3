#pragma once
#include <stdexcept>
#include <string>

namespace sqfvar {

// Invalid parameters or ranges; the CLI maps this to exit code 2.
struct ConfigError : std::runtime_error {
    using std::runtime_error::runtime_error;
};

// Argument outside an evaluator's supported envelope.
struct RangeError : std::runtime_error {
    using std::runtime_error::runtime_error;
};

// Two sweep events of different kinds could not be ordered reliably.
struct PrecisionAlarm : std::runtime_error {
    using std::runtime_error::runtime_error;
};

struct QuadratureError : std::runtime_error {
    using std::runtime_error::runtime_error;
};

}  // namespace sqfvar
