#pragma once

#include <stdexcept>
#include <string>

namespace drc {

// Bad inputs: malformed graphs, inconsistent configs, unparsable scenarios.
// CLI maps these to exit code 1.
struct validation_error : std::runtime_error {
    explicit validation_error(const std::string& msg) : std::runtime_error(msg) {}
};

// Numerical failures: non-finite states, eigensolver breakdown.
// CLI maps these to exit code 2.
struct numeric_error : std::runtime_error {
    explicit numeric_error(const std::string& msg) : std::runtime_error(msg) {}
};

} // namespace drc
