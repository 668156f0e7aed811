#ifndef CONC_ERRORS_HPP
#define CONC_ERRORS_HPP

#include <stdexcept>
#include <string>

namespace conc {

// Error taxonomy used across the library. All derive from std::runtime_error
// so callers may catch coarsely; the CLI maps any of these to exit code 1.

struct DomainError : std::runtime_error {
    explicit DomainError(const std::string& what) : std::runtime_error(what) {}
};

// Input sizes do not line up (e.g. distributions on different supports).
struct DimensionError : std::runtime_error {
    explicit DimensionError(const std::string& what) : std::runtime_error(what) {}
};

// Requested exhaustive computation exceeds the desk-scale budget.
struct CapacityError : std::runtime_error {
    explicit CapacityError(const std::string& what) : std::runtime_error(what) {}
};

// A coupling with the requested disagreement budget cannot exist.
struct InfeasibilityError : std::runtime_error {
    explicit InfeasibilityError(const std::string& what) : std::runtime_error(what) {}
};

// A subset law conditions on an event of zero total weight.
struct DegenerateLawError : std::runtime_error {
    explicit DegenerateLawError(const std::string& what) : std::runtime_error(what) {}
};

}  // namespace conc

#endif
