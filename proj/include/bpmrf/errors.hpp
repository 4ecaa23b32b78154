#pragma once

#include <stdexcept>
#include <string>

namespace bpmrf {

// Base class for all library errors.
struct error : std::runtime_error {
    using std::runtime_error::runtime_error;
};

// Bad inputs: dimensions, indices, schema violations, inconsistent config.
struct validation_error : error {
    using error::error;
};

// Numerical trouble: factorization failure, improper distributions,
// degenerate constraint systems.
struct numerical_error : error {
    using error::error;
};

// Unknown unit / label lookups.
struct mapping_error : error {
    using error::error;
};

// Run configuration problems (missing files, bad keys).
struct config_error : error {
    using error::error;
};

}  // namespace bpmrf
