#pragma once

#include <stdexcept>
#include <string>

namespace cgp {

/// Bad user input: unknown names, malformed config, mismatched shapes.
class ConfigError : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

/// Filesystem trouble while reading or writing results.
class IoError : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

/// Raised when aggregating runs that cannot be combined.
class AggregationError : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

/// An internal invariant was broken; always indicates a bug in an operator.
class InvariantViolation : public std::logic_error {
public:
    using std::logic_error::logic_error;
};

}  // namespace cgp
