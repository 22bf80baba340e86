#pragma once

#include <stdexcept>
#include <string>

namespace wtc2 {

/// Invalid numeric input (negative power, NaN gain, B < 1, ...).
class ParameterError : public std::invalid_argument {
public:
    using std::invalid_argument::invalid_argument;
};

/// Wrong dimensionality for a geometric operation.
class DimensionError : public std::invalid_argument {
public:
    using std::invalid_argument::invalid_argument;
};

/// Rate-split bookkeeping that violates a key budget or a channel constraint.
class LedgerError : public std::invalid_argument {
public:
    using std::invalid_argument::invalid_argument;
};

/// Key generation requested from a chain whose jamming noise has zero power.
class SourceAbsentError : public std::invalid_argument {
public:
    using std::invalid_argument::invalid_argument;
};

/// An empty polygon was queried where a non-empty one is required.
class EmptyRegionError : public std::domain_error {
public:
    using std::domain_error::domain_error;
};

/// Exact simulator instance exceeds the enumeration budget.
class ExactModeTooLarge : public std::length_error {
public:
    using std::length_error::length_error;
};

/// Malformed JSON config or channel description.
class ConfigError : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

}  // namespace wtc2
