#pragma once

#include <stdexcept>
#include <string>

namespace partsample {

/// Malformed input document (graph or partition file).
class ParseError : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

/// An operation was called outside its precondition: disconnected graph,
/// out-of-range k, invalid node set, partition that does not cover the graph.
class PreconditionError : public std::invalid_argument {
public:
    using std::invalid_argument::invalid_argument;
};

/// Brute-force enumeration refused because the instance exceeds its budget.
class BudgetExceeded : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

/// A sampled outcome fell outside the exact support it was checked against.
class SupportMismatch : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

}  // namespace partsample
