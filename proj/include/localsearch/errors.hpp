#pragma once

#include <stdexcept>
#include <string>

namespace localsearch {

/// Malformed user input: bad bitstrings, out-of-range qubits, empty target sets.
class InvalidArgument : public std::invalid_argument {
public:
    using std::invalid_argument::invalid_argument;
};

/// The chosen multi-controlled gate scheme cannot be realized with the ancillas available.
class InsufficientAncillas : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

/// A request exceeds a configured resource cap (dense simulator width, verification width).
class ResourceCapExceeded : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

/// Coupling-map problems: disconnected graph, too few physical qubits.
class RoutingError : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

}  // namespace localsearch
