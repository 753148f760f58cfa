#pragma once

#include <stdexcept>
#include <string>

namespace hc {

/// Malformed or out-of-range user input (bad rational string, length < 3, ...).
class InputError : public std::invalid_argument {
public:
    using std::invalid_argument::invalid_argument;
};

/// A sequence constructor produced something that violates its own contract.
class ConstructionError : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

/// Evaluation outside the domain of a formula (x = 0 in the ODE, gamma <= -1, ...).
class DomainError : public std::domain_error {
public:
    using std::domain_error::domain_error;
};

/// Two routes to the same exact quantity disagreed.
class ConsistencyError : public std::logic_error {
public:
    using std::logic_error::logic_error;
};

/// The requested decomposition only exists for the special two-parameter family.
class UnsupportedError : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

}  // namespace hc
