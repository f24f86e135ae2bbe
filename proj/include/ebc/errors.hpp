#pragma once

#include <stdexcept>
#include <string>

namespace ebc {

// Caller passed arguments that violate an operation's precondition.
class PreconditionError : public std::invalid_argument {
public:
    using std::invalid_argument::invalid_argument;
};

// A configured resource limit (memory budget, integer range) would be exceeded.
class ResourceError : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

// A certified computation could not settle its result within the retry cap.
class CertificationError : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

// A constructed object failed one of its defining relations.
class ConstructionError : public std::runtime_error {
public:
    ConstructionError(std::string relation, const std::string& what)
        : std::runtime_error(what + " [" + relation + "]"), relation_(std::move(relation)) {}

    const std::string& relation() const noexcept { return relation_; }

private:
    std::string relation_;
};

} // namespace ebc
