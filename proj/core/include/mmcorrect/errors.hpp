#pragma once

#include <stdexcept>
#include <string>

namespace mmc {

// A mathematical guarantee was observed to fail at runtime (e.g. two
// completed entries of a one-sided reduction disagree).  Maps to process
// exit code 2 in the CLI.
class InvariantViolation : public std::logic_error {
public:
    explicit InvariantViolation(const std::string& what) : std::logic_error(what) {}
};

// Configuration / input file problem.  Maps to exit code 1 in the CLI.
class ConfigError : public std::runtime_error {
public:
    explicit ConfigError(const std::string& what) : std::runtime_error(what) {}
};

}  // namespace mmc
