#pragma once

// Error categories the CLI maps to exit codes: resource caps (exit 3) and
// search-budget/unsolvable failures (exit 4).  Everything else surfaces as
// plain runtime errors.

#include <stdexcept>
#include <string>

namespace qcover {

struct ResourceError : std::runtime_error {
    explicit ResourceError(const std::string& what) : std::runtime_error(what) {}
};

struct SearchError : std::runtime_error {
    explicit SearchError(const std::string& what) : std::runtime_error(what) {}
};

} // namespace qcover
