#pragma once

// The Design value: a block collection with its covering parameters and the
// recursion bookkeeping (distinguished subspace, alpha/beta census counts)
// the recursive constructions thread through.

#include <cstdint>
#include <map>
#include <optional>
#include <string>
#include <vector>

#include "qcover/linalg.hpp"

namespace qcover {

struct RecursionTrace {
    Subspace lambda;            // distinguished subspace of this design
    std::uint64_t alpha = 0;    // blocks contained in lambda
    std::uint64_t beta = 0;     // blocks in each hyperplane through lambda
                                // (equal to alpha when lambda is itself a hyperplane)
};

struct Design {
    int q = 0;
    int n = 0; // ambient vector dimension
    int k = 0; // block vector dimension
    int r = 0; // covered vector dimension
    std::string family;
    std::vector<Subspace> blocks;
    std::optional<RecursionTrace> trace;
    std::map<std::string, std::string> meta;
};

} // namespace qcover
