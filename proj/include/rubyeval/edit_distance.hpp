#pragma once

#include <string>
#include <vector>

#include "rubyeval/ast.hpp"

namespace rubyeval {

/// Unit-cost insert/delete/substitute distance between token sequences.
long long levenshtein(const std::vector<std::string>& a, const std::vector<std::string>& b);

struct TedResult {
    long long cost = 0;
    bool approximate = false;  // true when the greedy upper bound was used
};

/// Ordered tree edit distance with unit costs. Replacing a node is allowed
/// only between nodes of the same kind with different values (cost 1);
/// across kinds it degenerates to delete+insert (cost 2). Exact (Zhang-Shasha)
/// up to `exact_node_limit` nodes per tree, greedy top-down upper bound above.
TedResult tree_edit_distance(const SyntaxTree& ta, int root_a, const SyntaxTree& tb, int root_b,
                             int exact_node_limit = 200);

}  // namespace rubyeval
