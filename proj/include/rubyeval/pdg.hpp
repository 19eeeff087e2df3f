#pragma once

#include <optional>
#include <set>
#include <string>
#include <vector>

#include "rubyeval/ast.hpp"

namespace rubyeval {

enum class PdgNodeKind { Entry, Statement, Predicate };
enum class PdgEdgeKind { Control, Data };

/// Labels abstract away concrete identifiers (a parameter `int i` becomes
/// "inputInt", `j = 1` becomes "intEqual1"), so consistently renamed code
/// yields an identical graph. Callee names and small integer literals stay
/// in the label.
struct PdgNode {
    int id = 0;
    PdgNodeKind kind = PdgNodeKind::Statement;
    std::string label;
    std::set<std::string> defs;
    std::set<std::string> uses;
};

struct PdgEdge {
    int from = 0;
    int to = 0;
    PdgEdgeKind kind = PdgEdgeKind::Control;
};

struct DependenceGraph {
    std::vector<PdgNode> nodes;
    std::vector<PdgEdge> edges;

    /// |V| + |E|, the size used to normalize graph edit distances.
    int size() const { return static_cast<int>(nodes.size() + edges.size()); }
    int in_degree(int id) const;
    int out_degree(int id) const;
    std::string to_dot() const;
};

/// Not-applicable is a value: it tells the metric cascade to fall back from
/// the graph level to the tree level.
struct PdgBuildResult {
    std::optional<DependenceGraph> graph;
    std::string reason;

    bool applicable() const { return graph.has_value(); }
};

/// Builds control dependence from the statement nesting structure and data
/// dependence from reaching definitions over the derived CFG. Expects a unit
/// holding exactly one method with a non-empty body.
PdgBuildResult build_pdg(const SyntaxTree& tree);

}  // namespace rubyeval
