#pragma once

#include <string>
#include <vector>

namespace rubyeval {

enum class NodeKind {
    Unit,     // compilation unit, only present when it holds >1 method
    Method,   // children: Name, Params, [BaseCall], Block
    Params,   // children: Param*
    Param,    // value: parameter name; children: [Name type]
    Block,
    If,       // children: cond, then, [else]
    While,    // children: cond, body
    For,      // children: init, cond, step, body (absent slots are Empty)
    Foreach,  // children: Param loopvar, iterable expr, body
    Return,   // children: [expr]
    Throw,    // children: expr
    Break,
    Continue,
    Assign,   // children: lvalue, rhs
    VarDecl,  // value: variable name; children: Name type, [init expr]
    Call,     // children: callee expr, arg*
    FieldAccess,  // value: field name; children: base expr
    Index,    // children: base, index
    BinaryOp, // value: operator; children: lhs, rhs
    UnaryOp,  // value: operator; children: operand
    New,      // value: type name; children: arg*
    Name,     // value: identifier (dotted for type names)
    Literal,  // value: lexeme, including quotes for strings
    BaseCall, // children: arg*
    Empty,    // placeholder for an absent for-loop slot
};

const char* node_kind_name(NodeKind kind);

struct SyntaxNode {
    NodeKind kind = NodeKind::Empty;
    std::string value;
    std::vector<int> children;
};

/// Ordered labeled tree; node ids index into `nodes`.
struct SyntaxTree {
    std::vector<SyntaxNode> nodes;
    int root = -1;

    int size() const { return static_cast<int>(nodes.size()); }
    const SyntaxNode& at(int id) const { return nodes[static_cast<std::size_t>(id)]; }

    int add(NodeKind kind, std::string value = {}, std::vector<int> children = {}) {
        nodes.push_back(SyntaxNode{kind, std::move(value), std::move(children)});
        return static_cast<int>(nodes.size()) - 1;
    }

    /// Method node ids in order (root itself when the unit has one method).
    std::vector<int> methods() const;
};

/// Structural equality from the roots, ignoring node id layout.
bool isomorphic(const SyntaxTree& a, const SyntaxTree& b);

/// Canonical source text; parsing it back yields an isomorphic tree.
std::string pretty_print(const SyntaxTree& tree);
std::string pretty_print(const SyntaxTree& tree, int node);

}  // namespace rubyeval
