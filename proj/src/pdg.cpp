#include "rubyeval/pdg.hpp"

#include <algorithm>
#include <map>
#include <sstream>
#include <unordered_set>

namespace rubyeval {

int DependenceGraph::in_degree(int id) const {
    int d = 0;
    for (const auto& e : edges) d += e.to == id;
    return d;
}

int DependenceGraph::out_degree(int id) const {
    int d = 0;
    for (const auto& e : edges) d += e.from == id;
    return d;
}

std::string DependenceGraph::to_dot() const {
    std::ostringstream os;
    os << "digraph pdg {\n";
    for (const auto& n : nodes) {
        const char* kind = n.kind == PdgNodeKind::Entry      ? "entry"
                           : n.kind == PdgNodeKind::Predicate ? "predicate"
                                                              : "statement";
        os << "  n" << n.id << " [label=\"" << n.label << "\", kind=" << kind << "];\n";
    }
    for (const auto& e : edges) {
        os << "  n" << e.from << " -> n" << e.to
           << " [kind=" << (e.kind == PdgEdgeKind::Control ? "control" : "data") << "];\n";
    }
    os << "}\n";
    return os.str();
}

namespace {

bool is_int_type(const std::string& type_text) {
    static const std::unordered_set<std::string> ints = {
        "int", "long", "short", "byte", "sbyte", "uint", "ulong", "ushort",
    };
    return ints.count(type_text) > 0;
}

bool all_digits(const std::string& s) {
    if (s.empty()) return false;
    return std::all_of(s.begin(), s.end(), [](char c) { return c >= '0' && c <= '9'; });
}

std::string op_tag(const std::string& op) {
    if (op == "<") return "Small";
    if (op == ">") return "Great";
    if (op == "<=") return "SmallEq";
    if (op == ">=") return "GreatEq";
    if (op == "==") return "Same";
    if (op == "!=") return "Diff";
    if (op == "&&") return "And";
    if (op == "||") return "Or";
    return "Op";
}

class Builder {
public:
    explicit Builder(const SyntaxTree& tree) : t_(tree) {}

    PdgBuildResult run() {
        auto methods = t_.methods();
        if (methods.size() != 1)
            return {std::nullopt, "expects a unit with exactly one method"};
        const SyntaxNode& m = t_.at(methods[0]);

        int entry = make_node(PdgNodeKind::Entry, "entry");

        // children: Name, Params, [BaseCall], Block
        const SyntaxNode& params = t_.at(m.children[1]);
        std::vector<int> frontier = {entry};
        for (int pid : params.children) {
            const SyntaxNode& p = t_.at(pid);
            std::string type_text = p.children.empty() ? "" : t_.at(p.children[0]).value;
            env_[p.value] = is_int_type(type_text) ? "Int" : "Obj";
            int n = make_node(PdgNodeKind::Statement, "input" + env_[p.value]);
            g_.nodes[static_cast<std::size_t>(n)].defs.insert(p.value);
            connect(frontier, n);
            control_edge(entry, n);
            frontier = {n};
        }

        int block = m.children.back();
        std::size_t before = g_.nodes.size();
        emit_block(block, frontier, entry);
        if (g_.nodes.size() == before)
            return {std::nullopt, "method body has no statements"};

        finish_edges();
        compute_data_edges();
        return {std::move(g_), ""};
    }

private:
    struct LoopCtx {
        int predicate;               // control parent for break/continue
        int continue_target;         // CFG target of continue
        std::vector<int>* breaks;    // break nodes waiting for the loop exit
    };

    int make_node(PdgNodeKind kind, std::string label) {
        PdgNode n;
        n.id = static_cast<int>(g_.nodes.size());
        n.kind = kind;
        n.label = std::move(label);
        g_.nodes.push_back(std::move(n));
        return n.id;
    }

    void connect(const std::vector<int>& from, int to) {
        for (int f : from) cfg_[f].push_back(to);
    }
    void control_edge(int parent, int child) {
        g_.edges.push_back(PdgEdge{parent, child, PdgEdgeKind::Control});
    }

    PdgNode& node(int id) { return g_.nodes[static_cast<std::size_t>(id)]; }

    // --- label / type helpers ----------------------------------------------

    // two-bucket typing from declarations only: Int or Obj
    std::string expr_type(int id) const {
        const SyntaxNode& n = t_.at(id);
        switch (n.kind) {
            case NodeKind::Literal:
                return all_digits(n.value) ? "Int" : "Obj";
            case NodeKind::Name: {
                auto it = env_.find(n.value);
                return it != env_.end() ? it->second : "Obj";
            }
            case NodeKind::UnaryOp:
                if (n.value == "!") return "Obj";
                return expr_type(n.children[0]);
            case NodeKind::BinaryOp:
                if (n.value == "+" || n.value == "-" || n.value == "*" ||
                    n.value == "/" || n.value == "%") {
                    return expr_type(n.children[0]) == "Int" ||
                                   expr_type(n.children[1]) == "Int"
                               ? "Int"
                               : "Obj";
                }
                return "Obj";
            default:
                return "Obj";
        }
    }

    // literal digits for small ints, the type bucket otherwise
    std::string operand_tag(int id) const {
        const SyntaxNode& n = t_.at(id);
        if (n.kind == NodeKind::Literal && all_digits(n.value) && n.value.size() == 1)
            return n.value;
        return expr_type(id);
    }

    static std::string lower(std::string s) {
        if (!s.empty()) s[0] = static_cast<char>(std::tolower(static_cast<unsigned char>(s[0])));
        return s;
    }

    std::string predicate_label(int cond) const {
        const SyntaxNode& c = t_.at(cond);
        if (c.kind == NodeKind::BinaryOp) {
            std::string prefix = expr_type(c.children[0]) == "Int" ||
                                         expr_type(c.children[1]) == "Int"
                                     ? "int"
                                     : "obj";
            return prefix + op_tag(c.value) + operand_tag(c.children[1]);
        }
        return lower(expr_type(cond)) + "Pred";
    }

    std::string callee_name(int callee) const {
        const SyntaxNode& n = t_.at(callee);
        if (n.kind == NodeKind::Name) return n.value;
        if (n.kind == NodeKind::FieldAccess) return n.value;
        return "?";
    }

    // root variable of an lvalue: a for a[i], o for o.f
    std::string root_var(int id) const {
        const SyntaxNode& n = t_.at(id);
        if (n.kind == NodeKind::Name) return n.value;
        if (n.kind == NodeKind::FieldAccess || n.kind == NodeKind::Index)
            return root_var(n.children[0]);
        return "";
    }

    void collect_uses(int id, std::set<std::string>& out) const {
        const SyntaxNode& n = t_.at(id);
        switch (n.kind) {
            case NodeKind::Name:
                if (n.value != "this" && n.value != "base" && n.value != "super")
                    out.insert(n.value);
                break;
            case NodeKind::FieldAccess:
                collect_uses(n.children[0], out);
                break;
            case NodeKind::Index:
                collect_uses(n.children[0], out);
                collect_uses(n.children[1], out);
                break;
            case NodeKind::Call:
                // the callee's final name segment is a method name, not a use
                if (t_.at(n.children[0]).kind == NodeKind::FieldAccess)
                    collect_uses(t_.at(n.children[0]).children[0], out);
                for (std::size_t i = 1; i < n.children.size(); ++i)
                    collect_uses(n.children[i], out);
                break;
            case NodeKind::New:
            case NodeKind::BaseCall:
                for (int c : n.children) collect_uses(c, out);
                break;
            case NodeKind::BinaryOp:
            case NodeKind::UnaryOp:
                for (int c : n.children) collect_uses(c, out);
                break;
            default:
                break;
        }
    }

    // --- statement emission --------------------------------------------------
    // Returns the CFG frontier after the statement.

    std::vector<int> emit_block(int block, std::vector<int> frontier, int parent) {
        for (int c : t_.at(block).children) frontier = emit_stmt(c, std::move(frontier), parent);
        return frontier;
    }

    std::vector<int> emit_stmt(int id, std::vector<int> frontier, int parent) {
        const SyntaxNode& n = t_.at(id);
        switch (n.kind) {
            case NodeKind::Block:
                return emit_block(id, std::move(frontier), parent);

            case NodeKind::VarDecl: {
                std::string type_text = t_.at(n.children[0]).value;
                env_[n.value] = is_int_type(type_text) ? "Int" : "Obj";
                int node_id = make_node(PdgNodeKind::Statement, "declare" + env_[n.value]);
                node(node_id).defs.insert(n.value);
                if (n.children.size() > 1) collect_uses(n.children[1], node(node_id).uses);
                connect(frontier, node_id);
                control_edge(parent, node_id);
                return {node_id};
            }

            case NodeKind::Assign: {
                std::string root = root_var(n.children[0]);
                std::string prefix;
                auto it = env_.find(root);
                if (t_.at(n.children[0]).kind == NodeKind::Name && it != env_.end())
                    prefix = lower(it->second);
                else
                    prefix = lower(expr_type(n.children[1]));
                int node_id = make_node(PdgNodeKind::Statement,
                                        prefix + "Equal" + operand_tag(n.children[1]));
                if (!root.empty()) node(node_id).defs.insert(root);
                if (t_.at(n.children[0]).kind != NodeKind::Name) {
                    // a[i] = e also reads i (and the base stays intact)
                    std::set<std::string> lhs_uses;
                    collect_uses(n.children[0], lhs_uses);
                    lhs_uses.erase(root);
                    node(node_id).uses.insert(lhs_uses.begin(), lhs_uses.end());
                }
                collect_uses(n.children[1], node(node_id).uses);
                connect(frontier, node_id);
                control_edge(parent, node_id);
                return {node_id};
            }

            case NodeKind::If: {
                int p = make_node(PdgNodeKind::Predicate, predicate_label(n.children[0]));
                collect_uses(n.children[0], node(p).uses);
                connect(frontier, p);
                control_edge(parent, p);
                std::vector<int> out = emit_stmt(n.children[1], {p}, p);
                if (n.children.size() > 2) {
                    std::vector<int> f_else = emit_stmt(n.children[2], {p}, p);
                    out.insert(out.end(), f_else.begin(), f_else.end());
                } else {
                    out.push_back(p);
                }
                return out;
            }

            case NodeKind::While: {
                int p = make_node(PdgNodeKind::Predicate, predicate_label(n.children[0]));
                collect_uses(n.children[0], node(p).uses);
                connect(frontier, p);
                control_edge(parent, p);
                std::vector<int> breaks;
                loops_.push_back(LoopCtx{p, p, &breaks});
                std::vector<int> body = emit_stmt(n.children[1], {p}, p);
                loops_.pop_back();
                connect(body, p);
                std::vector<int> out = {p};
                out.insert(out.end(), breaks.begin(), breaks.end());
                return out;
            }

            case NodeKind::For: {
                int init = n.children[0], cond = n.children[1], step = n.children[2];
                if (t_.at(init).kind != NodeKind::Empty)
                    frontier = emit_stmt(init, std::move(frontier), parent);
                if (t_.at(cond).kind == NodeKind::Empty) {
                    // condition-less loop: body repeats, only break leaves
                    std::vector<int> breaks;
                    std::size_t first = g_.nodes.size();
                    int step_node = -1;
                    if (t_.at(step).kind != NodeKind::Empty)
                        step_node = make_headless(step, parent);
                    loops_.push_back(LoopCtx{parent, step_node, &breaks});
                    std::vector<int> body = emit_stmt(n.children[3], frontier, parent);
                    loops_.pop_back();
                    if (step_node >= 0) {
                        connect(body, step_node);
                        body = {step_node};
                    }
                    if (g_.nodes.size() > first) connect(body, static_cast<int>(first));
                    return breaks;
                }
                int p = make_node(PdgNodeKind::Predicate, predicate_label(cond));
                collect_uses(cond, node(p).uses);
                connect(frontier, p);
                control_edge(parent, p);
                int step_node = -1;
                if (t_.at(step).kind != NodeKind::Empty) step_node = make_headless(step, p);
                std::vector<int> breaks;
                loops_.push_back(LoopCtx{p, step_node >= 0 ? step_node : p, &breaks});
                std::vector<int> body = emit_stmt(n.children[3], {p}, p);
                loops_.pop_back();
                if (step_node >= 0) {
                    connect(body, step_node);
                    connect({step_node}, p);
                } else {
                    connect(body, p);
                }
                std::vector<int> out = {p};
                out.insert(out.end(), breaks.begin(), breaks.end());
                return out;
            }

            case NodeKind::Foreach: {
                const SyntaxNode& var = t_.at(n.children[0]);
                std::string type_text =
                    var.children.empty() ? "" : t_.at(var.children[0]).value;
                env_[var.value] = is_int_type(type_text) ? "Int" : "Obj";
                int p = make_node(PdgNodeKind::Predicate, "foreach" + env_[var.value]);
                node(p).defs.insert(var.value);
                collect_uses(n.children[1], node(p).uses);
                connect(frontier, p);
                control_edge(parent, p);
                std::vector<int> breaks;
                loops_.push_back(LoopCtx{p, p, &breaks});
                std::vector<int> body = emit_stmt(n.children[2], {p}, p);
                loops_.pop_back();
                connect(body, p);
                std::vector<int> out = {p};
                out.insert(out.end(), breaks.begin(), breaks.end());
                return out;
            }

            case NodeKind::Return: {
                std::string label = "returnVoid";
                if (!n.children.empty()) label = "return" + expr_type(n.children[0]);
                int node_id = make_node(PdgNodeKind::Statement, label);
                if (!n.children.empty()) collect_uses(n.children[0], node(node_id).uses);
                connect(frontier, node_id);
                control_edge(parent, node_id);
                return {};
            }

            case NodeKind::Throw: {
                int node_id = make_node(PdgNodeKind::Statement, "throw");
                collect_uses(n.children[0], node(node_id).uses);
                connect(frontier, node_id);
                control_edge(parent, node_id);
                return {};
            }

            case NodeKind::Break: {
                int node_id = make_node(PdgNodeKind::Statement, "break");
                connect(frontier, node_id);
                control_edge(loops_.empty() ? parent : loops_.back().predicate, node_id);
                if (!loops_.empty()) loops_.back().breaks->push_back(node_id);
                return {};
            }

            case NodeKind::Continue: {
                int node_id = make_node(PdgNodeKind::Statement, "continue");
                connect(frontier, node_id);
                control_edge(loops_.empty() ? parent : loops_.back().predicate, node_id);
                if (!loops_.empty() && loops_.back().continue_target >= 0)
                    connect({node_id}, loops_.back().continue_target);
                return {};
            }

            default:
                // expression statement
                return {emit_expr_stmt(id, frontier, parent)};
        }
    }

    // expression statement and for-header clause bodies share this
    int emit_expr_stmt(int id, const std::vector<int>& frontier, int parent) {
        int node_id = make_headless(id, parent);
        connect(frontier, node_id);
        return node_id;
    }

    // node creation without CFG wiring (the caller connects it)
    int make_headless(int id, int parent) {
        const SyntaxNode& n = t_.at(id);
        int node_id;
        if (n.kind == NodeKind::Assign || n.kind == NodeKind::VarDecl) {
            // only reachable from for-step position for Assign; reuse emit
            std::vector<int> f;
            return emit_stmt(id, f, parent).front();
        }
        if (n.kind == NodeKind::Call) {
            node_id = make_node(PdgNodeKind::Statement, "call:" + callee_name(n.children[0]));
            collect_uses(id, node(node_id).uses);
        } else if (n.kind == NodeKind::New) {
            node_id = make_node(PdgNodeKind::Statement, "new:" + n.value);
            collect_uses(id, node(node_id).uses);
        } else if (n.kind == NodeKind::UnaryOp && (n.value == "++" || n.value == "--")) {
            std::string root = root_var(n.children[0]);
            auto it = env_.find(root);
            std::string prefix = it != env_.end() ? lower(it->second) : "obj";
            node_id = make_node(PdgNodeKind::Statement, prefix + "Step");
            if (!root.empty()) {
                node(node_id).defs.insert(root);
                node(node_id).uses.insert(root);
            }
        } else {
            node_id = make_node(PdgNodeKind::Statement, lower(expr_type(id)) + "Expr");
            collect_uses(id, node(node_id).uses);
        }
        control_edge(parent, node_id);
        return node_id;
    }

    // --- data dependence ------------------------------------------------------

    void finish_edges() {
        // control edges were pushed in creation order already
    }

    void compute_data_edges() {
        std::size_t n = g_.nodes.size();
        // definition sites per variable
        std::map<std::string, std::vector<int>> sites;
        for (const auto& nd : g_.nodes)
            for (const auto& v : nd.defs) sites[v].push_back(nd.id);

        using DefSet = std::set<std::pair<std::string, int>>;
        std::vector<DefSet> in(n), out(n);
        bool changed = true;
        while (changed) {
            changed = false;
            for (std::size_t i = 0; i < n; ++i) {
                DefSet out_i = in[i];
                for (const auto& v : g_.nodes[i].defs) {
                    for (auto it = out_i.begin(); it != out_i.end();) {
                        if (it->first == v)
                            it = out_i.erase(it);
                        else
                            ++it;
                    }
                    out_i.insert({v, static_cast<int>(i)});
                }
                if (out_i != out[i]) {
                    out[i] = std::move(out_i);
                    changed = true;
                }
                for (int succ : cfg_[static_cast<int>(i)]) {
                    auto& target = in[static_cast<std::size_t>(succ)];
                    std::size_t before = target.size();
                    target.insert(out[i].begin(), out[i].end());
                    if (target.size() != before) changed = true;
                }
            }
        }

        std::set<std::pair<int, int>> data;
        for (std::size_t i = 0; i < n; ++i) {
            for (const auto& v : g_.nodes[i].uses)
                for (const auto& def : in[i])
                    if (def.first == v) data.insert({def.second, static_cast<int>(i)});
        }
        for (const auto& [from, to] : data)
            g_.edges.push_back(PdgEdge{from, to, PdgEdgeKind::Data});
    }

    const SyntaxTree& t_;
    DependenceGraph g_;
    std::map<std::string, std::string> env_;
    std::map<int, std::vector<int>> cfg_;
    std::vector<LoopCtx> loops_;
};

}  // namespace

PdgBuildResult build_pdg(const SyntaxTree& tree) { return Builder(tree).run(); }

}  // namespace rubyeval
