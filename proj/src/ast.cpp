#include "rubyeval/ast.hpp"

namespace rubyeval {

const char* node_kind_name(NodeKind kind) {
    switch (kind) {
        case NodeKind::Unit: return "Unit";
        case NodeKind::Method: return "Method";
        case NodeKind::Params: return "Params";
        case NodeKind::Param: return "Param";
        case NodeKind::Block: return "Block";
        case NodeKind::If: return "If";
        case NodeKind::While: return "While";
        case NodeKind::For: return "For";
        case NodeKind::Foreach: return "Foreach";
        case NodeKind::Return: return "Return";
        case NodeKind::Throw: return "Throw";
        case NodeKind::Break: return "Break";
        case NodeKind::Continue: return "Continue";
        case NodeKind::Assign: return "Assign";
        case NodeKind::VarDecl: return "VarDecl";
        case NodeKind::Call: return "Call";
        case NodeKind::FieldAccess: return "FieldAccess";
        case NodeKind::Index: return "Index";
        case NodeKind::BinaryOp: return "BinaryOp";
        case NodeKind::UnaryOp: return "UnaryOp";
        case NodeKind::New: return "New";
        case NodeKind::Name: return "Name";
        case NodeKind::Literal: return "Literal";
        case NodeKind::BaseCall: return "BaseCall";
        case NodeKind::Empty: return "Empty";
    }
    return "?";
}

std::vector<int> SyntaxTree::methods() const {
    std::vector<int> out;
    if (root < 0) return out;
    const SyntaxNode& r = at(root);
    if (r.kind == NodeKind::Method) {
        out.push_back(root);
    } else if (r.kind == NodeKind::Unit) {
        for (int c : r.children)
            if (at(c).kind == NodeKind::Method) out.push_back(c);
    }
    return out;
}

namespace {

bool iso_rec(const SyntaxTree& a, int na, const SyntaxTree& b, int nb) {
    const SyntaxNode& x = a.at(na);
    const SyntaxNode& y = b.at(nb);
    if (x.kind != y.kind || x.value != y.value) return false;
    if (x.children.size() != y.children.size()) return false;
    for (std::size_t i = 0; i < x.children.size(); ++i)
        if (!iso_rec(a, x.children[i], b, y.children[i])) return false;
    return true;
}

class Printer {
public:
    explicit Printer(const SyntaxTree& t) : t_(t) {}

    std::string print(int id) {
        NodeKind k = t_.at(id).kind;
        if (k == NodeKind::Unit || k == NodeKind::Method || k == NodeKind::Params ||
            k == NodeKind::Param || k == NodeKind::BaseCall) {
            emit_decl(id);
        } else if (is_expr(k)) {
            emit_expr(id);
        } else {
            emit_stmt(id);
        }
        return out_;
    }

private:
    static bool is_expr(NodeKind k) {
        switch (k) {
            case NodeKind::Call:
            case NodeKind::FieldAccess:
            case NodeKind::Index:
            case NodeKind::BinaryOp:
            case NodeKind::UnaryOp:
            case NodeKind::New:
            case NodeKind::Name:
            case NodeKind::Literal:
                return true;
            default:
                return false;
        }
    }

    void emit_decl(int id) {
        const SyntaxNode& n = t_.at(id);
        switch (n.kind) {
            case NodeKind::Unit:
                for (int c : n.children) emit_decl(c);
                break;
            case NodeKind::Method: {
                // the tree keeps no return type; emit `void` so the text parses
                std::size_t i = 0;
                write("void");
                emit_expr(n.children[i++]);  // Name
                emit_decl(n.children[i++]);  // Params
                if (i + 1 < n.children.size() &&
                    t_.at(n.children[i]).kind == NodeKind::BaseCall) {
                    write(":");
                    emit_decl(n.children[i++]);
                }
                emit_stmt(n.children[i]);  // Block
                break;
            }
            case NodeKind::Params:
                write("(");
                for (std::size_t i = 0; i < n.children.size(); ++i) {
                    if (i) write(",");
                    emit_decl(n.children[i]);
                }
                write(")");
                break;
            case NodeKind::Param:
                if (!n.children.empty()) emit_expr(n.children[0]);
                write(n.value);
                break;
            case NodeKind::BaseCall:
                write("base");
                write("(");
                for (std::size_t i = 0; i < n.children.size(); ++i) {
                    if (i) write(",");
                    emit_expr(n.children[i]);
                }
                write(")");
                break;
            default:
                emit_stmt(id);
                break;
        }
    }

    void emit_stmt(int id) {
        const SyntaxNode& n = t_.at(id);
        switch (n.kind) {
            case NodeKind::Block:
                write("{");
                for (int c : n.children) emit_stmt(c);
                write("}");
                break;
            case NodeKind::If:
                write("if");
                write("(");
                emit_expr(n.children[0]);
                write(")");
                emit_stmt(n.children[1]);
                if (n.children.size() > 2) {
                    write("else");
                    emit_stmt(n.children[2]);
                }
                break;
            case NodeKind::While:
                write("while");
                write("(");
                emit_expr(n.children[0]);
                write(")");
                emit_stmt(n.children[1]);
                break;
            case NodeKind::For:
                write("for");
                write("(");
                if (t_.at(n.children[0]).kind != NodeKind::Empty) emit_headless(n.children[0]);
                write(";");
                if (t_.at(n.children[1]).kind != NodeKind::Empty) emit_expr(n.children[1]);
                write(";");
                if (t_.at(n.children[2]).kind != NodeKind::Empty) emit_headless(n.children[2]);
                write(")");
                emit_stmt(n.children[3]);
                break;
            case NodeKind::Foreach:
                write("foreach");
                write("(");
                emit_decl(n.children[0]);
                write("in");
                emit_expr(n.children[1]);
                write(")");
                emit_stmt(n.children[2]);
                break;
            case NodeKind::Return:
                write("return");
                if (!n.children.empty()) emit_expr(n.children[0]);
                write(";");
                break;
            case NodeKind::Throw:
                write("throw");
                emit_expr(n.children[0]);
                write(";");
                break;
            case NodeKind::Break:
                write("break");
                write(";");
                break;
            case NodeKind::Continue:
                write("continue");
                write(";");
                break;
            case NodeKind::Assign:
                emit_expr(n.children[0]);
                write("=");
                emit_expr(n.children[1]);
                write(";");
                break;
            case NodeKind::VarDecl:
                emit_expr(n.children[0]);
                write(n.value);
                if (n.children.size() > 1) {
                    write("=");
                    emit_expr(n.children[1]);
                }
                write(";");
                break;
            default:
                // expression used as a statement
                emit_expr(id);
                write(";");
                break;
        }
    }

    // for-loop init/step: statement or expression without trailing `;`
    void emit_headless(int id) {
        const SyntaxNode& n = t_.at(id);
        if (is_expr(n.kind)) {
            emit_expr(id);
            return;
        }
        std::size_t mark = out_.size();
        emit_stmt(id);
        std::size_t end = out_.size();
        while (end > mark && out_[end - 1] == ' ') --end;
        if (end > mark && out_[end - 1] == ';') out_.erase(end - 1);
    }

    void emit_expr(int id) {
        const SyntaxNode& n = t_.at(id);
        switch (n.kind) {
            case NodeKind::Call:
                emit_expr(n.children[0]);
                write("(");
                for (std::size_t i = 1; i < n.children.size(); ++i) {
                    if (i > 1) write(",");
                    emit_expr(n.children[i]);
                }
                write(")");
                break;
            case NodeKind::FieldAccess:
                emit_expr(n.children[0]);
                write(".");
                write(n.value);
                break;
            case NodeKind::Index:
                emit_expr(n.children[0]);
                write("[");
                emit_expr(n.children[1]);
                write("]");
                break;
            case NodeKind::BinaryOp:
                write("(");
                emit_expr(n.children[0]);
                write(n.value);
                emit_expr(n.children[1]);
                write(")");
                break;
            case NodeKind::UnaryOp:
                write(n.value);
                emit_expr(n.children[0]);
                break;
            case NodeKind::New:
                write("new");
                write(n.value);
                write("(");
                for (std::size_t i = 0; i < n.children.size(); ++i) {
                    if (i) write(",");
                    emit_expr(n.children[i]);
                }
                write(")");
                break;
            case NodeKind::Name:
            case NodeKind::Literal:
                write(n.value);
                break;
            default:
                break;
        }
    }

    void write(const std::string& s) {
        if (!out_.empty()) out_ += ' ';
        out_ += s;
    }

    const SyntaxTree& t_;
    std::string out_;
};

}  // namespace

bool isomorphic(const SyntaxTree& a, const SyntaxTree& b) {
    if (a.root < 0 || b.root < 0) return a.root == b.root;
    return iso_rec(a, a.root, b, b.root);
}

std::string pretty_print(const SyntaxTree& tree, int node) {
    return Printer(tree).print(node);
}

std::string pretty_print(const SyntaxTree& tree) {
    if (tree.root < 0) return {};
    return pretty_print(tree, tree.root);
}

}  // namespace rubyeval
