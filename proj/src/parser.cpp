#include "rubyeval/parser.hpp"

#include <unordered_set>

namespace rubyeval {

namespace {

const std::unordered_set<std::string>& modifier_words() {
    static const std::unordered_set<std::string> m = {
        "public", "private", "protected", "static", "final", "sealed",
        "virtual", "override", "abstract", "internal", "synchronized",
        "native", "transient", "volatile", "readonly", "const",
    };
    return m;
}

const std::unordered_set<std::string>& type_words() {
    static const std::unordered_set<std::string> t = {
        "int", "long", "short", "byte", "sbyte", "uint", "ulong", "ushort",
        "char", "boolean", "bool", "float", "double", "decimal", "string",
        "String", "object", "void", "var",
    };
    return t;
}

struct ParseError {
    int line;
    int column;
    std::string message;
};

class Parser {
public:
    explicit Parser(const TokenSequence& seq) : seq_(seq) {}

    SyntaxTree run() {
        if (seq_.empty()) err("empty input, expected a method declaration");
        std::vector<int> methods;
        while (!eof()) methods.push_back(parse_method());
        if (methods.size() == 1) {
            tree_.root = methods[0];
        } else {
            tree_.root = tree_.add(NodeKind::Unit, "", methods);
        }
        return std::move(tree_);
    }

private:
    // --- token access -----------------------------------------------------

    bool eof() const { return pos_ >= seq_.size(); }
    const Token& peek(std::size_t ahead = 0) const {
        static const Token eof_tok{TokenKind::Operator, "<eof>", 0, 0};
        return pos_ + ahead < seq_.size() ? seq_[pos_ + ahead] : eof_tok;
    }
    const Token& advance() {
        const Token& t = peek();
        ++pos_;
        return t;
    }
    bool at(const char* lexeme) const { return !eof() && peek().lexeme == lexeme; }
    bool accept(const char* lexeme) {
        if (!at(lexeme)) return false;
        ++pos_;
        return true;
    }
    void expect(const char* lexeme) {
        if (!accept(lexeme)) err(std::string("expected '") + lexeme + "', found '" + peek().lexeme + "'");
    }

    [[noreturn]] void err(const std::string& msg) const {
        const Token& t = eof() ? (seq_.empty() ? Token{TokenKind::Operator, "", 1, 1}
                                               : seq_[seq_.size() - 1])
                               : peek();
        throw ParseError{t.line, t.column, msg};
    }

    struct DepthGuard {
        explicit DepthGuard(Parser& p) : p_(p) {
            if (++p_.depth_ > 400) p_.err("nesting too deep");
        }
        ~DepthGuard() { --p_.depth_; }
        Parser& p_;
    };

    // --- types ------------------------------------------------------------

    bool at_type_start() const {
        if (eof()) return false;
        const Token& t = peek();
        if (t.kind == TokenKind::Identifier) return true;
        return t.kind == TokenKind::Keyword && type_words().count(t.lexeme) > 0;
    }

    // dotted name with optional [] pairs, e.g. "P.A", "int[]"
    std::string parse_type_text() {
        if (!at_type_start()) err("expected a type, found '" + peek().lexeme + "'");
        std::string text = advance().lexeme;
        while (at(".") && peek(1).kind == TokenKind::Identifier) {
            advance();
            text += '.';
            text += advance().lexeme;
        }
        while (at("[") && peek(1).lexeme == "]") {
            advance();
            advance();
            text += "[]";
        }
        return text;
    }

    // Starting at `from`, how many tokens a type would span; 0 if none.
    std::size_t scan_type(std::size_t from) const {
        if (from >= seq_.size()) return 0;
        const Token& t = seq_[from];
        bool ok = t.kind == TokenKind::Identifier ||
                  (t.kind == TokenKind::Keyword && type_words().count(t.lexeme) > 0);
        if (!ok) return 0;
        std::size_t i = from + 1;
        while (i + 1 < seq_.size() && seq_[i].lexeme == "." &&
               seq_[i + 1].kind == TokenKind::Identifier)
            i += 2;
        while (i + 1 < seq_.size() && seq_[i].lexeme == "[" && seq_[i + 1].lexeme == "]")
            i += 2;
        return i - from;
    }

    // `Type name` followed by one of `=` `;` `,` marks a declaration, not an
    // expression statement
    bool at_var_decl() const {
        std::size_t n = scan_type(pos_);
        if (n == 0) return false;
        std::size_t i = pos_ + n;
        if (i >= seq_.size() || seq_[i].kind != TokenKind::Identifier) return false;
        if (i + 1 >= seq_.size()) return false;
        const std::string& next = seq_[i + 1].lexeme;
        return next == "=" || next == ";" || next == ",";
    }

    // --- declarations -----------------------------------------------------

    int parse_method() {
        while (!eof() && peek().kind == TokenKind::Keyword &&
               modifier_words().count(peek().lexeme))
            advance();

        std::string first = parse_type_text();
        std::string name;
        if (!eof() && peek().kind == TokenKind::Identifier && peek(1).lexeme == "(") {
            name = advance().lexeme;  // `first` was the return type
        } else if (at("(")) {
            name = first;  // constructor style, no return type
        } else {
            err("expected method name, found '" + peek().lexeme + "'");
        }

        int name_node = tree_.add(NodeKind::Name, name);
        expect("(");
        std::vector<int> params;
        if (!at(")")) {
            do {
                std::string ptype = parse_type_text();
                if (eof() || peek().kind != TokenKind::Identifier)
                    err("expected parameter name, found '" + peek().lexeme + "'");
                std::string pname = advance().lexeme;
                int tnode = tree_.add(NodeKind::Name, ptype);
                params.push_back(tree_.add(NodeKind::Param, pname, {tnode}));
            } while (accept(","));
        }
        expect(")");
        int params_node = tree_.add(NodeKind::Params, "", params);

        std::vector<int> children = {name_node, params_node};
        if (accept(":")) {
            if (!at("base") && !at("super")) err("expected 'base' or 'super' after ':'");
            advance();
            expect("(");
            std::vector<int> args;
            if (!at(")")) {
                do args.push_back(parse_expression());
                while (accept(","));
            }
            expect(")");
            children.push_back(tree_.add(NodeKind::BaseCall, "", args));
        }
        children.push_back(parse_block());
        return tree_.add(NodeKind::Method, "", children);
    }

    int parse_block() {
        DepthGuard g(*this);
        expect("{");
        std::vector<int> stmts;
        while (!at("}")) {
            if (eof()) err("unterminated block, expected '}'");
            parse_statement(stmts);
        }
        expect("}");
        return tree_.add(NodeKind::Block, "", stmts);
    }

    // --- statements ---------------------------------------------------------
    // A var-decl with several declarators emits one VarDecl per declarator,
    // hence the out-vector.

    void parse_statement(std::vector<int>& out) {
        DepthGuard g(*this);
        if (at("{")) {
            out.push_back(parse_block());
            return;
        }
        if (at("if")) {
            advance();
            expect("(");
            int cond = parse_expression();
            expect(")");
            int then_stmt = parse_single_statement();
            std::vector<int> children = {cond, then_stmt};
            if (accept("else")) children.push_back(parse_single_statement());
            out.push_back(tree_.add(NodeKind::If, "", children));
            return;
        }
        if (at("while")) {
            advance();
            expect("(");
            int cond = parse_expression();
            expect(")");
            int body = parse_single_statement();
            out.push_back(tree_.add(NodeKind::While, "", {cond, body}));
            return;
        }
        if (at("for")) {
            advance();
            expect("(");
            int init = at(";") ? tree_.add(NodeKind::Empty) : parse_for_clause(true);
            expect(";");
            int cond = at(";") ? tree_.add(NodeKind::Empty) : parse_expression();
            expect(";");
            int step = at(")") ? tree_.add(NodeKind::Empty) : parse_for_clause(false);
            expect(")");
            int body = parse_single_statement();
            out.push_back(tree_.add(NodeKind::For, "", {init, cond, step, body}));
            return;
        }
        if (at("foreach")) {
            advance();
            expect("(");
            // [type] name in expr
            std::string type_text, var_name;
            std::size_t tn = scan_type(pos_);
            if (tn > 0 && pos_ + tn < seq_.size() &&
                seq_[pos_ + tn].kind == TokenKind::Identifier &&
                pos_ + tn + 1 < seq_.size() && seq_[pos_ + tn + 1].lexeme == "in") {
                type_text = parse_type_text();
                var_name = advance().lexeme;
            } else if (!eof() && peek().kind == TokenKind::Identifier && peek(1).lexeme == "in") {
                var_name = advance().lexeme;
            } else {
                err("expected loop variable of foreach");
            }
            expect("in");
            int iter = parse_expression();
            expect(")");
            int body = parse_single_statement();
            std::vector<int> pchildren;
            if (!type_text.empty()) pchildren.push_back(tree_.add(NodeKind::Name, type_text));
            int pvar = tree_.add(NodeKind::Param, var_name, pchildren);
            out.push_back(tree_.add(NodeKind::Foreach, "", {pvar, iter, body}));
            return;
        }
        if (at("return")) {
            advance();
            std::vector<int> children;
            if (!at(";")) children.push_back(parse_expression());
            expect(";");
            out.push_back(tree_.add(NodeKind::Return, "", children));
            return;
        }
        if (at("throw")) {
            advance();
            int e = parse_expression();
            expect(";");
            out.push_back(tree_.add(NodeKind::Throw, "", {e}));
            return;
        }
        if (at("break")) {
            advance();
            expect(";");
            out.push_back(tree_.add(NodeKind::Break));
            return;
        }
        if (at("continue")) {
            advance();
            expect(";");
            out.push_back(tree_.add(NodeKind::Continue));
            return;
        }
        if (at(";")) {  // stray empty statement, tolerated
            advance();
            return;
        }
        if (at_var_decl()) {
            parse_var_decl(out);
            expect(";");
            return;
        }
        out.push_back(parse_assign_or_expr());
        expect(";");
    }

    int parse_single_statement() {
        std::vector<int> stmts;
        parse_statement(stmts);
        if (stmts.size() == 1) return stmts[0];
        // multi-declarator decl (or stray `;`) as a loop/branch body
        return tree_.add(NodeKind::Block, "", stmts);
    }

    // one clause of a for-header, without the trailing `;`
    int parse_for_clause(bool allow_decl) {
        if (allow_decl && at_var_decl()) {
            std::vector<int> decls;
            parse_var_decl(decls);
            if (decls.size() == 1) return decls[0];
            return tree_.add(NodeKind::Block, "", decls);
        }
        return parse_assign_or_expr();
    }

    void parse_var_decl(std::vector<int>& out) {
        std::string type_text = parse_type_text();
        do {
            if (eof() || peek().kind != TokenKind::Identifier)
                err("expected variable name, found '" + peek().lexeme + "'");
            std::string name = advance().lexeme;
            std::vector<int> children = {tree_.add(NodeKind::Name, type_text)};
            if (accept("=")) children.push_back(parse_expression());
            out.push_back(tree_.add(NodeKind::VarDecl, name, children));
        } while (accept(","));
    }

    int parse_assign_or_expr() {
        int e = parse_expression();
        if (at("=")) {
            NodeKind k = tree_.at(e).kind;
            if (k != NodeKind::Name && k != NodeKind::FieldAccess && k != NodeKind::Index)
                err("left side of assignment must be a name, field access or index");
            advance();
            int rhs = parse_expression();
            return tree_.add(NodeKind::Assign, "", {e, rhs});
        }
        return e;
    }

    // --- expressions --------------------------------------------------------

    int parse_expression() {
        DepthGuard g(*this);
        return parse_or();
    }

    int parse_binary_chain(int (Parser::*next)(), std::initializer_list<const char*> ops) {
        int lhs = (this->*next)();
        for (;;) {
            const char* matched = nullptr;
            for (const char* op : ops)
                if (at(op)) {
                    matched = op;
                    break;
                }
            if (!matched) return lhs;
            advance();
            int rhs = (this->*next)();
            lhs = tree_.add(NodeKind::BinaryOp, matched, {lhs, rhs});
        }
    }

    int parse_or() { return parse_binary_chain(&Parser::parse_and, {"||"}); }
    int parse_and() { return parse_binary_chain(&Parser::parse_equality, {"&&"}); }
    int parse_equality() { return parse_binary_chain(&Parser::parse_relational, {"==", "!="}); }
    int parse_relational() {
        return parse_binary_chain(&Parser::parse_additive, {"<=", ">=", "<", ">"});
    }
    int parse_additive() { return parse_binary_chain(&Parser::parse_multiplicative, {"+", "-"}); }
    int parse_multiplicative() { return parse_binary_chain(&Parser::parse_unary, {"*", "/", "%"}); }

    int parse_unary() {
        DepthGuard g(*this);
        for (const char* op : {"!", "-", "++", "--"}) {
            if (at(op)) {
                advance();
                int operand = parse_unary();
                return tree_.add(NodeKind::UnaryOp, op, {operand});
            }
        }
        return parse_postfix();
    }

    int parse_postfix() {
        int e = parse_primary();
        for (;;) {
            if (at(".") && peek(1).kind == TokenKind::Identifier) {
                advance();
                std::string field = advance().lexeme;
                e = tree_.add(NodeKind::FieldAccess, field, {e});
            } else if (at("(")) {
                advance();
                std::vector<int> children = {e};
                if (!at(")")) {
                    do children.push_back(parse_expression());
                    while (accept(","));
                }
                expect(")");
                e = tree_.add(NodeKind::Call, "", children);
            } else if (at("[")) {
                advance();
                int idx = parse_expression();
                expect("]");
                e = tree_.add(NodeKind::Index, "", {e, idx});
            } else if (at("++") || at("--")) {
                // prefix and postfix increments collapse to one node
                std::string op = advance().lexeme;
                e = tree_.add(NodeKind::UnaryOp, op, {e});
            } else {
                return e;
            }
        }
    }

    int parse_primary() {
        if (eof()) err("unexpected end of input in expression");
        const Token& t = peek();
        if (t.kind == TokenKind::LiteralInt || t.kind == TokenKind::LiteralString)
            return tree_.add(NodeKind::Literal, advance().lexeme);
        if (at("true") || at("false") || at("null"))
            return tree_.add(NodeKind::Literal, advance().lexeme);
        if (at("this") || at("base") || at("super"))
            return tree_.add(NodeKind::Name, advance().lexeme);
        if (at("new")) {
            advance();
            std::string type_text = parse_type_text();
            expect("(");
            std::vector<int> args;
            if (!at(")")) {
                do args.push_back(parse_expression());
                while (accept(","));
            }
            expect(")");
            return tree_.add(NodeKind::New, type_text, args);
        }
        if (accept("(")) {
            int e = parse_expression();
            expect(")");
            return e;
        }
        if (t.kind == TokenKind::Identifier)
            return tree_.add(NodeKind::Name, advance().lexeme);
        if (t.kind == TokenKind::Keyword && type_words().count(t.lexeme))
            return tree_.add(NodeKind::Name, advance().lexeme);
        err("unexpected token '" + t.lexeme + "' in expression");
    }

    const TokenSequence& seq_;
    SyntaxTree tree_;
    std::size_t pos_ = 0;
    int depth_ = 0;

    friend struct DepthGuard;
};

}  // namespace

ParseOutcome parse(const TokenSequence& tokens) {
    ParseOutcome out;
    out.tokens = tokens;
    try {
        Parser p(tokens);
        out.tree = p.run();
        out.status = ParseStatus::Parsed;
    } catch (const ParseError& e) {
        out.status = ParseStatus::LexOnly;
        out.tree.reset();
        out.diagnostics.push_back(Diagnostic{e.line, e.column, e.message});
    }
    return out;
}

ParseOutcome parse_source(const std::string& source) {
    return parse(tokenize(source, TokenizeMode::Lexical));
}

}  // namespace rubyeval
