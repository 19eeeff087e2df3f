#include "rubyeval/token.hpp"

#include <array>
#include <cctype>
#include <unordered_set>

namespace rubyeval {

namespace {

// Union of the Java and C# keyword sets that matter for a C-family method
// body; both `super` and `base` are accepted since the corpus mixes the two
// languages.
const std::unordered_set<std::string>& keyword_set() {
    static const std::unordered_set<std::string> kw = {
        "abstract", "base",     "bool",      "boolean", "break",    "byte",
        "case",     "catch",    "char",      "class",   "const",    "continue",
        "decimal",  "default",  "do",        "double",  "else",     "enum",
        "extends",  "final",    "finally",   "float",   "for",      "foreach",
        "goto",     "if",       "implements", "import",  "in",       "instanceof",
        "int",      "interface", "internal",  "is",      "lock",     "long",
        "namespace", "native",   "new",       "null",    "object",   "out",
        "override", "package",  "params",    "private", "protected", "public",
        "readonly", "ref",      "return",    "sbyte",   "sealed",   "short",
        "static",   "string",   "String",    "struct",  "super",    "switch",
        "synchronized", "this", "throw",     "throws",  "transient", "try",
        "uint",     "ulong",    "ushort",    "using",   "var",      "virtual",
        "void",     "volatile", "while",     "true",    "false",
    };
    return kw;
}

bool is_ident_start(char c) {
    return std::isalpha(static_cast<unsigned char>(c)) || c == '_' || c == '$';
}
bool is_ident_part(char c) {
    return std::isalnum(static_cast<unsigned char>(c)) || c == '_' || c == '$';
}
bool is_separator_char(char c) {
    switch (c) {
        case '(': case ')': case '{': case '}': case '[': case ']':
        case ';': case ',': case '.': case ':':
            return true;
        default:
            return false;
    }
}

// Multi-character operators, longest match first.
const std::array<const char*, 19> kMultiOps = {
    "<<=", ">>=", "==", "!=", "<=", ">=", "&&", "||", "++", "--",
    "+=", "-=", "*=", "/=", "%=", "->", "??", "<<", ">>",
};

class Cursor {
public:
    explicit Cursor(const std::string& s) : src_(s) {}

    bool done() const { return pos_ >= src_.size(); }
    char peek(std::size_t ahead = 0) const {
        return pos_ + ahead < src_.size() ? src_[pos_ + ahead] : '\0';
    }
    char advance() {
        char c = src_[pos_++];
        if (c == '\n') {
            ++line_;
            col_ = 1;
        } else {
            ++col_;
        }
        return c;
    }
    int line() const { return line_; }
    int col() const { return col_; }

private:
    const std::string& src_;
    std::size_t pos_ = 0;
    int line_ = 1;
    int col_ = 1;
};

TokenSequence tokenize_lexical(const std::string& source) {
    TokenSequence seq;
    seq.mode = TokenizeMode::Lexical;
    Cursor cur(source);

    while (!cur.done()) {
        char c = cur.peek();
        if (std::isspace(static_cast<unsigned char>(c))) {
            cur.advance();
            continue;
        }
        // comments are stripped
        if (c == '/' && cur.peek(1) == '/') {
            while (!cur.done() && cur.peek() != '\n') cur.advance();
            continue;
        }
        if (c == '/' && cur.peek(1) == '*') {
            cur.advance();
            cur.advance();
            while (!cur.done() && !(cur.peek() == '*' && cur.peek(1) == '/')) cur.advance();
            if (!cur.done()) {
                cur.advance();
                cur.advance();
            }
            continue;
        }

        Token tok;
        tok.line = cur.line();
        tok.column = cur.col();

        if (is_ident_start(c)) {
            std::string word;
            while (!cur.done() && is_ident_part(cur.peek())) word += cur.advance();
            tok.kind = is_keyword(word) ? TokenKind::Keyword : TokenKind::Identifier;
            tok.lexeme = word;
        } else if (std::isdigit(static_cast<unsigned char>(c))) {
            std::string num;
            while (!cur.done() && std::isdigit(static_cast<unsigned char>(cur.peek()))) num += cur.advance();
            tok.kind = TokenKind::LiteralInt;
            tok.lexeme = num;
        } else if (c == '"' || c == '\'') {
            char quote = cur.advance();
            std::string lit(1, quote);
            while (!cur.done() && cur.peek() != quote && cur.peek() != '\n') {
                if (cur.peek() == '\\') lit += cur.advance();
                if (!cur.done()) lit += cur.advance();
            }
            if (!cur.done() && cur.peek() == quote) lit += cur.advance();
            tok.kind = TokenKind::LiteralString;
            tok.lexeme = lit;
        } else if (is_separator_char(c)) {
            tok.kind = TokenKind::Separator;
            tok.lexeme = std::string(1, cur.advance());
        } else {
            tok.kind = TokenKind::Operator;
            const char* matched = nullptr;
            for (const char* op : kMultiOps) {
                std::size_t n = std::char_traits<char>::length(op);
                bool ok = true;
                for (std::size_t i = 0; i < n; ++i) {
                    if (cur.peek(i) != op[i]) {
                        ok = false;
                        break;
                    }
                }
                if (ok) {
                    matched = op;
                    break;
                }
            }
            if (matched) {
                tok.lexeme = matched;
                for (std::size_t i = 0; i < tok.lexeme.size(); ++i) cur.advance();
            } else {
                // any unknown character is a one-character operator token
                tok.lexeme = std::string(1, cur.advance());
            }
        }
        seq.tokens.push_back(std::move(tok));
    }
    return seq;
}

TokenSequence tokenize_whitespace(const std::string& source) {
    TokenSequence seq;
    seq.mode = TokenizeMode::Whitespace;
    int line = 1, col = 1;
    std::string run;
    int run_line = 1, run_col = 1;
    auto flush = [&]() {
        if (run.empty()) return;
        Token tok;
        tok.kind = TokenKind::Identifier;
        tok.lexeme = run;
        tok.line = run_line;
        tok.column = run_col;
        seq.tokens.push_back(std::move(tok));
        run.clear();
    };
    for (char c : source) {
        if (std::isspace(static_cast<unsigned char>(c))) {
            flush();
        } else {
            if (run.empty()) {
                run_line = line;
                run_col = col;
            }
            run += c;
        }
        if (c == '\n') {
            ++line;
            col = 1;
        } else {
            ++col;
        }
    }
    flush();
    return seq;
}

TokenSequence tokenize_character(const std::string& source) {
    TokenSequence seq;
    seq.mode = TokenizeMode::Character;
    int line = 1, col = 1;
    for (char c : source) {
        Token tok;
        tok.kind = TokenKind::Operator;
        tok.lexeme = std::string(1, c);
        tok.line = line;
        tok.column = col;
        seq.tokens.push_back(std::move(tok));
        if (c == '\n') {
            ++line;
            col = 1;
        } else {
            ++col;
        }
    }
    return seq;
}

}  // namespace

bool is_keyword(const std::string& word) { return keyword_set().count(word) > 0; }

TokenSequence tokenize(const std::string& source, TokenizeMode mode) {
    switch (mode) {
        case TokenizeMode::Whitespace: return tokenize_whitespace(source);
        case TokenizeMode::Character: return tokenize_character(source);
        case TokenizeMode::Lexical: break;
    }
    return tokenize_lexical(source);
}

TokenSequence make_sequence(const std::vector<std::string>& lexemes, TokenizeMode mode) {
    TokenSequence seq;
    seq.mode = mode;
    for (const auto& lex : lexemes) {
        Token t;
        t.kind = TokenKind::Identifier;
        t.lexeme = lex;
        seq.tokens.push_back(std::move(t));
    }
    return seq;
}

}  // namespace rubyeval
