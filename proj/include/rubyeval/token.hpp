#pragma once

#include <string>
#include <vector>

namespace rubyeval {

enum class TokenKind {
    Identifier,
    Keyword,
    LiteralInt,
    LiteralString,
    Operator,
    Separator,
};

struct Token {
    TokenKind kind = TokenKind::Identifier;
    std::string lexeme;
    int line = 1;
    int column = 1;

    bool operator==(const Token& o) const { return lexeme == o.lexeme; }
};

/// Tokenization granularities.
///  - Lexical: a real lexer (identifiers, literals, operators, separators;
///    comments stripped). Default everywhere.
///  - Whitespace: maximal runs of non-whitespace characters, so "IsSimilar("
///    is one token but "IsSimilar (" is two.
///  - Character: every character (whitespace included) is a token; used for
///    forensic reproduction of character-granularity edit distances.
enum class TokenizeMode { Lexical, Whitespace, Character };

struct TokenSequence {
    std::vector<Token> tokens;
    TokenizeMode mode = TokenizeMode::Lexical;

    std::size_t size() const { return tokens.size(); }
    bool empty() const { return tokens.empty(); }
    const Token& operator[](std::size_t i) const { return tokens[i]; }

    std::vector<std::string> lexemes() const {
        std::vector<std::string> out;
        out.reserve(tokens.size());
        for (const auto& t : tokens) out.push_back(t.lexeme);
        return out;
    }

    /// Lexemes joined with single spaces; re-tokenizing the result in the
    /// same mode yields the same token identities (Lexical/Whitespace modes).
    std::string joined() const {
        std::string out;
        for (std::size_t i = 0; i < tokens.size(); ++i) {
            if (i) out += ' ';
            out += tokens[i].lexeme;
        }
        return out;
    }
};

bool is_keyword(const std::string& word);

/// Total and deterministic: any text tokenizes, unknown characters become
/// one-character operator tokens in lexical mode.
TokenSequence tokenize(const std::string& source, TokenizeMode mode = TokenizeMode::Lexical);

TokenSequence make_sequence(const std::vector<std::string>& lexemes,
                            TokenizeMode mode = TokenizeMode::Lexical);

}  // namespace rubyeval
