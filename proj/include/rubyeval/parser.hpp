#pragma once

#include <optional>
#include <string>
#include <vector>

#include "rubyeval/ast.hpp"
#include "rubyeval/token.hpp"

namespace rubyeval {

struct Diagnostic {
    int line = 1;
    int column = 1;
    std::string message;
};

enum class ParseStatus { Parsed, LexOnly };

/// Outcome of parsing one compilation unit (1+ method declarations).
/// LexOnly is a value, not a failure: it tells the metric cascade that the
/// tree-level representation is not applicable for this code.
struct ParseOutcome {
    ParseStatus status = ParseStatus::LexOnly;
    std::optional<SyntaxTree> tree;
    TokenSequence tokens;
    std::vector<Diagnostic> diagnostics;

    bool parsed() const { return status == ParseStatus::Parsed; }
};

/// Any syntax error downgrades the whole unit to lex-only; never throws.
ParseOutcome parse(const TokenSequence& tokens);

/// tokenize(source, Lexical) followed by parse().
ParseOutcome parse_source(const std::string& source);

}  // namespace rubyeval
