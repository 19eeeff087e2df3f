#include "rubyeval/permute.hpp"

#include <algorithm>
#include <random>
#include <set>

namespace rubyeval {

namespace {

struct Block {
    std::vector<Token> tokens;
    bool movable = true;
};

std::vector<Token> assemble(const std::vector<Block>& blocks, const std::vector<int>& order) {
    std::vector<Token> out;
    std::size_t slot = 0;
    for (const Block& b : blocks) {
        if (b.movable) {
            int src = order[slot++];
            const Block& chosen = blocks[static_cast<std::size_t>(src)];
            out.insert(out.end(), chosen.tokens.begin(), chosen.tokens.end());
        } else {
            out.insert(out.end(), b.tokens.begin(), b.tokens.end());
        }
    }
    return out;
}

std::vector<int> movable_indices(const std::vector<Block>& blocks) {
    std::vector<int> idx;
    for (std::size_t i = 0; i < blocks.size(); ++i)
        if (blocks[i].movable) idx.push_back(static_cast<int>(i));
    return idx;
}

bool same_lexemes(const std::vector<Token>& a, const std::vector<Token>& b) {
    if (a.size() != b.size()) return false;
    for (std::size_t i = 0; i < a.size(); ++i)
        if (a[i].lexeme != b[i].lexeme) return false;
    return true;
}

// blocks separated by tokens absent from the reference: any reordering of
// the segments keeps every boundary n-gram unmatched, so all clipped counts
// survive intact
std::vector<Block> pivot_blocks(const TokenSequence& reference, const TokenSequence& candidate) {
    std::set<std::string> ref_lexemes;
    for (const Token& t : reference.tokens) ref_lexemes.insert(t.lexeme);

    std::vector<Block> blocks;
    for (const Token& t : candidate.tokens) {
        bool pivot = ref_lexemes.count(t.lexeme) == 0;
        if (blocks.empty() || blocks.back().movable != !pivot)
            blocks.push_back(Block{{}, !pivot});
        blocks.back().tokens.push_back(t);
    }
    return blocks;
}

// cuts after top-level `;` and after top-level `}` groups
std::vector<Block> statement_blocks(const TokenSequence& candidate) {
    std::vector<Block> blocks;
    Block cur;
    int depth = 0;
    for (const Token& t : candidate.tokens) {
        cur.tokens.push_back(t);
        const std::string& x = t.lexeme;
        if (x == "{" || x == "(" || x == "[") ++depth;
        if (x == "}" || x == ")" || x == "]") --depth;
        if (depth == 0 && (x == ";" || x == "}")) {
            blocks.push_back(std::move(cur));
            cur = Block{};
        }
    }
    if (!cur.tokens.empty()) blocks.push_back(std::move(cur));
    return blocks;
}

std::vector<Block> random_blocks(const TokenSequence& candidate, int cuts, std::mt19937_64& rng) {
    std::set<std::size_t> cut_set;
    std::uniform_int_distribution<std::size_t> pick(1, candidate.size() - 1);
    for (int i = 0; i < cuts; ++i) cut_set.insert(pick(rng));
    std::vector<Block> blocks;
    Block cur;
    for (std::size_t i = 0; i < candidate.size(); ++i) {
        if (cut_set.count(i) && !cur.tokens.empty()) {
            blocks.push_back(std::move(cur));
            cur = Block{};
        }
        cur.tokens.push_back(candidate[i]);
    }
    if (!cur.tokens.empty()) blocks.push_back(std::move(cur));
    return blocks;
}

}  // namespace

bool verify_equal_bleu(const TokenSequence& reference, const TokenSequence& a,
                       const TokenSequence& b, const BleuConfig& cfg) {
    int max_n = std::max(cfg.max_n, 4);
    return bleu_breakdown(reference, a, max_n) == bleu_breakdown(reference, b, max_n);
}

PermuteResult permute_preserving_bleu(const TokenSequence& reference,
                                      const TokenSequence& candidate, const BleuConfig& cfg,
                                      std::uint64_t seed) {
    PermuteResult out;
    out.sequence = candidate;
    out.permuted = false;
    if (candidate.size() < 2) return out;

    std::mt19937_64 rng(seed);

    auto try_blocks = [&](const std::vector<Block>& blocks, int attempts) -> bool {
        std::vector<int> movable = movable_indices(blocks);
        if (movable.size() < 2) return false;
        for (int a = 0; a < attempts; ++a) {
            std::vector<int> order = movable;
            std::shuffle(order.begin(), order.end(), rng);
            std::vector<Token> arranged = assemble(blocks, order);
            if (same_lexemes(arranged, candidate.tokens)) continue;
            TokenSequence permuted;
            permuted.mode = candidate.mode;
            permuted.tokens = std::move(arranged);
            if (verify_equal_bleu(reference, candidate, permuted, cfg)) {
                out.sequence = std::move(permuted);
                out.permuted = true;
                return true;
            }
        }
        return false;
    };

    if (try_blocks(pivot_blocks(reference, candidate), 24)) return out;
    if (try_blocks(statement_blocks(candidate), 40)) return out;
    for (int cuts = 2; cuts <= 4; ++cuts)
        if (try_blocks(random_blocks(candidate, cuts, rng), 40)) return out;
    return out;
}

}  // namespace rubyeval
