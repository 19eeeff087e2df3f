#pragma once

#include <cstdint>

#include "rubyeval/metrics.hpp"
#include "rubyeval/token.hpp"

namespace rubyeval {

struct PermuteResult {
    TokenSequence sequence;
    bool permuted = false;  // false = verified non-trivial permutation not found
};

/// True iff candidates a and b have exactly equal BLEU against the reference
/// for every max_n in 1..4 (and cfg.max_n if larger): equal lengths and equal
/// per-n clipped/total counts make every term of the formula identical.
bool verify_equal_bleu(const TokenSequence& reference, const TokenSequence& a,
                       const TokenSequence& b, const BleuConfig& cfg = {});

/// Reorders blocks of the candidate so that the BLEU score against the
/// reference is exactly preserved (verified before returning; the identity
/// sequence is the fallback when no verified non-trivial permutation is
/// found within the attempt budget). Deterministic given the seed.
PermuteResult permute_preserving_bleu(const TokenSequence& reference,
                                      const TokenSequence& candidate, const BleuConfig& cfg,
                                      std::uint64_t seed);

}  // namespace rubyeval
