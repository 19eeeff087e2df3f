#pragma once

#include <optional>
#include <string>
#include <vector>

#include "rubyeval/edit_distance.hpp"
#include "rubyeval/exas.hpp"
#include "rubyeval/parser.hpp"
#include "rubyeval/pdg.hpp"
#include "rubyeval/token.hpp"

namespace rubyeval {

// --- BLEU -------------------------------------------------------------------

struct BleuConfig {
    int max_n = 4;
    enum class BrevityPenalty { Ratio, Exponential } bp = BrevityPenalty::Ratio;
    enum class ZeroNgramPolicy { ScoreZero, AddOneSmoothing } zero_policy =
        ZeroNgramPolicy::ScoreZero;
};

struct NgramStats {
    long long clipped = 0;  // candidate i-grams that also occur in the reference bag
    long long total = 0;    // |bag_i(cand)|

    bool operator==(const NgramStats&) const = default;
};

/// The integer counts BLEU is made of; two candidates with equal breakdowns
/// have exactly equal BLEU under every configuration.
struct BleuBreakdown {
    long long ref_len = 0;
    long long cand_len = 0;
    std::vector<NgramStats> per_n;  // per_n[i-1] holds the i-gram stats
    bool empty_candidate = false;

    double score(const BleuConfig& cfg) const;
    bool operator==(const BleuBreakdown&) const = default;
};

BleuBreakdown bleu_breakdown(const TokenSequence& reference, const TokenSequence& candidate,
                             int max_n);

/// Empty candidates score 0 (the precision denominator would be zero); the
/// breakdown carries the flag.
double bleu(const TokenSequence& reference, const TokenSequence& candidate,
            const BleuConfig& cfg = {});

/// Exact rational with positive denominator; only as large as BLEU needs.
struct Rational {
    long long num = 0;
    long long den = 1;

    Rational() = default;
    Rational(long long n, long long d);
    Rational operator*(const Rational& o) const;
    bool operator==(const Rational& o) const { return num == o.num && den == o.den; }
};

/// BLEU^max_n as an exact rational (ratio brevity penalty, score-zero
/// policy); equality of these values is equality of the BLEU scores.
Rational bleu_rational_power(const BleuBreakdown& b, int max_n);

// --- STS ----------------------------------------------------------------------

enum class StsNorm { MaxLength, ReferenceLength };

struct StsResult {
    double value = 0;
    long long distance = 0;
    bool clamped = false;  // ReferenceLength mode can go negative; clamped to 0

    operator double() const { return value; }
};

StsResult sts(const TokenSequence& reference, const TokenSequence& candidate,
              StsNorm norm = StsNorm::MaxLength);

// --- TRS ----------------------------------------------------------------------

struct TrsResult {
    double value = 0;
    long long cost = 0;
    bool approximate = false;

    operator double() const { return value; }
};

TrsResult trs(const SyntaxTree& reference, const SyntaxTree& candidate,
              int exact_node_limit = 200);

// --- GRS ----------------------------------------------------------------------

struct GrsResult {
    double value = 0;
    long long distance = 0;
    long long mass = 0;

    operator double() const { return value; }
};

/// Normalized Exas vector similarity between the two dependence graphs.
GrsResult grs(const DependenceGraph& reference, const DependenceGraph& candidate,
              int max_path_length = 1);

// --- RUBY cascade ---------------------------------------------------------------

enum class RubyLevel { GRS, TRS, STS };
const char* ruby_level_name(RubyLevel level);

struct ScoreOptions {
    BleuConfig bleu;
    TokenizeMode mode = TokenizeMode::Lexical;
    StsNorm sts_norm = StsNorm::MaxLength;
    int max_path_length = 1;
    int ted_exact_limit = 200;
};

/// Everything the pipeline knows about one (reference, candidate) pair.
struct PairScores {
    double bleu = 0;
    double sts = 0;
    std::optional<double> trs;  // present iff both sides parsed
    std::optional<double> grs;  // present iff both PDGs applicable
    double ruby = 0;
    RubyLevel level = RubyLevel::STS;

    bool candidate_parsed = false;
    bool bleu_empty_candidate = false;
    bool trs_approximate = false;
};

/// Scores at the highest representation level applicable to both sides:
/// GRS, else TRS, else STS.
/// Throws std::runtime_error when the reference itself fails to parse
/// (a corrupt corpus entry).
PairScores score_pair(const std::string& reference_source, const std::string& candidate_source,
                      const ScoreOptions& opts = {});

struct RubyResult {
    double score = 0;
    RubyLevel level = RubyLevel::STS;
};

RubyResult ruby(const std::string& reference_source, const std::string& candidate_source,
                const ScoreOptions& opts = {});

}  // namespace rubyeval
