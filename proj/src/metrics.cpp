#include "rubyeval/metrics.hpp"

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <map>
#include <numeric>
#include <stdexcept>

namespace rubyeval {

// --- BLEU ---------------------------------------------------------------------

namespace {

std::map<std::vector<std::string>, long long> ngram_bag(const TokenSequence& seq, int n) {
    std::map<std::vector<std::string>, long long> bag;
    if (static_cast<int>(seq.size()) < n) return bag;
    for (std::size_t i = 0; i + static_cast<std::size_t>(n) <= seq.size(); ++i) {
        std::vector<std::string> gram;
        gram.reserve(static_cast<std::size_t>(n));
        for (int k = 0; k < n; ++k) gram.push_back(seq[i + static_cast<std::size_t>(k)].lexeme);
        ++bag[std::move(gram)];
    }
    return bag;
}

}  // namespace

BleuBreakdown bleu_breakdown(const TokenSequence& reference, const TokenSequence& candidate,
                             int max_n) {
    BleuBreakdown b;
    b.ref_len = static_cast<long long>(reference.size());
    b.cand_len = static_cast<long long>(candidate.size());
    b.empty_candidate = candidate.empty();
    for (int n = 1; n <= max_n; ++n) {
        auto ref_bag = ngram_bag(reference, n);
        auto cand_bag = ngram_bag(candidate, n);
        NgramStats s;
        for (const auto& [gram, count] : cand_bag) {
            s.total += count;
            auto it = ref_bag.find(gram);
            if (it != ref_bag.end()) s.clipped += std::min(count, it->second);
        }
        b.per_n.push_back(s);
    }
    return b;
}

double BleuBreakdown::score(const BleuConfig& cfg) const {
    if (empty_candidate || ref_len == 0) return 0.0;

    double log_sum = 0.0;
    int n = static_cast<int>(per_n.size());
    for (int i = 0; i < n; ++i) {
        long long clipped = per_n[static_cast<std::size_t>(i)].clipped;
        long long total = per_n[static_cast<std::size_t>(i)].total;
        double p;
        if (i > 0 && cfg.zero_policy == BleuConfig::ZeroNgramPolicy::AddOneSmoothing) {
            p = static_cast<double>(clipped + 1) / static_cast<double>(total + 1);
        } else {
            if (clipped == 0 || total == 0) return 0.0;
            p = static_cast<double>(clipped) / static_cast<double>(total);
        }
        log_sum += std::log(p);
    }

    double bp = 1.0;
    if (cfg.bp == BleuConfig::BrevityPenalty::Ratio) {
        if (cand_len <= ref_len)
            bp = static_cast<double>(cand_len) / static_cast<double>(ref_len);
    } else {
        if (cand_len < ref_len)
            bp = std::exp(1.0 - static_cast<double>(ref_len) / static_cast<double>(cand_len));
    }
    return bp * std::exp(log_sum / n);
}

double bleu(const TokenSequence& reference, const TokenSequence& candidate,
            const BleuConfig& cfg) {
    return bleu_breakdown(reference, candidate, cfg.max_n).score(cfg);
}

Rational::Rational(long long n, long long d) {
    if (d == 0) throw std::invalid_argument("Rational: zero denominator");
    if (d < 0) {
        n = -n;
        d = -d;
    }
    long long g = std::gcd(n < 0 ? -n : n, d);
    if (g > 1) {
        n /= g;
        d /= g;
    }
    num = n;
    den = d;
}

Rational Rational::operator*(const Rational& o) const {
    long long a = num, b = den, c = o.num, d = o.den;
    long long g1 = std::gcd(a < 0 ? -a : a, d);
    long long g2 = std::gcd(c < 0 ? -c : c, b);
    a /= g1;
    d /= g1;
    c /= g2;
    b /= g2;
    __int128 nn = static_cast<__int128>(a) * c;
    __int128 dd = static_cast<__int128>(b) * d;
    if (nn > INT64_MAX || nn < INT64_MIN || dd > INT64_MAX)
        throw std::overflow_error("Rational: product out of range");
    return Rational(static_cast<long long>(nn), static_cast<long long>(dd));
}

Rational bleu_rational_power(const BleuBreakdown& b, int max_n) {
    if (b.empty_candidate || b.ref_len == 0) return Rational(0, 1);
    Rational acc(1, 1);
    for (int i = 0; i < max_n; ++i) {
        const NgramStats& s = b.per_n[static_cast<std::size_t>(i)];
        if (s.clipped == 0 || s.total == 0) return Rational(0, 1);
        acc = acc * Rational(s.clipped, s.total);
    }
    Rational bp = b.cand_len > b.ref_len ? Rational(1, 1) : Rational(b.cand_len, b.ref_len);
    for (int i = 0; i < max_n; ++i) acc = acc * bp;
    return acc;
}

// --- STS ---------------------------------------------------------------------

StsResult sts(const TokenSequence& reference, const TokenSequence& candidate, StsNorm norm) {
    if (reference.empty()) throw std::invalid_argument("sts: reference must be non-empty");
    StsResult r;
    r.distance = levenshtein(reference.lexemes(), candidate.lexemes());
    long long denom = norm == StsNorm::MaxLength
                          ? std::max<long long>(static_cast<long long>(reference.size()),
                                                static_cast<long long>(candidate.size()))
                          : static_cast<long long>(reference.size());
    double v = 1.0 - static_cast<double>(r.distance) / static_cast<double>(denom);
    if (v < 0.0) {
        v = 0.0;
        r.clamped = true;
    }
    r.value = v;
    return r;
}

// --- TRS ---------------------------------------------------------------------

TrsResult trs(const SyntaxTree& reference, const SyntaxTree& candidate, int exact_node_limit) {
    TrsResult r;
    TedResult ted =
        tree_edit_distance(reference, reference.root, candidate, candidate.root, exact_node_limit);
    r.cost = ted.cost;
    r.approximate = ted.approximate;
    r.value = 1.0 - static_cast<double>(ted.cost) /
                        static_cast<double>(reference.size() + candidate.size());
    return r;
}

// --- GRS ---------------------------------------------------------------------

GrsResult grs(const DependenceGraph& reference, const DependenceGraph& candidate,
              int max_path_length) {
    FeatureVector vr = extract_features(reference, max_path_length);
    FeatureVector vc = extract_features(candidate, max_path_length);
    VectorDistance d = vector_distance(vr, vc);
    GrsResult r;
    r.distance = d.distance;
    r.mass = d.mass;
    r.value = d.similarity();
    return r;
}

// --- RUBY cascade ----------------------------------------------------------------

const char* ruby_level_name(RubyLevel level) {
    switch (level) {
        case RubyLevel::GRS: return "GRS";
        case RubyLevel::TRS: return "TRS";
        case RubyLevel::STS: return "STS";
    }
    return "?";
}

PairScores score_pair(const std::string& reference_source, const std::string& candidate_source,
                      const ScoreOptions& opts) {
    ParseOutcome ref_parse = parse_source(reference_source);
    if (!ref_parse.parsed()) {
        std::string msg = "reference does not parse";
        if (!ref_parse.diagnostics.empty()) msg += ": " + ref_parse.diagnostics.front().message;
        throw std::runtime_error(msg);
    }

    PairScores out;
    TokenSequence ref_tokens = tokenize(reference_source, opts.mode);
    TokenSequence cand_tokens = tokenize(candidate_source, opts.mode);
    if (ref_tokens.empty()) throw std::runtime_error("reference has no tokens");

    BleuBreakdown bb = bleu_breakdown(ref_tokens, cand_tokens, opts.bleu.max_n);
    out.bleu = bb.score(opts.bleu);
    out.bleu_empty_candidate = bb.empty_candidate;
    out.sts = sts(ref_tokens, cand_tokens, opts.sts_norm).value;

    ParseOutcome cand_parse = parse_source(candidate_source);
    out.candidate_parsed = cand_parse.parsed();

    if (cand_parse.parsed()) {
        TrsResult t = trs(*ref_parse.tree, *cand_parse.tree, opts.ted_exact_limit);
        out.trs = t.value;
        out.trs_approximate = t.approximate;

        PdgBuildResult ref_pdg = build_pdg(*ref_parse.tree);
        PdgBuildResult cand_pdg = build_pdg(*cand_parse.tree);
        if (ref_pdg.applicable() && cand_pdg.applicable())
            out.grs = grs(*ref_pdg.graph, *cand_pdg.graph, opts.max_path_length).value;
    }

    if (out.grs) {
        out.ruby = *out.grs;
        out.level = RubyLevel::GRS;
    } else if (out.trs) {
        out.ruby = *out.trs;
        out.level = RubyLevel::TRS;
    } else {
        out.ruby = out.sts;
        out.level = RubyLevel::STS;
    }
    return out;
}

RubyResult ruby(const std::string& reference_source, const std::string& candidate_source,
                const ScoreOptions& opts) {
    PairScores s = score_pair(reference_source, candidate_source, opts);
    return RubyResult{s.ruby, s.level};
}

}  // namespace rubyeval
