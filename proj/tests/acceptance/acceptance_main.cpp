// Acceptance suite: one line per criterion, nonzero exit on any failure.
// Usage: acceptance [--cli <path-to-rubyeval-binary>]

#include <unistd.h>

#include <algorithm>
#include <chrono>
#include <cmath>
#include <cstdio>
#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <numeric>
#include <random>
#include <sstream>
#include <string>
#include <vector>

#include "../generators.hpp"
#include "../oracles.hpp"
#include "rubyeval/corpus.hpp"
#include "rubyeval/metrics.hpp"
#include "rubyeval/permute.hpp"
#include "rubyeval/stats.hpp"

using namespace rubyeval;

namespace {

int g_failures = 0;

void report(int criterion, bool ok, const std::string& what, const std::string& detail = "") {
    std::printf("%s criterion %2d: %s%s%s\n", ok ? "PASS" : "FAIL", criterion, what.c_str(),
                detail.empty() ? "" : " -- ", detail.c_str());
    if (!ok) ++g_failures;
}

std::string fmt(double v) {
    char buf[64];
    std::snprintf(buf, sizeof(buf), "%.9g", v);
    return buf;
}

const char* kCode1 =
    "void foo(int i) { int j; if (i < 2) { j = 1; } else { j = 2; } }";
const char* kCode2 =
    "void foo(int i) { int j; if (i < 2) j = i; j = 2; }";
const char* kConstructorReference =
    "public ClientQueryResult(Transaction ta, int initialSize) : base(ta, initialSize) {}";
const char* kConstructorBroken =
    "public ClientQueryResult(Transaction ta, int initialSize) : base(ta {, initialSize) ; }";

// ---- criterion 1: graph-level similarity of the branching fragment pair ------

void criterion_1() {
    auto start = std::chrono::steady_clock::now();
    bool ok = true;
    std::string detail;

    PairScores s = score_pair(kCode1, kCode2);
    double elapsed =
        std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();

    ok &= s.grs.has_value();
    if (s.grs) ok &= std::fabs(*s.grs - 0.6) <= 1e-9;
    ok &= s.level == RubyLevel::GRS;
    ok &= elapsed < 1.0;

    // the same number from the feature vectors directly
    DependenceGraph g1 = *build_pdg(*parse_source(kCode1).tree).graph;
    DependenceGraph g2 = *build_pdg(*parse_source(kCode2).tree).graph;
    GrsResult r = grs(g1, g2, 1);
    ok &= r.distance == 8 && r.mass == 20;

    detail = "grs=" + fmt(s.grs.value_or(-1)) + " (1 - " + std::to_string(r.distance) + "/" +
             std::to_string(r.mass) + "), " + fmt(elapsed) + "s";
    report(1, ok, "pipeline similarity of the branching fragment pair is 0.6 exactly", detail);
}

// ---- criterion 2: tree similarity of the encoded if/else pair ------------------

void criterion_2() {
    SyntaxTree before, after;
    {
        int i = before.add(NodeKind::Name, "i");
        int two = before.add(NodeKind::Literal, "2");
        int cond = before.add(NodeKind::BinaryOp, "<", {i, two});
        int j = before.add(NodeKind::Name, "j");
        int one = before.add(NodeKind::Literal, "1");
        int assign = before.add(NodeKind::Assign, "", {j, one});
        before.root = before.add(NodeKind::If, "", {cond, assign});
    }
    {
        int i = after.add(NodeKind::Name, "i");
        int zero = after.add(NodeKind::Literal, "0");
        int cond = after.add(NodeKind::BinaryOp, ">", {i, zero});
        int k = after.add(NodeKind::Name, "k");
        int five = after.add(NodeKind::Literal, "5");
        int assign = after.add(NodeKind::Assign, "", {k, five});
        int j = after.add(NodeKind::Name, "j");
        int ret = after.add(NodeKind::Return, "", {j});
        after.root = after.add(NodeKind::If, "", {cond, assign, ret});
    }
    TrsResult r = trs(before, after);
    bool ok = before.size() + after.size() == 16 && r.cost == 6 && !r.approximate &&
              r.value == 0.625;
    report(2, ok, "if/else tree pair: 6 edits over 16 nodes give TRS = 0.625 exactly",
           "nodes=" + std::to_string(before.size() + after.size()) +
               " cost=" + std::to_string(r.cost) + " trs=" + fmt(r.value));
}

// ---- criterion 3: character-level edit distance of the constructor pair ---------

void criterion_3() {
    TokenSequence ref = tokenize(kConstructorReference, TokenizeMode::Character);
    TokenSequence cand = tokenize(kConstructorBroken, TokenizeMode::Character);
    StsResult r = sts(ref, cand, StsNorm::ReferenceLength);
    bool ok = r.distance == 4 && std::fabs(r.value - 0.952) <= 0.001;
    report(3, ok, "constructor pair at reference-length normalization: distance 4, 0.952",
           "sed=" + std::to_string(r.distance) + " value=" + fmt(r.value));
}

// ---- criterion 4: score-preserving permutations -----------------------------------

void criterion_4() {
    testgen::Rng rng(20240);
    int verified = 0, emitted = 0, exact_failures = 0;
    const int kPairs = 1000;

    for (int it = 0; it < kPairs; ++it) {
        std::string ref_src = testgen::random_method_source(rng, testgen::pick(rng, 2, 6));
        TokenSequence ref = tokenize(ref_src, TokenizeMode::Lexical);
        TokenSequence cand = ref;
        // light edits plus out-of-vocabulary separators between statements
        int edits = testgen::pick(rng, 0, 3);
        for (int e = 0; e < edits; ++e) {
            std::size_t at = static_cast<std::size_t>(
                testgen::pick(rng, 0, static_cast<int>(cand.size()) - 1));
            cand.tokens[at].lexeme = "ed" + std::to_string(e);
        }
        int seps = testgen::pick(rng, 1, 3);
        for (int p = 0; p < seps; ++p) {
            Token t;
            t.lexeme = "sep" + std::to_string(p) + "z";
            std::size_t at = static_cast<std::size_t>(
                testgen::pick(rng, 1, static_cast<int>(cand.size()) - 1));
            cand.tokens.insert(cand.tokens.begin() + static_cast<long>(at), t);
        }

        BleuConfig cfg;
        cfg.max_n = 4;
        PermuteResult r =
            permute_preserving_bleu(ref, cand, cfg, static_cast<std::uint64_t>(it));
        emitted += r.permuted;

        bool equal = true;
        for (int n = 1; n <= 4; ++n) {
            Rational a = bleu_rational_power(bleu_breakdown(ref, cand, n), n);
            Rational b = bleu_rational_power(bleu_breakdown(ref, r.sequence, n), n);
            equal &= a == b;
        }
        if (equal)
            ++verified;
        else
            ++exact_failures;
    }

    // direction check: permutations keep BLEU but lower string similarity
    testgen::Rng crng(7777);
    double sts_orig = 0, sts_perm = 0;
    int corpus_pairs = 100, moved = 0;
    for (int i = 0; i < corpus_pairs; ++i) {
        std::string ref_src = testgen::random_method_source(crng, 5);
        TokenSequence ref = tokenize(ref_src, TokenizeMode::Lexical);
        TokenSequence cand = ref;
        for (int p = 0; p < 2; ++p) {
            Token t;
            t.lexeme = "mark" + std::to_string(p) + "q";
            std::size_t at = cand.size() * static_cast<std::size_t>(p + 1) / 3;
            if (at == 0) at = 1;
            cand.tokens.insert(cand.tokens.begin() + static_cast<long>(at), t);
        }
        BleuConfig cfg;
        PermuteResult r =
            permute_preserving_bleu(ref, cand, cfg, static_cast<std::uint64_t>(1000 + i));
        moved += r.permuted;
        sts_orig += sts(ref, cand).value;
        sts_perm += sts(ref, r.sequence).value;
    }
    sts_orig /= corpus_pairs;
    sts_perm /= corpus_pairs;

    bool ok = verified == kPairs && exact_failures == 0 && emitted > kPairs / 2 &&
              moved > corpus_pairs / 2 && sts_perm < sts_orig;
    report(4, ok,
           "1000 permuted pairs keep BLEU exactly (rational, n=1..4); mean STS drops",
           "verified=" + std::to_string(verified) + "/1000, permuted=" + std::to_string(emitted) +
               ", corpus mean STS " + fmt(sts_orig) + " -> " + fmt(sts_perm));
}

// ---- criterion 5: hand-counted BLEU and the reordered counterexample -------------

void criterion_5() {
    TokenSequence ref = make_sequence({"A", "B", "C", "D"});
    TokenSequence t1 = make_sequence({"A", "B", "E", "C", "D"});
    TokenSequence t2 = make_sequence({"C", "D", "E", "A", "B"});

    BleuConfig cfg2;
    cfg2.max_n = 2;
    double v = bleu(ref, t1, cfg2);
    bool ok = std::fabs(v - 0.632455) <= 1e-6;

    for (int n = 1; n <= 4; ++n) {
        BleuConfig cfg;
        cfg.max_n = n;
        ok &= bleu(ref, t1, cfg) == bleu(ref, t2, cfg);
        ok &= bleu_rational_power(bleu_breakdown(ref, t1, n), n) ==
              bleu_rational_power(bleu_breakdown(ref, t2, n), n);
    }
    report(5, ok, "hand BLEU 0.632455 at n=2; reordered counterexample matches exactly",
           "bleu=" + fmt(v));
}

// ---- criterion 6: edit-distance oracles -------------------------------------------

void criterion_6() {
    auto start = std::chrono::steady_clock::now();

    // token distance: every sequence pair up to length 6 over {a,b,c}
    std::vector<std::vector<std::string>> seqs;
    std::vector<std::string> cur;
    auto enumerate = [&](auto&& self, int remaining) -> void {
        seqs.push_back(cur);
        if (remaining == 0) return;
        for (const char* s : {"a", "b", "c"}) {
            cur.push_back(s);
            self(self, remaining - 1);
            cur.pop_back();
        }
    };
    enumerate(enumerate, 6);

    long long lev_checked = 0, lev_bad = 0;
    for (const auto& a : seqs) {
        for (const auto& b : seqs) {
            if (levenshtein(a, b) != oracle::levenshtein(a, b)) ++lev_bad;
            ++lev_checked;
        }
    }

    // tree distance: exhaustive 2-label trees to 4 nodes, all shapes to 6
    // nodes under alternating labelings, plus a randomized sample
    std::vector<oracle::Label> palette = {{NodeKind::Name, "a"}, {NodeKind::Literal, "b"}};
    std::vector<SyntaxTree> trees;
    for (int n = 1; n <= 4; ++n) {
        for (const auto& shape : oracle::all_shapes(n)) {
            std::vector<std::size_t> idx(static_cast<std::size_t>(n), 0);
            for (;;) {
                std::vector<oracle::Label> labels;
                for (std::size_t i = 0; i < idx.size(); ++i) labels.push_back(palette[idx[i]]);
                trees.push_back(oracle::labeled(shape, labels));
                std::size_t k = 0;
                while (k < idx.size()) {
                    if (++idx[k] < palette.size()) break;
                    idx[k] = 0;
                    ++k;
                }
                if (k == idx.size()) break;
            }
        }
    }
    for (int n = 5; n <= 6; ++n) {
        for (const auto& shape : oracle::all_shapes(n)) {
            for (int variant = 0; variant < 2; ++variant) {
                std::vector<oracle::Label> labels;
                for (int i = 0; i < n; ++i)
                    labels.push_back(palette[static_cast<std::size_t>((i + variant) % 2)]);
                trees.push_back(oracle::labeled(shape, labels));
            }
        }
    }

    long long ted_checked = 0, ted_bad = 0;
    for (const auto& a : trees) {
        for (const auto& b : trees) {
            long long expect = oracle::tree_edit(a, a.root, b, b.root);
            if (tree_edit_distance(a, a.root, b, b.root).cost != expect) ++ted_bad;
            ++ted_checked;
        }
    }

    // randomized labelings over the 5/6-node shapes
    testgen::Rng rng(6);
    std::vector<oracle::Shape> shapes6;
    for (int n = 5; n <= 6; ++n)
        for (const auto& s : oracle::all_shapes(n)) shapes6.push_back(s);
    for (int it = 0; it < 2000; ++it) {
        auto make = [&]() {
            const auto& shape = shapes6[static_cast<std::size_t>(
                testgen::pick(rng, 0, static_cast<int>(shapes6.size()) - 1))];
            std::vector<oracle::Label> labels;
            for (std::size_t i = 0; i < shape.children.size(); ++i)
                labels.push_back(palette[static_cast<std::size_t>(testgen::pick(rng, 0, 1))]);
            return oracle::labeled(shape, labels);
        };
        SyntaxTree a = make(), b = make();
        long long expect = oracle::tree_edit(a, a.root, b, b.root);
        if (tree_edit_distance(a, a.root, b, b.root).cost != expect) ++ted_bad;
        ++ted_checked;
    }

    double elapsed =
        std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
    bool ok = lev_bad == 0 && ted_bad == 0 && elapsed < 60.0;
    report(6, ok, "edit distances match exhaustive oracles",
           std::to_string(lev_checked) + " sequence pairs, " + std::to_string(ted_checked) +
               " tree pairs, " + fmt(elapsed) + "s");
}

// ---- criterion 7: statistics ---------------------------------------------------------

double t_p_by_quadrature(double t, int df) {
    if (t == 0.0) return 1.0;
    double b = std::fabs(t);
    int steps = 40000;
    double h = b / steps;
    double ln_norm = std::lgamma((df + 1.0) / 2.0) - std::lgamma(df / 2.0) -
                     0.5 * std::log(df * 3.14159265358979323846);
    auto pdf = [&](double x) {
        return std::exp(ln_norm - (df + 1.0) / 2.0 * std::log1p(x * x / df));
    };
    double sum = pdf(0.0) + pdf(b);
    for (int i = 1; i < steps; ++i) sum += pdf(i * h) * (i % 2 ? 4.0 : 2.0);
    return 1.0 - 2.0 * (sum * h / 3.0);
}

void criterion_7() {
    // the five-point example: d = (0,-1,1,-1,1), sum d^2 = 4, so the
    // rank-correlation formula 1 - 6*4/(5*24) gives 0.8 exactly (the
    // criterion sheet prints 0.7 beside the same derivation; 0.8 is what
    // that derivation evaluates to, so 0.8 is asserted here)
    double rho = spearman({1, 2, 3, 4, 5}, {1, 3, 2, 5, 4});
    bool ok = rho == 0.8;

    double crit = t_critical(374, 0.95);
    ok &= std::fabs(crit - 1.9665) <= 0.001;

    double max_err = 0;
    for (int df : {1, 5, 30, 374}) {
        for (double t : {0.0, 1.0, 2.0, 5.0}) {
            double err = std::fabs(student_t_p_two_sided(t, df) - t_p_by_quadrature(t, df));
            max_err = std::max(max_err, err);
        }
    }
    ok &= max_err < 1e-6;

    report(7, ok, "rank correlation 0.8 (per its own sum-of-squares derivation), "
                  "t-critical(374) within 0.001 of 1.9665, p-values within 1e-6 of quadrature",
           "rho=" + fmt(rho) + " tcrit=" + fmt(crit) + " perr=" + fmt(max_err));
}

// ---- criterion 8: consensus-subset recovery ------------------------------------------

void criterion_8() {
    std::mt19937_64 rng(424242);
    std::uniform_real_distribution<double> unit(0.0, 1.0);
    std::vector<Point> pts;
    for (int i = 0; i < 80; ++i) {
        double x = unit(rng);
        pts.push_back(Point{x, x + (unit(rng) - 0.5) * 0.02});
    }
    for (int i = 0; i < 20; ++i) pts.push_back(Point{unit(rng), unit(rng)});

    RansacResult a = ransac_consensus(pts, 400, 0.05, 11);
    RansacResult b = ransac_consensus(pts, 400, 0.05, 11);
    int planted = 0;
    for (int idx : a.inlier_indices)
        if (idx < 80) ++planted;

    RansacResult runs = ransac_runs(pts, 10, 400, 0.05, 11);

    bool ok = planted >= 78 && a.subset_correlation >= 0.99 &&
              a.inlier_indices == b.inlier_indices && runs.runs.size() == 10;
    report(8, ok, "planted consensus recovered (>=78/80, corr >= 0.99), deterministic, 10-run report",
           "planted=" + std::to_string(planted) + " corr=" + fmt(a.subset_correlation));
}

// ---- criterion 9: metric cascade behavior ----------------------------------------------

void criterion_9() {
    testgen::Rng rng(99);

    bool identity_ok = true;
    std::vector<CorpusPair> identity;
    for (int i = 0; i < 20; ++i) {
        CorpusPair p;
        p.id = "i" + std::to_string(i);
        p.reference = testgen::random_method_source(rng, testgen::pick(rng, 1, 5));
        p.candidate = p.reference;
        identity.push_back(std::move(p));
    }
    CorpusReport ir = score_corpus(identity);
    identity_ok &= ir.records.size() == identity.size();
    for (const auto& r : ir.records)
        identity_ok &= r.ruby == 1.0 && r.ruby_level == RubyLevel::GRS;

    bool broken_ok = true;
    std::vector<CorpusPair> broken;
    for (int i = 0; i < 20; ++i) {
        CorpusPair p;
        p.id = "b" + std::to_string(i);
        p.reference = testgen::random_method_source(rng, testgen::pick(rng, 1, 5));
        TokenSequence cand = tokenize(p.reference, TokenizeMode::Lexical);
        // misplace a brace inside the token stream, like the constructor example
        std::size_t at = cand.size() / 2;
        Token t;
        t.lexeme = "{";
        cand.tokens.insert(cand.tokens.begin() + static_cast<long>(at), t);
        p.candidate = cand.joined();
        broken.push_back(std::move(p));
    }
    CorpusReport br = score_corpus(broken);
    broken_ok &= br.records.size() == broken.size();
    for (const auto& r : br.records) broken_ok &= r.ruby_level == RubyLevel::STS;

    bool rename_ok = true;
    for (int i = 0; i < 20; ++i) {
        int seed = 1000 + i;
        auto source_with = [&](const std::string& v1, const std::string& v2) {
            testgen::Rng local(static_cast<std::uint64_t>(seed));
            int a = testgen::pick(local, 0, 9), b = testgen::pick(local, 1, 9);
            return "int f(int " + v1 + ") { int " + v2 + " = " + std::to_string(a) + "; if (" +
                   v1 + " < " + std::to_string(b) + ") { " + v2 + " = " + v1 + "; } return " +
                   v2 + "; }";
        };
        PairScores s = score_pair(source_with("count", "total"), source_with("n", "acc"));
        rename_ok &= s.grs.has_value() && *s.grs == 1.0 && s.sts < 1.0 &&
                     s.level == RubyLevel::GRS && s.ruby == 1.0;
    }

    report(9, identity_ok && broken_ok && rename_ok,
           "cascade: identity corpus all GRS=1.0; broken candidates all STS; consistent "
           "renames keep GRS=1.0 while STS<1");
}

// ---- criterion 10: byte-identical reports ------------------------------------------------

void criterion_10(const std::string& cli) {
    if (cli.empty()) {
        report(10, false, "corpus runs are byte-identical", "no --cli binary provided");
        return;
    }
    namespace fs = std::filesystem;
    std::string base = (fs::temp_directory_path() /
                        ("rubyeval_accept_" + std::to_string(::getpid())))
                           .string();
    std::string corpus_path = base + ".jsonl";

    testgen::Rng rng(5005);
    std::ostringstream corpus;
    for (int i = 0; i < 25; ++i) {
        std::string ref = testgen::random_method_source(rng, testgen::pick(rng, 1, 5));
        std::string cand = i % 4 == 0 ? ref : testgen::random_method_source(rng, 3);
        corpus << "{\"id\":\"p" << i << "\",\"reference\":\"" << ref << "\",\"candidate\":\""
               << cand << "\",\"semantic_raw\":" << i % 5 << "}\n";
    }
    write_file(corpus_path, corpus.str());

    auto run_once = [&](const std::string& tag) {
        std::string csv = base + "_" + tag + ".csv";
        std::string json = base + "_" + tag + ".json";
        std::string cmd = "'" + cli + "' corpus --in '" + corpus_path + "' --out '" + csv +
                          "' --summary '" + json + "' 2>/dev/null";
        int rc = std::system(cmd.c_str());
        return std::make_tuple(rc, read_file(csv), read_file(json));
    };

    bool ok = false;
    std::string detail;
    try {
        auto [rc1, csv1, json1] = run_once("a");
        auto [rc2, csv2, json2] = run_once("b");
        ok = rc1 == 0 && rc2 == 0 && csv1 == csv2 && json1 == json2 && !csv1.empty();
        detail = "csv " + std::to_string(csv1.size()) + " bytes, summary " +
                 std::to_string(json1.size()) + " bytes";
    } catch (const std::exception& e) {
        detail = e.what();
    }
    for (const char* suffix : {".jsonl", "_a.csv", "_a.json", "_b.csv", "_b.json"})
        std::remove((base + suffix).c_str());
    report(10, ok, "two corpus runs produce byte-identical CSV and summary", detail);
}

}  // namespace

int main(int argc, char** argv) {
    std::string cli;
    for (int i = 1; i + 1 < argc; ++i)
        if (std::string(argv[i]) == "--cli") cli = argv[i + 1];

    criterion_1();
    criterion_2();
    criterion_3();
    criterion_4();
    criterion_5();
    criterion_6();
    criterion_7();
    criterion_8();
    criterion_9();
    criterion_10(cli);

    if (g_failures == 0) {
        std::printf("all acceptance criteria passed\n");
        return 0;
    }
    std::printf("%d acceptance criteria FAILED\n", g_failures);
    return 1;
}
