// Command-line front end: scoring single pairs and corpora, comparing
// models, generating score-preserving permutations, consensus-subset
// selection and PDG dumps.
//
// Exit codes: 0 success, 1 usage error, 2 corpus/input validation failure,
// 3 I/O failure.

#include <cstdint>
#include <iostream>
#include <string>
#include <vector>

#include <CLI11.hpp>
#include <json.hpp>

#include "rubyeval/corpus.hpp"
#include "rubyeval/metrics.hpp"
#include "rubyeval/permute.hpp"
#include "rubyeval/stats.hpp"

namespace {

constexpr int kExitOk = 0;
constexpr int kExitUsage = 1;
constexpr int kExitValidation = 2;
constexpr int kExitIo = 3;

using nlohmann::ordered_json;
using namespace rubyeval;

struct CommonOptions {
    std::string mode = "lexical";
    int max_n = 4;
    std::string bp = "ratio";
    std::string smoothing = "score-zero";
    std::string sts_norm = "max-length";
    int max_path_length = 1;

    ScoreOptions to_score_options() const {
        ScoreOptions opts;
        opts.mode = mode == "whitespace"  ? TokenizeMode::Whitespace
                    : mode == "character" ? TokenizeMode::Character
                                          : TokenizeMode::Lexical;
        opts.bleu.max_n = max_n;
        opts.bleu.bp = bp == "exp" ? BleuConfig::BrevityPenalty::Exponential
                                   : BleuConfig::BrevityPenalty::Ratio;
        opts.bleu.zero_policy = smoothing == "add-one"
                                    ? BleuConfig::ZeroNgramPolicy::AddOneSmoothing
                                    : BleuConfig::ZeroNgramPolicy::ScoreZero;
        opts.sts_norm = sts_norm == "reference-length" ? StsNorm::ReferenceLength
                                                       : StsNorm::MaxLength;
        opts.max_path_length = max_path_length;
        return opts;
    }
};

void add_common(CLI::App* cmd, CommonOptions& opts) {
    cmd->add_option("--mode", opts.mode, "Tokenization mode")
        ->check(CLI::IsMember({"lexical", "whitespace", "character"}));
    cmd->add_option("--max-n", opts.max_n, "Highest n-gram order for BLEU")
        ->check(CLI::Range(1, 9));
    cmd->add_option("--bp", opts.bp, "Brevity penalty form")
        ->check(CLI::IsMember({"ratio", "exp"}));
    cmd->add_option("--smoothing", opts.smoothing, "Zero n-gram handling for BLEU")
        ->check(CLI::IsMember({"score-zero", "add-one"}));
    cmd->add_option("--sts-norm", opts.sts_norm, "Edit-distance normalization")
        ->check(CLI::IsMember({"max-length", "reference-length"}));
    cmd->add_option("--max-path-length", opts.max_path_length,
                    "Longest label path counted as a graph feature")
        ->check(CLI::Range(1, 8));
}

ordered_json record_json(const PairScores& s) {
    ordered_json j;
    j["bleu"] = s.bleu;
    j["sts"] = s.sts;
    j["trs"] = s.trs ? ordered_json(*s.trs) : ordered_json(nullptr);
    j["grs"] = s.grs ? ordered_json(*s.grs) : ordered_json(nullptr);
    j["ruby"] = s.ruby;
    j["ruby_level"] = ruby_level_name(s.level);
    j["candidate_parsed"] = s.candidate_parsed;
    return j;
}

int run_score(const std::string& ref_path, const std::string& cand_path,
              const CommonOptions& common, bool both_modes) {
    std::string reference, candidate;
    try {
        reference = read_file(ref_path);
        candidate = read_file(cand_path);
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << "\n";
        return kExitIo;
    }
    try {
        ordered_json out;
        out["reference"] = ref_path;
        out["candidate"] = cand_path;
        out["mode"] = common.mode;
        out["scores"] = record_json(score_pair(reference, candidate, common.to_score_options()));
        if (both_modes) {
            // tokenization-sensitivity report: BLEU/STS under the other mode
            CommonOptions alt = common;
            alt.mode = common.mode == "whitespace" ? "lexical" : "whitespace";
            PairScores s = score_pair(reference, candidate, alt.to_score_options());
            out["alt_mode"] = {{"mode", alt.mode}, {"bleu", s.bleu}, {"sts", s.sts}};
        }
        std::cout << out.dump(2) << "\n";
        return kExitOk;
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << "\n";
        return kExitValidation;
    }
}

int run_corpus(const std::string& in_path, const std::string& out_path,
               const std::string& summary_path, const CommonOptions& common) {
    CorpusLoadResult loaded;
    try {
        loaded = load_corpus(in_path);
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << "\n";
        return kExitIo;
    }
    for (const auto& err : loaded.errors)
        std::cerr << in_path << ":" << err.line << ": " << err.message << "\n";
    if (loaded.pairs.empty()) {
        std::cerr << "error: no valid pairs in " << in_path << "\n";
        return kExitValidation;
    }

    CorpusReport report = score_corpus(loaded.pairs, common.to_score_options());
    for (const auto& f : report.failures)
        std::cerr << "pair " << f.id << " failed: " << f.message << "\n";
    try {
        write_file(out_path, records_to_csv(report.records));
        if (!summary_path.empty()) write_file(summary_path, summary_to_json(report));
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << "\n";
        return kExitIo;
    }
    std::cerr << "scored " << report.summary.scored << "/" << report.summary.input_pairs
              << " pairs -> " << out_path << "\n";
    return report.records.empty() ? kExitValidation : kExitOk;
}

int run_compare(const std::string& a_path, const std::string& b_path, const std::string& metric,
                double confidence) {
    std::vector<ScoreRecord> a, b;
    try {
        a = records_from_csv(read_file(a_path));
        b = records_from_csv(read_file(b_path));
    } catch (const std::invalid_argument& e) {
        std::cerr << "error: " << e.what() << "\n";
        return kExitValidation;
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << "\n";
        return kExitIo;
    }
    auto m = compare_metric_from_name(metric);
    if (!m) {
        std::cerr << "error: unknown metric \"" << metric << "\"\n";
        return kExitUsage;
    }
    try {
        CompareResult r = compare_models(a, b, *m, confidence);
        ordered_json out;
        out["metric"] = metric;
        out["pairs"] = r.pairs;
        out["mean_a"] = r.mean_a;
        out["mean_b"] = r.mean_b;
        out["mean_diff"] = r.test.mean_diff;
        out["t"] = r.test.degenerate ? ordered_json("inf") : ordered_json(r.test.t);
        out["df"] = r.test.df;
        out["p_two_sided"] = r.test.p_two_sided;
        out["ci95_half_width"] = r.test.ci95_half_width;
        out["significant_at_95"] = r.test.p_two_sided < 0.05;
        std::cout << out.dump(2) << "\n";
        return kExitOk;
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << "\n";
        return kExitValidation;
    }
}

int run_permute(const std::string& in_path, const std::string& out_path, std::uint64_t seed,
                const CommonOptions& common) {
    CorpusLoadResult loaded;
    try {
        loaded = load_corpus(in_path);
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << "\n";
        return kExitIo;
    }
    for (const auto& err : loaded.errors)
        std::cerr << in_path << ":" << err.line << ": " << err.message << "\n";
    if (loaded.pairs.empty()) {
        std::cerr << "error: no valid pairs in " << in_path << "\n";
        return kExitValidation;
    }

    ScoreOptions opts = common.to_score_options();
    std::string out_text;
    int changed = 0;
    std::uint64_t pair_seed = seed;
    for (const CorpusPair& p : loaded.pairs) {
        TokenSequence ref = tokenize(p.reference, opts.mode);
        TokenSequence cand = tokenize(p.candidate, opts.mode);
        PermuteResult r = permute_preserving_bleu(ref, cand, opts.bleu, pair_seed++);
        if (!r.permuted) std::cerr << "pair " << p.id << ": kept identity\n";
        changed += r.permuted;

        ordered_json line;
        line["id"] = p.id;
        if (p.source) line["source"] = *p.source;
        line["reference"] = p.reference;
        line["candidate"] = r.sequence.joined();
        if (p.semantic_raw) line["semantic_raw"] = *p.semantic_raw;
        out_text += line.dump() + "\n";
    }
    try {
        write_file(out_path, out_text);
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << "\n";
        return kExitIo;
    }
    std::cerr << "permuted " << changed << "/" << loaded.pairs.size() << " pairs -> " << out_path
              << "\n";
    return kExitOk;
}

int run_ransac(const std::string& in_path, int runs, int iterations, double epsilon,
               std::uint64_t seed, const std::string& metric) {
    std::vector<ScoreRecord> records;
    try {
        records = records_from_csv(read_file(in_path));
    } catch (const std::invalid_argument& e) {
        std::cerr << "error: " << e.what() << "\n";
        return kExitValidation;
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << "\n";
        return kExitIo;
    }
    auto m = compare_metric_from_name(metric);
    if (!m) {
        std::cerr << "error: unknown metric \"" << metric << "\"\n";
        return kExitUsage;
    }

    std::vector<Point> points;
    std::vector<std::string> ids;
    for (const auto& r : records) {
        if (!r.semantic) continue;
        double x = 0;
        switch (*m) {
            case CompareMetric::Bleu: x = r.bleu; break;
            case CompareMetric::Sts: x = r.sts; break;
            case CompareMetric::Trs:
                if (!r.trs) continue;
                x = *r.trs;
                break;
            case CompareMetric::Grs:
                if (!r.grs) continue;
                x = *r.grs;
                break;
            case CompareMetric::Ruby: x = r.ruby; break;
            case CompareMetric::Semantic: x = *r.semantic; break;
        }
        points.push_back(Point{x, *r.semantic});
        ids.push_back(r.pair_id);
    }
    if (points.size() < 2) {
        std::cerr << "error: need at least 2 records with semantic scores\n";
        return kExitValidation;
    }
    try {
        RansacResult r = ransac_runs(points, runs, iterations, epsilon, seed);
        ordered_json out;
        out["metric"] = metric;
        out["points"] = points.size();
        ordered_json run_list = ordered_json::array();
        for (const auto& run : r.runs)
            run_list.push_back({{"size", run.size}, {"correlation", run.correlation}});
        out["runs"] = run_list;
        ordered_json chosen;
        chosen["size"] = r.inlier_indices.size();
        chosen["correlation"] = r.subset_correlation;
        chosen["line"] = {{"slope", r.slope}, {"intercept", r.intercept}};
        ordered_json inlier_ids = ordered_json::array();
        for (int idx : r.inlier_indices) inlier_ids.push_back(ids[static_cast<std::size_t>(idx)]);
        chosen["inlier_ids"] = inlier_ids;
        out["consensus"] = chosen;
        std::cout << out.dump(2) << "\n";
        return kExitOk;
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << "\n";
        return kExitValidation;
    }
}

int run_pdg_dump(const std::string& file_path, const std::string& out_path) {
    std::string source;
    try {
        source = read_file(file_path);
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << "\n";
        return kExitIo;
    }
    ParseOutcome parsed = parse_source(source);
    if (!parsed.parsed()) {
        std::cerr << "error: source does not parse:";
        for (const auto& d : parsed.diagnostics)
            std::cerr << " [" << d.line << ":" << d.column << "] " << d.message;
        std::cerr << "\n";
        return kExitValidation;
    }
    PdgBuildResult pdg = build_pdg(*parsed.tree);
    if (!pdg.applicable()) {
        std::cerr << "error: dependence graph not applicable: " << pdg.reason << "\n";
        return kExitValidation;
    }
    try {
        if (out_path.empty() || out_path == "-")
            std::cout << pdg.graph->to_dot();
        else
            write_file(out_path, pdg.graph->to_dot());
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << "\n";
        return kExitIo;
    }
    return kExitOk;
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"Multi-level translation-quality metrics for migrated source code"};
    app.require_subcommand(1);

    // score
    auto* score = app.add_subcommand("score", "Score one reference/candidate file pair");
    std::string ref_path, cand_path;
    CommonOptions score_opts;
    bool both_modes = false;
    score->add_option("--reference", ref_path, "Reference method file")->required();
    score->add_option("--candidate", cand_path, "Candidate method file")->required();
    score->add_flag("--both-modes", both_modes, "Also report BLEU/STS under the other mode");
    add_common(score, score_opts);

    // corpus
    auto* corpus = app.add_subcommand("corpus", "Score a JSONL corpus into CSV + summary");
    std::string corpus_in, corpus_out, summary_out;
    CommonOptions corpus_opts;
    corpus->add_option("--in", corpus_in, "Corpus JSONL")->required();
    corpus->add_option("--out", corpus_out, "Record CSV output")->required();
    corpus->add_option("--summary", summary_out, "Summary JSON output");
    add_common(corpus, corpus_opts);

    // compare
    auto* compare = app.add_subcommand("compare", "Paired t-test between two report CSVs");
    std::string a_path, b_path, compare_metric = "ruby";
    double confidence = 0.95;
    compare->add_option("--a", a_path, "Report CSV of model A")->required();
    compare->add_option("--b", b_path, "Report CSV of model B")->required();
    compare->add_option("--metric", compare_metric, "Metric column to compare");
    compare->add_option("--confidence", confidence, "Confidence level")
        ->check(CLI::Range(0.5, 0.9999));

    // permute
    auto* permute = app.add_subcommand(
        "permute", "Rewrite candidates as BLEU-preserving block permutations");
    std::string permute_in, permute_out;
    std::uint64_t permute_seed = 0;
    CommonOptions permute_opts;
    permute->add_option("--in", permute_in, "Corpus JSONL")->required();
    permute->add_option("--out", permute_out, "Permuted corpus JSONL")->required();
    permute->add_option("--seed", permute_seed, "Random seed");
    add_common(permute, permute_opts);

    // ransac
    auto* ransac = app.add_subcommand("ransac", "Consensus subsets of (metric, semantic) points");
    std::string ransac_in, ransac_metric = "ruby";
    int runs = 10, iterations = 200;
    double epsilon = 0.1;
    std::uint64_t ransac_seed = 0;
    ransac->add_option("--in", ransac_in, "Report CSV with semantic scores")->required();
    ransac->add_option("--runs", runs, "Independent runs")->check(CLI::Range(1, 1000));
    ransac->add_option("--iterations", iterations, "Sampling iterations per run")
        ->check(CLI::Range(1, 1000000));
    ransac->add_option("--epsilon", epsilon, "Inlier distance threshold");
    ransac->add_option("--seed", ransac_seed, "Random seed");
    ransac->add_option("--metric", ransac_metric, "Metric on the x axis");

    // pdg-dump
    auto* pdg_dump = app.add_subcommand("pdg-dump", "Write a method's dependence graph as DOT");
    std::string pdg_file, pdg_out;
    pdg_dump->add_option("--file", pdg_file, "Source file with one method")->required();
    pdg_dump->add_option("--out", pdg_out, "DOT output path (default stdout)");

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        int code = app.exit(e);
        return code == 0 ? kExitOk : kExitUsage;
    }

    if (score->parsed()) return run_score(ref_path, cand_path, score_opts, both_modes);
    if (corpus->parsed()) return run_corpus(corpus_in, corpus_out, summary_out, corpus_opts);
    if (compare->parsed()) return run_compare(a_path, b_path, compare_metric, confidence);
    if (permute->parsed()) return run_permute(permute_in, permute_out, permute_seed, permute_opts);
    if (ransac->parsed())
        return run_ransac(ransac_in, runs, iterations, epsilon, ransac_seed, ransac_metric);
    if (pdg_dump->parsed()) return run_pdg_dump(pdg_file, pdg_out);
    return kExitUsage;
}
