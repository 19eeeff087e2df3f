#pragma once

#include <optional>
#include <string>
#include <vector>

#include "rubyeval/metrics.hpp"
#include "rubyeval/stats.hpp"

namespace rubyeval {

struct CorpusPair {
    std::string id;
    std::optional<std::string> source;  // original-language method, context only
    std::string reference;
    std::string candidate;
    std::optional<int> semantic_raw;  // human score in {0,1,2,3,4}
};

struct LineError {
    int line = 0;
    std::string message;
};

struct CorpusLoadResult {
    std::vector<CorpusPair> pairs;
    std::vector<LineError> errors;
};

/// JSON-lines, one pair per line, fields: id, source?, reference, candidate,
/// semantic_raw?. Malformed lines (including duplicate ids) land in `errors`
/// with their line numbers; valid pairs keep file order.
/// Throws std::runtime_error on I/O failure.
CorpusLoadResult load_corpus(const std::string& path);

struct ScoreRecord {
    std::string pair_id;
    double bleu = 0;
    double sts = 0;
    std::optional<double> trs;
    std::optional<double> grs;
    double ruby = 0;
    RubyLevel ruby_level = RubyLevel::STS;
    std::optional<double> semantic;  // semantic_raw / 4
};

struct PairFailure {
    std::string id;
    std::string message;
};

struct CorpusSummary {
    int input_pairs = 0;
    int scored = 0;
    int failed = 0;
    double mean_bleu = 0;
    double mean_sts = 0;
    double mean_ruby = 0;
    std::optional<double> mean_trs;
    std::optional<double> mean_grs;
    std::optional<double> mean_semantic;
    int ast_applicable = 0;  // pairs where both sides parsed
    int pdg_applicable = 0;  // pairs where both PDGs were buildable
    int level_grs = 0;
    int level_trs = 0;
    int level_sts = 0;
    std::optional<double> spearman_bleu;  // each metric vs semantic, where defined
    std::optional<double> spearman_sts;
    std::optional<double> spearman_trs;
    std::optional<double> spearman_grs;
    std::optional<double> spearman_ruby;
};

struct CorpusReport {
    std::vector<ScoreRecord> records;
    std::vector<PairFailure> failures;
    CorpusSummary summary;
};

/// Scores every pair; per-pair errors are quarantined into `failures`, never
/// aborting the run. |records| + |failures| = |pairs|.
CorpusReport score_corpus(const std::vector<CorpusPair>& pairs, const ScoreOptions& opts = {});

/// Record CSV, columns exactly:
/// id,bleu,sts,trs,grs,ruby,ruby_level,semantic (empty cell = absent).
std::string records_to_csv(const std::vector<ScoreRecord>& records);
std::vector<ScoreRecord> records_from_csv(const std::string& csv_text);

std::string summary_to_json(const CorpusReport& report);

void write_file(const std::string& path, const std::string& content);
std::string read_file(const std::string& path);

enum class CompareMetric { Bleu, Sts, Trs, Grs, Ruby, Semantic };
std::optional<CompareMetric> compare_metric_from_name(const std::string& name);

struct CompareResult {
    TTestResult test;
    double mean_a = 0;
    double mean_b = 0;
    int pairs = 0;
};

/// Paired t-test over records aligned by id. Throws std::invalid_argument
/// when the id sets differ (the message lists the symmetric difference) or
/// the metric is missing on some pair.
CompareResult compare_models(const std::vector<ScoreRecord>& a, const std::vector<ScoreRecord>& b,
                             CompareMetric metric, double confidence = 0.95);

}  // namespace rubyeval
