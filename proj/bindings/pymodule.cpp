#include <pybind11/pybind11.h>
#include <pybind11/stl.h>

#include "rubyeval/corpus.hpp"
#include "rubyeval/metrics.hpp"
#include "rubyeval/permute.hpp"
#include "rubyeval/stats.hpp"

namespace py = pybind11;
using namespace rubyeval;

namespace {

TokenizeMode mode_from_name(const std::string& name) {
    if (name == "lexical") return TokenizeMode::Lexical;
    if (name == "whitespace") return TokenizeMode::Whitespace;
    if (name == "character") return TokenizeMode::Character;
    throw py::value_error("mode must be 'lexical', 'whitespace' or 'character'");
}

ScoreOptions options_from_kwargs(const std::string& mode, int max_n, const std::string& bp,
                                 const std::string& sts_norm, int max_path_length) {
    ScoreOptions opts;
    opts.mode = mode_from_name(mode);
    opts.bleu.max_n = max_n;
    if (bp == "ratio")
        opts.bleu.bp = BleuConfig::BrevityPenalty::Ratio;
    else if (bp == "exp")
        opts.bleu.bp = BleuConfig::BrevityPenalty::Exponential;
    else
        throw py::value_error("bp must be 'ratio' or 'exp'");
    if (sts_norm == "max-length")
        opts.sts_norm = StsNorm::MaxLength;
    else if (sts_norm == "reference-length")
        opts.sts_norm = StsNorm::ReferenceLength;
    else
        throw py::value_error("sts_norm must be 'max-length' or 'reference-length'");
    opts.max_path_length = max_path_length;
    return opts;
}

py::dict scores_to_dict(const PairScores& s) {
    py::dict d;
    d["bleu"] = s.bleu;
    d["sts"] = s.sts;
    d["trs"] = s.trs ? py::cast(*s.trs) : py::none();
    d["grs"] = s.grs ? py::cast(*s.grs) : py::none();
    d["ruby"] = s.ruby;
    d["ruby_level"] = ruby_level_name(s.level);
    d["candidate_parsed"] = s.candidate_parsed;
    return d;
}

}  // namespace

PYBIND11_MODULE(_rubyeval, m) {
    m.doc() = "Multi-level similarity metrics for evaluating migrated source code";

    m.def(
        "tokenize",
        [](const std::string& source, const std::string& mode) {
            return tokenize(source, mode_from_name(mode)).lexemes();
        },
        py::arg("source"), py::arg("mode") = "lexical");

    m.def(
        "parse_status",
        [](const std::string& source) {
            ParseOutcome out = parse_source(source);
            py::dict d;
            d["parsed"] = out.parsed();
            py::list diags;
            for (const auto& diag : out.diagnostics) {
                py::dict e;
                e["line"] = diag.line;
                e["column"] = diag.column;
                e["message"] = diag.message;
                diags.append(e);
            }
            d["diagnostics"] = diags;
            return d;
        },
        py::arg("source"));

    m.def(
        "score_pair",
        [](const std::string& reference, const std::string& candidate, const std::string& mode,
           int max_n, const std::string& bp, const std::string& sts_norm, int max_path_length) {
            return scores_to_dict(score_pair(
                reference, candidate,
                options_from_kwargs(mode, max_n, bp, sts_norm, max_path_length)));
        },
        py::arg("reference"), py::arg("candidate"), py::arg("mode") = "lexical",
        py::arg("max_n") = 4, py::arg("bp") = "ratio", py::arg("sts_norm") = "max-length",
        py::arg("max_path_length") = 1);

    m.def(
        "bleu",
        [](const std::vector<std::string>& reference, const std::vector<std::string>& candidate,
           int max_n, const std::string& bp) {
            BleuConfig cfg;
            cfg.max_n = max_n;
            cfg.bp = bp == "exp" ? BleuConfig::BrevityPenalty::Exponential
                                 : BleuConfig::BrevityPenalty::Ratio;
            return bleu(make_sequence(reference), make_sequence(candidate), cfg);
        },
        py::arg("reference"), py::arg("candidate"), py::arg("max_n") = 4,
        py::arg("bp") = "ratio");

    m.def(
        "sts",
        [](const std::vector<std::string>& reference, const std::vector<std::string>& candidate,
           const std::string& norm) {
            StsNorm n = norm == "reference-length" ? StsNorm::ReferenceLength : StsNorm::MaxLength;
            return sts(make_sequence(reference), make_sequence(candidate), n).value;
        },
        py::arg("reference"), py::arg("candidate"), py::arg("norm") = "max-length");

    m.def(
        "permute_candidate",
        [](const std::string& reference, const std::string& candidate, int max_n,
           std::uint64_t seed, const std::string& mode) {
            TokenizeMode tm = mode_from_name(mode);
            BleuConfig cfg;
            cfg.max_n = max_n;
            PermuteResult r =
                permute_preserving_bleu(tokenize(reference, tm), tokenize(candidate, tm), cfg, seed);
            py::dict d;
            d["candidate"] = r.sequence.joined();
            d["permuted"] = r.permuted;
            return d;
        },
        py::arg("reference"), py::arg("candidate"), py::arg("max_n") = 4, py::arg("seed") = 0,
        py::arg("mode") = "lexical");

    m.def("spearman", &spearman, py::arg("x"), py::arg("y"));

    m.def(
        "paired_t_test",
        [](const std::vector<double>& a, const std::vector<double>& b, double confidence) {
            PairedSample s;
            s.a = a;
            s.b = b;
            TTestResult r = paired_t_test(s, confidence);
            py::dict d;
            d["t"] = r.t;
            d["df"] = r.df;
            d["p_two_sided"] = r.p_two_sided;
            d["mean_diff"] = r.mean_diff;
            d["ci95_half_width"] = r.ci95_half_width;
            d["degenerate"] = r.degenerate;
            return d;
        },
        py::arg("a"), py::arg("b"), py::arg("confidence") = 0.95);

    m.def("t_critical", &t_critical, py::arg("df"), py::arg("confidence") = 0.95);
    m.def("sample_size", &sample_size, py::arg("population"), py::arg("confidence") = 0.95,
          py::arg("margin") = 0.05);

    m.def(
        "ransac",
        [](const std::vector<std::pair<double, double>>& points, int runs, int iterations,
           double epsilon, std::uint64_t seed) {
            std::vector<Point> pts;
            pts.reserve(points.size());
            for (const auto& [x, y] : points) pts.push_back(Point{x, y});
            RansacResult r = ransac_runs(pts, runs, iterations, epsilon, seed);
            py::dict d;
            d["inlier_indices"] = r.inlier_indices;
            d["subset_correlation"] = r.subset_correlation;
            d["slope"] = r.slope;
            d["intercept"] = r.intercept;
            py::list run_list;
            for (const auto& run : r.runs) {
                py::dict entry;
                entry["size"] = run.size;
                entry["correlation"] = run.correlation;
                run_list.append(entry);
            }
            d["runs"] = run_list;
            return d;
        },
        py::arg("points"), py::arg("runs") = 10, py::arg("iterations") = 200,
        py::arg("epsilon") = 0.1, py::arg("seed") = 0);

    m.def(
        "score_corpus",
        [](const std::vector<py::dict>& pairs, const std::string& mode, int max_n,
           const std::string& bp, int max_path_length) {
            std::vector<CorpusPair> cps;
            for (const auto& d : pairs) {
                CorpusPair p;
                p.id = py::cast<std::string>(d["id"]);
                p.reference = py::cast<std::string>(d["reference"]);
                p.candidate = py::cast<std::string>(d["candidate"]);
                if (d.contains("semantic_raw") && !d["semantic_raw"].is_none())
                    p.semantic_raw = py::cast<int>(d["semantic_raw"]);
                cps.push_back(std::move(p));
            }
            CorpusReport report = score_corpus(
                cps, options_from_kwargs(mode, max_n, bp, "max-length", max_path_length));
            py::list records;
            for (const auto& r : report.records) {
                py::dict d;
                d["id"] = r.pair_id;
                d["bleu"] = r.bleu;
                d["sts"] = r.sts;
                d["trs"] = r.trs ? py::cast(*r.trs) : py::none();
                d["grs"] = r.grs ? py::cast(*r.grs) : py::none();
                d["ruby"] = r.ruby;
                d["ruby_level"] = ruby_level_name(r.ruby_level);
                d["semantic"] = r.semantic ? py::cast(*r.semantic) : py::none();
                records.append(d);
            }
            py::list failures;
            for (const auto& f : report.failures) {
                py::dict d;
                d["id"] = f.id;
                d["error"] = f.message;
                failures.append(d);
            }
            py::dict out;
            out["records"] = records;
            out["failures"] = failures;
            out["summary_json"] = summary_to_json(report);
            return out;
        },
        py::arg("pairs"), py::arg("mode") = "lexical", py::arg("max_n") = 4,
        py::arg("bp") = "ratio", py::arg("max_path_length") = 1);
}
