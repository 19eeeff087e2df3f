#include "rubyeval/corpus.hpp"

#include <fstream>
#include <map>
#include <set>
#include <sstream>
#include <stdexcept>

#include <json.hpp>

namespace rubyeval {

namespace {

using nlohmann::json;

std::optional<CorpusPair> parse_pair_line(const std::string& line, std::string& error) {
    json j;
    try {
        j = json::parse(line);
    } catch (const json::parse_error& e) {
        error = std::string("invalid JSON: ") + e.what();
        return std::nullopt;
    }
    if (!j.is_object()) {
        error = "line is not a JSON object";
        return std::nullopt;
    }
    CorpusPair p;
    if (!j.contains("id") || !j["id"].is_string() || j["id"].get<std::string>().empty()) {
        error = "missing or invalid \"id\"";
        return std::nullopt;
    }
    p.id = j["id"].get<std::string>();
    if (!j.contains("reference") || !j["reference"].is_string() ||
        j["reference"].get<std::string>().empty()) {
        error = "missing or invalid \"reference\"";
        return std::nullopt;
    }
    p.reference = j["reference"].get<std::string>();
    if (!j.contains("candidate") || !j["candidate"].is_string()) {
        error = "missing or invalid \"candidate\"";
        return std::nullopt;
    }
    p.candidate = j["candidate"].get<std::string>();
    if (j.contains("source")) {
        if (!j["source"].is_string()) {
            error = "invalid \"source\"";
            return std::nullopt;
        }
        p.source = j["source"].get<std::string>();
    }
    if (j.contains("semantic_raw")) {
        if (!j["semantic_raw"].is_number_integer()) {
            error = "invalid \"semantic_raw\"";
            return std::nullopt;
        }
        int v = j["semantic_raw"].get<int>();
        if (v < 0 || v > 4) {
            error = "\"semantic_raw\" out of range 0..4";
            return std::nullopt;
        }
        p.semantic_raw = v;
    }
    return p;
}

}  // namespace

CorpusLoadResult load_corpus(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw std::runtime_error("cannot open corpus file: " + path);

    CorpusLoadResult out;
    std::set<std::string> seen_ids;
    std::string line;
    int line_no = 0;
    while (std::getline(in, line)) {
        ++line_no;
        if (line.find_first_not_of(" \t\r") == std::string::npos) continue;
        std::string error;
        auto pair = parse_pair_line(line, error);
        if (!pair) {
            out.errors.push_back(LineError{line_no, error});
            continue;
        }
        if (!seen_ids.insert(pair->id).second) {
            out.errors.push_back(LineError{line_no, "duplicate id \"" + pair->id + "\""});
            continue;
        }
        out.pairs.push_back(std::move(*pair));
    }
    return out;
}

namespace {

std::optional<double> mean_of(const std::vector<double>& v) {
    if (v.empty()) return std::nullopt;
    double s = 0;
    for (double x : v) s += x;
    return s / static_cast<double>(v.size());
}

std::optional<double> safe_spearman(const std::vector<double>& x, const std::vector<double>& y) {
    if (x.size() < 2) return std::nullopt;
    try {
        return spearman(x, y);
    } catch (const std::invalid_argument&) {
        return std::nullopt;
    }
}

}  // namespace

CorpusReport score_corpus(const std::vector<CorpusPair>& pairs, const ScoreOptions& opts) {
    CorpusReport report;
    report.summary.input_pairs = static_cast<int>(pairs.size());

    for (const CorpusPair& p : pairs) {
        try {
            PairScores s = score_pair(p.reference, p.candidate, opts);
            ScoreRecord r;
            r.pair_id = p.id;
            r.bleu = s.bleu;
            r.sts = s.sts;
            r.trs = s.trs;
            r.grs = s.grs;
            r.ruby = s.ruby;
            r.ruby_level = s.level;
            if (p.semantic_raw) r.semantic = static_cast<double>(*p.semantic_raw) / 4.0;
            report.records.push_back(std::move(r));
        } catch (const std::exception& e) {
            report.failures.push_back(PairFailure{p.id, e.what()});
        }
    }

    CorpusSummary& sum = report.summary;
    sum.scored = static_cast<int>(report.records.size());
    sum.failed = static_cast<int>(report.failures.size());

    std::vector<double> bleus, stss, rubys, trss, grss, semantics;
    std::vector<double> sem_for_bleu, sem_for_sts, sem_for_ruby, sem_for_trs, sem_for_grs;
    std::vector<double> bleu_w, sts_w, ruby_w, trs_w, grs_w;
    for (const ScoreRecord& r : report.records) {
        bleus.push_back(r.bleu);
        stss.push_back(r.sts);
        rubys.push_back(r.ruby);
        if (r.trs) {
            trss.push_back(*r.trs);
            ++sum.ast_applicable;
        }
        if (r.grs) {
            grss.push_back(*r.grs);
            ++sum.pdg_applicable;
        }
        switch (r.ruby_level) {
            case RubyLevel::GRS: ++sum.level_grs; break;
            case RubyLevel::TRS: ++sum.level_trs; break;
            case RubyLevel::STS: ++sum.level_sts; break;
        }
        if (r.semantic) {
            semantics.push_back(*r.semantic);
            bleu_w.push_back(r.bleu);
            sem_for_bleu.push_back(*r.semantic);
            sts_w.push_back(r.sts);
            sem_for_sts.push_back(*r.semantic);
            ruby_w.push_back(r.ruby);
            sem_for_ruby.push_back(*r.semantic);
            if (r.trs) {
                trs_w.push_back(*r.trs);
                sem_for_trs.push_back(*r.semantic);
            }
            if (r.grs) {
                grs_w.push_back(*r.grs);
                sem_for_grs.push_back(*r.semantic);
            }
        }
    }
    sum.mean_bleu = mean_of(bleus).value_or(0.0);
    sum.mean_sts = mean_of(stss).value_or(0.0);
    sum.mean_ruby = mean_of(rubys).value_or(0.0);
    sum.mean_trs = mean_of(trss);
    sum.mean_grs = mean_of(grss);
    sum.mean_semantic = mean_of(semantics);
    sum.spearman_bleu = safe_spearman(bleu_w, sem_for_bleu);
    sum.spearman_sts = safe_spearman(sts_w, sem_for_sts);
    sum.spearman_trs = safe_spearman(trs_w, sem_for_trs);
    sum.spearman_grs = safe_spearman(grs_w, sem_for_grs);
    sum.spearman_ruby = safe_spearman(ruby_w, sem_for_ruby);
    return report;
}

std::optional<CompareMetric> compare_metric_from_name(const std::string& name) {
    if (name == "bleu") return CompareMetric::Bleu;
    if (name == "sts") return CompareMetric::Sts;
    if (name == "trs") return CompareMetric::Trs;
    if (name == "grs") return CompareMetric::Grs;
    if (name == "ruby") return CompareMetric::Ruby;
    if (name == "semantic") return CompareMetric::Semantic;
    return std::nullopt;
}

namespace {

std::optional<double> metric_value(const ScoreRecord& r, CompareMetric m) {
    switch (m) {
        case CompareMetric::Bleu: return r.bleu;
        case CompareMetric::Sts: return r.sts;
        case CompareMetric::Trs: return r.trs;
        case CompareMetric::Grs: return r.grs;
        case CompareMetric::Ruby: return r.ruby;
        case CompareMetric::Semantic: return r.semantic;
    }
    return std::nullopt;
}

}  // namespace

CompareResult compare_models(const std::vector<ScoreRecord>& a, const std::vector<ScoreRecord>& b,
                             CompareMetric metric, double confidence) {
    std::map<std::string, const ScoreRecord*> ma, mb;
    for (const auto& r : a) ma[r.pair_id] = &r;
    for (const auto& r : b) mb[r.pair_id] = &r;

    std::vector<std::string> only_a, only_b;
    for (const auto& [id, _] : ma)
        if (!mb.count(id)) only_a.push_back(id);
    for (const auto& [id, _] : mb)
        if (!ma.count(id)) only_b.push_back(id);
    if (!only_a.empty() || !only_b.empty()) {
        std::ostringstream os;
        os << "id sets differ;";
        if (!only_a.empty()) {
            os << " only in A:";
            for (const auto& id : only_a) os << ' ' << id;
        }
        if (!only_b.empty()) {
            os << " only in B:";
            for (const auto& id : only_b) os << ' ' << id;
        }
        throw std::invalid_argument(os.str());
    }

    PairedSample s;
    for (const auto& [id, ra] : ma) {
        std::optional<double> va = metric_value(*ra, metric);
        std::optional<double> vb = metric_value(*mb[id], metric);
        if (!va || !vb)
            throw std::invalid_argument("metric missing for pair \"" + id + "\"");
        s.ids.push_back(id);
        s.a.push_back(*va);
        s.b.push_back(*vb);
    }

    CompareResult out;
    out.pairs = static_cast<int>(s.ids.size());
    out.test = paired_t_test(s, confidence);
    double suma = 0, sumb = 0;
    for (std::size_t i = 0; i < s.a.size(); ++i) {
        suma += s.a[i];
        sumb += s.b[i];
    }
    out.mean_a = s.a.empty() ? 0.0 : suma / static_cast<double>(s.a.size());
    out.mean_b = s.b.empty() ? 0.0 : sumb / static_cast<double>(s.b.size());
    return out;
}

}  // namespace rubyeval
