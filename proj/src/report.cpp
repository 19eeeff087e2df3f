#include <cstdio>
#include <fstream>
#include <sstream>
#include <stdexcept>

#include <json.hpp>

#include "rubyeval/corpus.hpp"

namespace rubyeval {

namespace {

std::string format_score(double v) {
    char buf[40];
    std::snprintf(buf, sizeof(buf), "%.9g", v);
    return buf;
}

std::string csv_quote(const std::string& s) {
    if (s.find_first_of(",\"\n\r") == std::string::npos) return s;
    std::string out = "\"";
    for (char c : s) {
        if (c == '"') out += '"';
        out += c;
    }
    out += '"';
    return out;
}

std::vector<std::string> split_csv_line(const std::string& line) {
    std::vector<std::string> fields;
    std::string cur;
    bool quoted = false;
    for (std::size_t i = 0; i < line.size(); ++i) {
        char c = line[i];
        if (quoted) {
            if (c == '"') {
                if (i + 1 < line.size() && line[i + 1] == '"') {
                    cur += '"';
                    ++i;
                } else {
                    quoted = false;
                }
            } else {
                cur += c;
            }
        } else if (c == '"') {
            quoted = true;
        } else if (c == ',') {
            fields.push_back(cur);
            cur.clear();
        } else if (c != '\r') {
            cur += c;
        }
    }
    fields.push_back(cur);
    return fields;
}

std::optional<RubyLevel> level_from_name(const std::string& s) {
    if (s == "GRS") return RubyLevel::GRS;
    if (s == "TRS") return RubyLevel::TRS;
    if (s == "STS") return RubyLevel::STS;
    return std::nullopt;
}

nlohmann::ordered_json opt_json(const std::optional<double>& v) {
    if (!v) return nullptr;
    return *v;
}

}  // namespace

std::string records_to_csv(const std::vector<ScoreRecord>& records) {
    std::ostringstream os;
    os << "id,bleu,sts,trs,grs,ruby,ruby_level,semantic\n";
    for (const auto& r : records) {
        os << csv_quote(r.pair_id) << ',' << format_score(r.bleu) << ',' << format_score(r.sts)
           << ',' << (r.trs ? format_score(*r.trs) : "") << ','
           << (r.grs ? format_score(*r.grs) : "") << ',' << format_score(r.ruby) << ','
           << ruby_level_name(r.ruby_level) << ','
           << (r.semantic ? format_score(*r.semantic) : "") << '\n';
    }
    return os.str();
}

std::vector<ScoreRecord> records_from_csv(const std::string& csv_text) {
    std::istringstream in(csv_text);
    std::string line;
    if (!std::getline(in, line)) throw std::invalid_argument("empty report CSV");

    std::vector<ScoreRecord> out;
    int line_no = 1;
    while (std::getline(in, line)) {
        ++line_no;
        if (line.empty() || line == "\r") continue;
        auto fields = split_csv_line(line);
        if (fields.size() != 8)
            throw std::invalid_argument("report CSV line " + std::to_string(line_no) +
                                        ": expected 8 columns");
        ScoreRecord r;
        r.pair_id = fields[0];
        auto num = [&](const std::string& s) { return std::stod(s); };
        r.bleu = num(fields[1]);
        r.sts = num(fields[2]);
        if (!fields[3].empty()) r.trs = num(fields[3]);
        if (!fields[4].empty()) r.grs = num(fields[4]);
        r.ruby = num(fields[5]);
        auto level = level_from_name(fields[6]);
        if (!level)
            throw std::invalid_argument("report CSV line " + std::to_string(line_no) +
                                        ": bad ruby_level \"" + fields[6] + "\"");
        r.ruby_level = *level;
        if (!fields[7].empty()) r.semantic = num(fields[7]);
        out.push_back(std::move(r));
    }
    return out;
}

std::string summary_to_json(const CorpusReport& report) {
    const CorpusSummary& s = report.summary;
    nlohmann::ordered_json j;
    j["pairs"] = {{"input", s.input_pairs}, {"scored", s.scored}, {"failed", s.failed}};
    j["means"] = {
        {"bleu", s.mean_bleu},           {"sts", s.mean_sts},
        {"trs", opt_json(s.mean_trs)},   {"grs", opt_json(s.mean_grs)},
        {"ruby", s.mean_ruby},           {"semantic", opt_json(s.mean_semantic)},
    };
    j["ruby_levels"] = {
        {"GRS", s.level_grs}, {"TRS", s.level_trs}, {"STS", s.level_sts}};
    j["applicability"] = {
        {"ast_both", s.ast_applicable}, {"pdg_both", s.pdg_applicable}, {"total", s.scored}};
    j["spearman_vs_semantic"] = {
        {"bleu", opt_json(s.spearman_bleu)}, {"sts", opt_json(s.spearman_sts)},
        {"trs", opt_json(s.spearman_trs)},   {"grs", opt_json(s.spearman_grs)},
        {"ruby", opt_json(s.spearman_ruby)},
    };
    nlohmann::ordered_json failures = nlohmann::ordered_json::array();
    for (const auto& f : report.failures)
        failures.push_back({{"id", f.id}, {"error", f.message}});
    j["failures"] = failures;
    return j.dump(2) + "\n";
}

void write_file(const std::string& path, const std::string& content) {
    std::ofstream out(path, std::ios::binary);
    if (!out) throw std::runtime_error("cannot open for writing: " + path);
    out << content;
    if (!out) throw std::runtime_error("write failed: " + path);
}

std::string read_file(const std::string& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) throw std::runtime_error("cannot open: " + path);
    std::ostringstream ss;
    ss << in.rdbuf();
    return ss.str();
}

}  // namespace rubyeval
