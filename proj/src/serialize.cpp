#include "eulaflag/serialize.hpp"

#include <sstream>

namespace eulaflag {

using nlohmann::json;

json summary_to_json(const Summary& summary) {
    json selected = json::array();
    for (const auto& s : summary.selected) {
        selected.push_back({{"index", s.index}, {"score", s.score}, {"text", s.text}});
    }
    return {{"algorithm", algorithm_name(summary.algorithm)},
            {"ratio", summary.ratio},
            {"source_sentence_count", summary.source_sentence_count},
            {"selected", selected}};
}

std::string summary_to_plain(const Summary& summary) {
    std::string out;
    for (const auto& s : summary.selected) {
        out += s.text;
        out.push_back('\n');
    }
    return out;
}

json verdict_to_json(const EnsembleVerdict& verdict) {
    json votes = json::object();
    for (const auto& [family, label] : verdict.votes) {
        votes[family_id(family)] = label_name(label);
    }
    json scores = json::object();
    for (const auto& [family, score] : verdict.scores) {
        scores[family_id(family)] = score;
    }
    return {{"final", label_name(verdict.final_label)},
            {"tied", verdict.tied},
            {"tally",
             {{"malicious", verdict.malicious_votes}, {"benign", verdict.benign_votes}}},
            {"votes", votes},
            {"scores", scores}};
}

std::string verdict_to_plain(const EnsembleVerdict& verdict) {
    std::ostringstream out;
    out << "verdict: " << label_name(verdict.final_label)
        << (verdict.tied ? " (tie, failing safe)" : "") << "\n";
    out << "votes: " << verdict.malicious_votes << " malicious / " << verdict.benign_votes
        << " benign\n";
    for (const auto& [family, label] : verdict.votes) {
        out << "  " << family_display_name(family) << ": " << label_name(label) << "\n";
    }
    return out.str();
}

json flag_report_to_json(const FlagReport& report) {
    return {{"input", report.input},
            {"model_fingerprint", report.model_fingerprint},
            {"verdict", verdict_to_json(report.verdict)},
            {"summary", summary_to_json(report.summary)},
            {"timings_ms",
             {{"fetch", report.fetch_ms},
              {"featurize", report.featurize_ms},
              {"classify", report.classify_ms},
              {"summarize", report.summarize_ms}}}};
}

std::string flag_report_to_plain(const FlagReport& report) {
    std::ostringstream out;
    out << "input: " << report.input << "\n";
    out << "model: " << report.model_fingerprint << "\n";
    out << verdict_to_plain(report.verdict);
    out << "summary (" << report.summary.selected.size() << " of "
        << report.summary.source_sentence_count << " sentences, "
        << algorithm_name(report.summary.algorithm) << "):\n";
    for (const auto& s : report.summary.selected) {
        out << "  [" << s.index << "] " << s.text << "\n";
    }
    return out.str();
}

}  // namespace eulaflag
