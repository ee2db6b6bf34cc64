#include "eulaflag/eval.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <numeric>
#include <sstream>

namespace eulaflag {

Metrics score(const std::vector<Label>& predictions, const std::vector<Label>& truth) {
    if (predictions.size() != truth.size()) {
        throw LengthMismatchError(predictions.size(), truth.size());
    }
    if (predictions.empty()) throw EmptyInputError("score: no predictions");

    Metrics m;
    m.total = predictions.size();
    for (std::size_t i = 0; i < predictions.size(); ++i) {
        const bool pred_mal = predictions[i] == Label::Malicious;
        const bool true_mal = truth[i] == Label::Malicious;
        if (pred_mal && true_mal) ++m.tp;
        if (pred_mal && !true_mal) ++m.fp;
        if (!pred_mal && !true_mal) ++m.tn;
        if (!pred_mal && true_mal) ++m.fn;
    }
    m.correct = m.tp + m.tn;
    m.accuracy_pct = 100.0 * static_cast<double>(m.correct) / static_cast<double>(m.total);
    m.error_rate_pct = 100.0 - m.accuracy_pct;
    return m;
}

double display_round(double v) { return std::floor(v * 10.0 + 0.5) / 10.0; }

namespace {

std::string format_1dp(double v) {
    char buf[32];
    std::snprintf(buf, sizeof(buf), "%.1f", display_round(v));
    return buf;
}

std::string pad(const std::string& s, std::size_t width) {
    return s.size() >= width ? s : s + std::string(width - s.size(), ' ');
}

}  // namespace

Report render_report(const std::vector<ReportRow>& per_family) {
    if (per_family.empty()) throw EmptyInputError("render_report: no rows");

    std::vector<std::size_t> order(per_family.size());
    std::iota(order.begin(), order.end(), 0);
    std::stable_sort(order.begin(), order.end(), [&](std::size_t a, std::size_t b) {
        return per_family[a].metrics.accuracy_pct > per_family[b].metrics.accuracy_pct;
    });

    const std::string h_name = "Name Of Classifier";
    const std::string h_correct = "Correctly Classified";
    const std::string h_testing = "Testing Set";
    const std::string h_accuracy = "Accuracy";
    std::size_t name_width = h_name.size();
    for (const auto& row : per_family) name_width = std::max(name_width, row.name.size());

    std::ostringstream table;
    table << pad(h_name, name_width) << " | " << h_correct << " | " << h_testing << " | "
          << h_accuracy << "\n";
    std::ostringstream csv;
    csv << "family,accuracy_pct,error_rate_pct\n";
    for (const std::size_t idx : order) {
        const auto& row = per_family[idx];
        const std::string accuracy = format_1dp(row.metrics.accuracy_pct);
        // Displayed error complements the displayed accuracy to exactly 100.
        const std::string error = format_1dp(100.0 - display_round(row.metrics.accuracy_pct));
        table << pad(row.name, name_width) << " | "
              << pad(std::to_string(row.metrics.correct), h_correct.size()) << " | "
              << pad(std::to_string(row.metrics.total), h_testing.size()) << " | " << accuracy
              << "\n";
        csv << row.name << "," << accuracy << "," << error << "\n";
    }
    return {table.str(), csv.str()};
}

}  // namespace eulaflag
