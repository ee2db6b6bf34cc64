#pragma once

#include <string>
#include <vector>

#include "eulaflag/corpus.hpp"

namespace eulaflag {

/// Malicious counts as the positive class.
struct Metrics {
    std::size_t correct{0};
    std::size_t total{0};
    double accuracy_pct{0.0};    // full precision; accuracy + error == 100 exactly
    double error_rate_pct{0.0};
    std::size_t tp{0};
    std::size_t fp{0};
    std::size_t tn{0};
    std::size_t fn{0};
};

Metrics score(const std::vector<Label>& predictions, const std::vector<Label>& truth);

/// Half-up rounding to one decimal, used only for display.
double display_round(double v);

struct ReportRow {
    std::string name;
    Metrics metrics;
};

struct Report {
    std::string table;     // fixed-column text table
    std::string plot_csv;  // family,accuracy_pct,error_rate_pct with header
};

/// Renders rows sorted by descending accuracy (ties keep input order, which
/// callers pass in registry order). Displayed error rate is 100 minus the
/// displayed accuracy so the two always print to a 100.0 total.
Report render_report(const std::vector<ReportRow>& per_family);

}  // namespace eulaflag
