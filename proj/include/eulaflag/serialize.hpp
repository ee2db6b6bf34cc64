#pragma once

#include <json.hpp>
#include <string>

#include "eulaflag/ensemble.hpp"
#include "eulaflag/summarize.hpp"

namespace eulaflag {

nlohmann::json summary_to_json(const Summary& summary);
std::string summary_to_plain(const Summary& summary);

nlohmann::json verdict_to_json(const EnsembleVerdict& verdict);
std::string verdict_to_plain(const EnsembleVerdict& verdict);

struct FlagReport {
    std::string input;  // path or URL
    std::string model_fingerprint;
    EnsembleVerdict verdict;
    Summary summary;
    double fetch_ms{0.0};
    double featurize_ms{0.0};
    double classify_ms{0.0};
    double summarize_ms{0.0};
};

nlohmann::json flag_report_to_json(const FlagReport& report);
std::string flag_report_to_plain(const FlagReport& report);

}  // namespace eulaflag
