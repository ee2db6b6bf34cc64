#pragma once

#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "eulaflag/classify.hpp"
#include "eulaflag/pipeline.hpp"

namespace eulaflag {

struct EnsembleModel {
    std::vector<ClassifierModel> members;                 // registry order
    std::vector<double> member_validation_accuracy;       // percent, [0,100]
    std::uint64_t vocab_fingerprint{0};
};

struct EnsembleVerdict {
    std::vector<std::pair<ClassifierFamily, Label>> votes;
    int malicious_votes{0};
    int benign_votes{0};
    Label final_label{Label::Benign};
    bool tied{false};  // exact tie resolves to Malicious (fail safe)
    std::vector<std::pair<ClassifierFamily, double>> scores;
};

/// Trains every registry family on its feature form and records validation
/// accuracy per member. A member that throws is dropped with its error
/// collected; training fails only when every member fails.
EnsembleModel train_all(const FeatureSet& train, const FeatureSet& validation,
                        const std::vector<TrainConfig>& configs,
                        std::vector<std::string>* member_errors = nullptr);

/// Member with maximal validation accuracy; ties go to the earlier registry
/// entry.
std::pair<ClassifierFamily, double> select_best(const EnsembleModel& model);

/// Strict majority vote over all members; an exact tie yields Malicious with
/// tied = true.
EnsembleVerdict vote(const EnsembleModel& model, const PreparedFeatures& features);

std::optional<std::size_t> member_index(const EnsembleModel& model, ClassifierFamily family);

}  // namespace eulaflag
