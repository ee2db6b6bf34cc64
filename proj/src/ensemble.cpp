#include "eulaflag/ensemble.hpp"

#include <algorithm>

#include "eulaflag/eval.hpp"

namespace eulaflag {

namespace {

double validation_accuracy_pct(const ClassifierModel& model, const FeatureMatrix& validation) {
    if (validation.rows.empty()) return 0.0;
    std::size_t correct = 0;
    for (std::size_t i = 0; i < validation.rows.size(); ++i) {
        const Prediction p = predict(model, validation.rows[i]);
        if (label_to_sign(p.label) == validation.labels[i]) ++correct;
    }
    return 100.0 * static_cast<double>(correct) / static_cast<double>(validation.rows.size());
}

const TrainConfig* config_for(const std::vector<TrainConfig>& configs, ClassifierFamily family) {
    for (const auto& cfg : configs) {
        if (cfg.family == family) return &cfg;
    }
    return nullptr;
}

}  // namespace

EnsembleModel train_all(const FeatureSet& train, const FeatureSet& validation,
                        const std::vector<TrainConfig>& configs,
                        std::vector<std::string>* member_errors) {
    EnsembleModel model;
    model.vocab_fingerprint = train.tfidf.vocab_fingerprint;

    std::vector<std::string> errors;
    for (const auto& spec : standard_registry()) {
        const TrainConfig* cfg = config_for(configs, spec.family);
        const TrainConfig effective =
            cfg != nullptr ? *cfg : TrainConfig::defaults_for(spec.family);
        try {
            ClassifierModel member = spec.trainer(train.for_kind(spec.features), effective);
            const double accuracy =
                validation_accuracy_pct(member, validation.for_kind(spec.features));
            model.members.push_back(std::move(member));
            model.member_validation_accuracy.push_back(accuracy);
        } catch (const Error& e) {
            errors.push_back(std::string(family_id(spec.family)) + ": " + e.what());
        }
    }
    if (member_errors != nullptr) *member_errors = errors;
    if (model.members.empty()) {
        std::string what = "every ensemble member failed to train";
        for (const auto& e : errors) what += "; " + e;
        throw Error(what);
    }
    return model;
}

std::pair<ClassifierFamily, double> select_best(const EnsembleModel& model) {
    if (model.members.empty()) throw Error("ensemble has no members");
    std::size_t best = 0;
    for (std::size_t i = 1; i < model.members.size(); ++i) {
        if (model.member_validation_accuracy[i] > model.member_validation_accuracy[best]) {
            best = i;
        }
    }
    return {model.members[best].family, model.member_validation_accuracy[best]};
}

EnsembleVerdict vote(const EnsembleModel& model, const PreparedFeatures& features) {
    if (features.vocab_fingerprint != model.vocab_fingerprint) {
        throw VocabularyMismatchError(
            "features were prepared against a different vocabulary than the ensemble");
    }
    EnsembleVerdict verdict;
    for (const auto& member : model.members) {
        const Prediction p =
            predict(member, features.for_kind(family_feature_kind(member.family)));
        verdict.votes.emplace_back(member.family, p.label);
        verdict.scores.emplace_back(member.family, p.score);
        (p.label == Label::Malicious ? verdict.malicious_votes : verdict.benign_votes) += 1;
    }
    verdict.tied = verdict.malicious_votes == verdict.benign_votes;
    verdict.final_label = verdict.malicious_votes >= verdict.benign_votes ? Label::Malicious
                                                                          : Label::Benign;
    return verdict;
}

std::optional<std::size_t> member_index(const EnsembleModel& model, ClassifierFamily family) {
    for (std::size_t i = 0; i < model.members.size(); ++i) {
        if (model.members[i].family == family) return i;
    }
    return std::nullopt;
}

}  // namespace eulaflag
