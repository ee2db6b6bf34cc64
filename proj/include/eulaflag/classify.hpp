#pragma once

#include <Eigen/Dense>
#include <array>
#include <cstdint>
#include <functional>
#include <string>
#include <variant>
#include <vector>

#include "eulaflag/corpus.hpp"
#include "eulaflag/textproc.hpp"

namespace eulaflag {

enum class ClassifierFamily {
    MultinomialNB,
    BernoulliNB,
    LogisticRegression,
    SgdHinge,
    Svc,
    LinearSvc,
    NuSvc,
};

/// Fixed registry order; ties everywhere resolve toward the earlier entry.
inline constexpr std::array<ClassifierFamily, 7> kRegistryOrder = {
    ClassifierFamily::MultinomialNB, ClassifierFamily::BernoulliNB,
    ClassifierFamily::LogisticRegression, ClassifierFamily::SgdHinge,
    ClassifierFamily::Svc, ClassifierFamily::LinearSvc, ClassifierFamily::NuSvc,
};

const char* family_id(ClassifierFamily f);            // e.g. "sgd_hinge"
const char* family_display_name(ClassifierFamily f);  // e.g. "SGD classifier"
ClassifierFamily family_from_id(const std::string& id);

enum class FeatureKind { Counts, Binary, Tfidf };

/// Canonical feature form per family: counts for multinomial NB, binary for
/// Bernoulli NB, TF-IDF for all linear and kernel models.
FeatureKind family_feature_kind(ClassifierFamily f);

/// Labels are +1 (Malicious) / -1 (Benign).
struct FeatureMatrix {
    std::vector<SparseVector> rows;
    std::vector<int> labels;
    int n_features{0};
    std::uint64_t vocab_fingerprint{0};
};

inline int label_to_sign(Label l) { return l == Label::Malicious ? +1 : -1; }
inline Label sign_to_label(int s) { return s > 0 ? Label::Malicious : Label::Benign; }

enum class KernelKind { Linear, Rbf };

struct TrainConfig {
    ClassifierFamily family{ClassifierFamily::SgdHinge};
    int epochs{20};
    double learning_rate{0.1};
    double lambda{1e-4};
    double c{1.0};
    double nu{0.5};
    double alpha{1.0};
    std::uint64_t seed{0};
    KernelKind kernel{KernelKind::Linear};
    double gamma{0.0};  // 0 -> 1/n_features at train time
    double smo_tolerance{1e-3};
    int smo_max_passes{10};

    static TrainConfig defaults_for(ClassifierFamily f);
};

struct MultinomialNbParams {
    double log_prior_pos{0.0};
    double log_prior_neg{0.0};
    Eigen::VectorXd log_likelihood_pos;
    Eigen::VectorXd log_likelihood_neg;
};

struct BernoulliNbParams {
    double log_prior_pos{0.0};
    double log_prior_neg{0.0};
    // Stored split so prediction sums log p for present terms and log(1-p)
    // for absent ones without re-deriving either from the other.
    Eigen::VectorXd log_p_pos;
    Eigen::VectorXd log_p_neg;
    Eigen::VectorXd log_1mp_pos;
    Eigen::VectorXd log_1mp_neg;
};

struct LinearModelParams {
    Eigen::VectorXd weights;
    double bias{0.0};
};

struct SvmParams {
    std::vector<SparseVector> support_vectors;
    Eigen::VectorXd dual_coefficients;  // alpha_i * y_i
    double bias{0.0};
    KernelKind kernel{KernelKind::Linear};
    double gamma{0.0};
    double c{0.0};
    bool converged{true};
    // nu-SVC only
    double nu{0.0};
    double achieved_margin_error_fraction{0.0};
    double achieved_sv_fraction{0.0};
};

struct ClassifierModel {
    ClassifierFamily family{ClassifierFamily::SgdHinge};
    int n_features{0};
    std::uint64_t vocab_fingerprint{0};
    std::variant<MultinomialNbParams, BernoulliNbParams, LinearModelParams, SvmParams> params;
};

ClassifierModel train_multinomial_nb(const FeatureMatrix& data, const TrainConfig& cfg);
ClassifierModel train_bernoulli_nb(const FeatureMatrix& data, const TrainConfig& cfg);
ClassifierModel train_logistic_regression(const FeatureMatrix& data, const TrainConfig& cfg);
ClassifierModel train_sgd_hinge(const FeatureMatrix& data, const TrainConfig& cfg);
ClassifierModel train_svc_smo(const FeatureMatrix& data, const TrainConfig& cfg);
ClassifierModel train_linear_svc(const FeatureMatrix& data, const TrainConfig& cfg);
ClassifierModel train_nu_svc(const FeatureMatrix& data, const TrainConfig& cfg);

/// Dispatches to the family's trainer.
ClassifierModel train_classifier(const FeatureMatrix& data, const TrainConfig& cfg);

struct Prediction {
    Label label{Label::Benign};
    double score{0.0};  // >0 Malicious, <=0 Benign (ties fail open to Benign)
};

/// Decision score: NB log-posterior difference, linear w.x+b, kernel SVM
/// sum(alpha_i y_i K(x_i, x)) + b.
Prediction predict(const ClassifierModel& model, const SparseVector& features);

/// L2-regularized mean logistic loss and its analytic gradient, exposed for
/// gradient checking.
double logistic_loss_and_gradient(const FeatureMatrix& data, const Eigen::VectorXd& weights,
                                  double bias, double lambda, Eigen::VectorXd& grad_w,
                                  double& grad_b);

/// Registry row tying a family id to its trainer and feature form. Extra
/// families can be appended to the standard table to grow the ensemble.
struct ClassifierSpec {
    ClassifierFamily family;
    FeatureKind features;
    std::function<ClassifierModel(const FeatureMatrix&, const TrainConfig&)> trainer;
};

const std::vector<ClassifierSpec>& standard_registry();

}  // namespace eulaflag
