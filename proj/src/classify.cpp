#include "eulaflag/classify.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <random>

namespace eulaflag {

const char* family_id(ClassifierFamily f) {
    switch (f) {
        case ClassifierFamily::MultinomialNB: return "multinomial_nb";
        case ClassifierFamily::BernoulliNB: return "bernoulli_nb";
        case ClassifierFamily::LogisticRegression: return "logistic_regression";
        case ClassifierFamily::SgdHinge: return "sgd_hinge";
        case ClassifierFamily::Svc: return "svc";
        case ClassifierFamily::LinearSvc: return "linear_svc";
        case ClassifierFamily::NuSvc: return "nu_svc";
    }
    return "unknown";
}

const char* family_display_name(ClassifierFamily f) {
    switch (f) {
        case ClassifierFamily::MultinomialNB: return "Multinomial naive bayes";
        case ClassifierFamily::BernoulliNB: return "Bernoulli naive bayes";
        case ClassifierFamily::LogisticRegression: return "Logistic Regression algorithm";
        case ClassifierFamily::SgdHinge: return "SGD classifier";
        case ClassifierFamily::Svc: return "SVC algorithm";
        case ClassifierFamily::LinearSvc: return "Linear SVC";
        case ClassifierFamily::NuSvc: return "NuSVC algorithm";
    }
    return "unknown";
}

ClassifierFamily family_from_id(const std::string& id) {
    for (const auto f : kRegistryOrder) {
        if (id == family_id(f)) return f;
    }
    throw Error("unknown classifier family id: " + id);
}

FeatureKind family_feature_kind(ClassifierFamily f) {
    switch (f) {
        case ClassifierFamily::MultinomialNB: return FeatureKind::Counts;
        case ClassifierFamily::BernoulliNB: return FeatureKind::Binary;
        default: return FeatureKind::Tfidf;
    }
}

TrainConfig TrainConfig::defaults_for(ClassifierFamily f) {
    TrainConfig cfg;
    cfg.family = f;
    return cfg;
}

namespace {

void check_two_classes(const FeatureMatrix& data) {
    bool has_pos = false;
    bool has_neg = false;
    for (const int y : data.labels) {
        has_pos |= y > 0;
        has_neg |= y < 0;
    }
    if (!has_pos || !has_neg) throw SingleClassDataError();
}

void check_shape(const FeatureMatrix& data) {
    if (data.rows.size() != data.labels.size()) {
        throw Error("feature matrix rows/labels length mismatch");
    }
    if (data.rows.empty()) throw EmptyInputError("empty feature matrix");
    for (const auto& row : data.rows) {
        if (row.max_column() >= data.n_features) {
            throw Error("feature column exceeds n_features");
        }
    }
}

double sparse_dot_dense(const SparseVector& x, const Eigen::VectorXd& w) {
    double sum = 0.0;
    for (const auto& e : x.entries) sum += e.weight * w(e.column);
    return sum;
}

void axpy_sparse(double a, const SparseVector& x, Eigen::VectorXd& w) {
    for (const auto& e : x.entries) w(e.column) += a * e.weight;
}

double sigmoid(double z) {
    if (z >= 0.0) {
        return 1.0 / (1.0 + std::exp(-z));
    }
    const double ez = std::exp(z);
    return ez / (1.0 + ez);
}

/// Deterministic Fisher-Yates, same rationale as the corpus split.
void shuffle_indices(std::vector<std::size_t>& items, std::mt19937_64& rng) {
    for (std::size_t i = items.size(); i > 1; --i) {
        std::swap(items[i - 1], items[static_cast<std::size_t>(rng() % i)]);
    }
}

ClassifierModel make_model(ClassifierFamily family, const FeatureMatrix& data) {
    ClassifierModel model;
    model.family = family;
    model.n_features = data.n_features;
    model.vocab_fingerprint = data.vocab_fingerprint;
    return model;
}

}  // namespace

ClassifierModel train_multinomial_nb(const FeatureMatrix& data, const TrainConfig& cfg) {
    check_shape(data);
    check_two_classes(data);
    const auto v = static_cast<Eigen::Index>(data.n_features);

    Eigen::VectorXd counts_pos = Eigen::VectorXd::Zero(v);
    Eigen::VectorXd counts_neg = Eigen::VectorXd::Zero(v);
    std::size_t docs_pos = 0;
    std::size_t docs_neg = 0;
    for (std::size_t i = 0; i < data.rows.size(); ++i) {
        auto& counts = data.labels[i] > 0 ? counts_pos : counts_neg;
        (data.labels[i] > 0 ? docs_pos : docs_neg) += 1;
        for (const auto& e : data.rows[i].entries) counts(e.column) += e.weight;
    }

    MultinomialNbParams params;
    const auto total = static_cast<double>(data.rows.size());
    params.log_prior_pos = std::log(static_cast<double>(docs_pos) / total);
    params.log_prior_neg = std::log(static_cast<double>(docs_neg) / total);
    const double denom_pos = counts_pos.sum() + cfg.alpha * static_cast<double>(v);
    const double denom_neg = counts_neg.sum() + cfg.alpha * static_cast<double>(v);
    params.log_likelihood_pos =
        ((counts_pos.array() + cfg.alpha) / denom_pos).log().matrix();
    params.log_likelihood_neg =
        ((counts_neg.array() + cfg.alpha) / denom_neg).log().matrix();

    ClassifierModel model = make_model(ClassifierFamily::MultinomialNB, data);
    model.params = std::move(params);
    return model;
}

ClassifierModel train_bernoulli_nb(const FeatureMatrix& data, const TrainConfig& cfg) {
    check_shape(data);
    check_two_classes(data);
    const auto v = static_cast<Eigen::Index>(data.n_features);

    Eigen::VectorXd present_pos = Eigen::VectorXd::Zero(v);
    Eigen::VectorXd present_neg = Eigen::VectorXd::Zero(v);
    std::size_t docs_pos = 0;
    std::size_t docs_neg = 0;
    for (std::size_t i = 0; i < data.rows.size(); ++i) {
        auto& present = data.labels[i] > 0 ? present_pos : present_neg;
        (data.labels[i] > 0 ? docs_pos : docs_neg) += 1;
        for (const auto& e : data.rows[i].entries) {
            if (e.weight > 0.0) present(e.column) += 1.0;  // binarize internally
        }
    }

    BernoulliNbParams params;
    const auto total = static_cast<double>(data.rows.size());
    params.log_prior_pos = std::log(static_cast<double>(docs_pos) / total);
    params.log_prior_neg = std::log(static_cast<double>(docs_neg) / total);
    const auto fill = [&](const Eigen::VectorXd& present, std::size_t docs,
                          Eigen::VectorXd& log_p, Eigen::VectorXd& log_1mp) {
        const double denom = static_cast<double>(docs) + 2.0 * cfg.alpha;
        Eigen::ArrayXd p = (present.array() + cfg.alpha) / denom;
        log_p = p.log().matrix();
        log_1mp = (1.0 - p).log().matrix();
    };
    fill(present_pos, docs_pos, params.log_p_pos, params.log_1mp_pos);
    fill(present_neg, docs_neg, params.log_p_neg, params.log_1mp_neg);

    ClassifierModel model = make_model(ClassifierFamily::BernoulliNB, data);
    model.params = std::move(params);
    return model;
}

double logistic_loss_and_gradient(const FeatureMatrix& data, const Eigen::VectorXd& weights,
                                  double bias, double lambda, Eigen::VectorXd& grad_w,
                                  double& grad_b) {
    const auto n = static_cast<double>(data.rows.size());
    grad_w = lambda * weights;
    grad_b = 0.0;
    double loss = 0.5 * lambda * weights.squaredNorm();
    for (std::size_t i = 0; i < data.rows.size(); ++i) {
        const double y = data.labels[i];
        const double z = sparse_dot_dense(data.rows[i], weights) + bias;
        const double yz = y * z;
        // ln(1 + exp(-yz)) computed stably
        loss += (yz > 0.0 ? std::log1p(std::exp(-yz)) : -yz + std::log1p(std::exp(yz))) / n;
        const double coeff = -y * sigmoid(-yz) / n;
        axpy_sparse(coeff, data.rows[i], grad_w);
        grad_b += coeff;
    }
    return loss;
}

ClassifierModel train_logistic_regression(const FeatureMatrix& data, const TrainConfig& cfg) {
    check_shape(data);
    check_two_classes(data);

    LinearModelParams params;
    params.weights = Eigen::VectorXd::Zero(data.n_features);
    params.bias = 0.0;

    const long long max_steps =
        static_cast<long long>(cfg.epochs) * static_cast<long long>(data.rows.size());
    Eigen::VectorXd grad_w;
    double grad_b = 0.0;
    for (long long step = 0; step < max_steps; ++step) {
        logistic_loss_and_gradient(data, params.weights, params.bias, cfg.lambda, grad_w, grad_b);
        const double grad_norm = std::sqrt(grad_w.squaredNorm() + grad_b * grad_b);
        if (grad_norm < 1e-6) break;
        params.weights -= cfg.learning_rate * grad_w;
        params.bias -= cfg.learning_rate * grad_b;
    }

    ClassifierModel model = make_model(ClassifierFamily::LogisticRegression, data);
    model.params = std::move(params);
    return model;
}

ClassifierModel train_sgd_hinge(const FeatureMatrix& data, const TrainConfig& cfg) {
    check_shape(data);
    check_two_classes(data);

    LinearModelParams params;
    params.weights = Eigen::VectorXd::Zero(data.n_features);
    params.bias = 0.0;

    // Pegasos schedule; the bias rides along as an implicit constant feature
    // so the 1/(lambda*t) step stays bounded for it too.
    std::mt19937_64 rng(cfg.seed);
    std::vector<std::size_t> order(data.rows.size());
    for (std::size_t i = 0; i < order.size(); ++i) order[i] = i;

    long long t = 1;
    for (int epoch = 0; epoch < cfg.epochs; ++epoch) {
        shuffle_indices(order, rng);
        for (const std::size_t i : order) {
            const double eta = 1.0 / (cfg.lambda * static_cast<double>(t));
            const double y = data.labels[i];
            const double margin = y * (sparse_dot_dense(data.rows[i], params.weights) + params.bias);
            const double shrink = 1.0 - eta * cfg.lambda;
            params.weights *= shrink;
            params.bias *= shrink;
            if (margin < 1.0) {
                axpy_sparse(eta * y, data.rows[i], params.weights);
                params.bias += eta * y;
            }
            ++t;
        }
    }

    ClassifierModel model = make_model(ClassifierFamily::SgdHinge, data);
    model.params = std::move(params);
    return model;
}

ClassifierModel train_linear_svc(const FeatureMatrix& data, const TrainConfig& cfg) {
    check_shape(data);
    check_two_classes(data);

    LinearModelParams params;
    params.weights = Eigen::VectorXd::Zero(data.n_features);
    params.bias = 0.0;

    const auto n = static_cast<double>(data.rows.size());
    const long long max_steps = std::min<long long>(
        static_cast<long long>(cfg.epochs) * static_cast<long long>(data.rows.size()), 20000);

    double prev_objective = std::numeric_limits<double>::infinity();
    int stall = 0;
    for (long long t = 1; t <= max_steps; ++t) {
        Eigen::VectorXd grad = cfg.lambda * params.weights;
        double grad_b = 0.0;
        double hinge = 0.0;
        for (std::size_t i = 0; i < data.rows.size(); ++i) {
            const double y = data.labels[i];
            const double margin = y * (sparse_dot_dense(data.rows[i], params.weights) + params.bias);
            if (margin < 1.0) {
                hinge += 1.0 - margin;
                axpy_sparse(-y / n, data.rows[i], grad);
                grad_b += -y / n;
            }
        }
        const double objective = hinge / n + 0.5 * cfg.lambda * params.weights.squaredNorm();
        if (std::abs(prev_objective - objective) <= 1e-12 * std::max(1.0, objective)) {
            if (++stall >= 20) break;
        } else {
            stall = 0;
        }
        prev_objective = objective;

        const double eta = 1.0 / (cfg.lambda * static_cast<double>(t));
        params.weights -= eta * grad;
        params.bias -= eta * grad_b;  // bias not regularized
    }

    ClassifierModel model = make_model(ClassifierFamily::LinearSvc, data);
    model.params = std::move(params);
    return model;
}

namespace {

double kernel_eval(const SparseVector& a, const SparseVector& b, KernelKind kernel, double gamma) {
    const double dot = a.dot(b);
    if (kernel == KernelKind::Linear) return dot;
    const double dist2 = a.squared_norm() + b.squared_norm() - 2.0 * dot;
    return std::exp(-gamma * std::max(0.0, dist2));
}

struct SmoResult {
    Eigen::VectorXd alpha;
    double bias{0.0};
    bool converged{true};
};

/// Platt-style SMO over a precomputed kernel matrix: first index by KKT
/// violation, second by the |E1-E2| heuristic with seeded rotating
/// fallbacks, full error cache refreshed after every successful step.
class SmoSolver {
  public:
    SmoSolver(const Eigen::MatrixXd& kernel, const std::vector<int>& labels, double c, double tol,
              int max_passes, std::uint64_t seed)
        : k_(kernel),
          y_(labels),
          c_(c),
          tol_(tol),
          max_passes_(max_passes),
          rng_(seed),
          n_(static_cast<Eigen::Index>(labels.size())),
          alpha_(Eigen::VectorXd::Zero(static_cast<Eigen::Index>(labels.size()))),
          errors_(static_cast<Eigen::Index>(labels.size())) {
        for (Eigen::Index i = 0; i < n_; ++i) errors_(i) = -static_cast<double>(y_[i]);
    }

    SmoResult solve() {
        int num_changed = 0;
        bool examine_all = true;
        int full_passes = 0;
        int sweeps = 0;
        const int hard_cap = 1000;
        bool converged = true;
        while ((num_changed > 0 || examine_all) && sweeps < hard_cap) {
            if (examine_all && full_passes++ >= max_passes_) {
                converged = false;
                break;
            }
            num_changed = 0;
            for (Eigen::Index i = 0; i < n_; ++i) {
                if (!examine_all && (alpha_(i) <= 0.0 || alpha_(i) >= c_)) continue;
                num_changed += examine(i);
            }
            if (examine_all) {
                examine_all = false;
            } else if (num_changed == 0) {
                examine_all = true;
            }
            ++sweeps;
        }
        if (sweeps >= hard_cap) converged = false;
        return {alpha_, bias_, converged};
    }

  private:
    bool is_free(Eigen::Index i) const { return alpha_(i) > 0.0 && alpha_(i) < c_; }

    int examine(Eigen::Index i2) {
        const double y2 = y_[static_cast<std::size_t>(i2)];
        const double e2 = errors_(i2);
        const double r2 = e2 * y2;
        const bool violates =
            (r2 < -tol_ && alpha_(i2) < c_) || (r2 > tol_ && alpha_(i2) > 0.0);
        if (!violates) return 0;

        // Heuristic 1: largest |E1 - E2| among free multipliers.
        Eigen::Index best = -1;
        double best_gap = -1.0;
        for (Eigen::Index i = 0; i < n_; ++i) {
            if (!is_free(i)) continue;
            const double gap = std::abs(errors_(i) - e2);
            if (gap > best_gap) {
                best_gap = gap;
                best = i;
            }
        }
        if (best >= 0 && take_step(best, i2)) return 1;

        // Heuristic 2: free multipliers from a seeded offset.
        const auto start =
            static_cast<Eigen::Index>(rng_() % static_cast<std::uint64_t>(n_));
        for (Eigen::Index off = 0; off < n_; ++off) {
            const Eigen::Index i1 = (start + off) % n_;
            if (is_free(i1) && take_step(i1, i2)) return 1;
        }
        // Heuristic 3: everything.
        for (Eigen::Index off = 0; off < n_; ++off) {
            const Eigen::Index i1 = (start + off) % n_;
            if (take_step(i1, i2)) return 1;
        }
        return 0;
    }

    bool take_step(Eigen::Index i1, Eigen::Index i2) {
        if (i1 == i2) return false;
        const double y1 = y_[static_cast<std::size_t>(i1)];
        const double y2 = y_[static_cast<std::size_t>(i2)];
        const double a1 = alpha_(i1);
        const double a2 = alpha_(i2);
        const double e1 = errors_(i1);
        const double e2 = errors_(i2);
        const double s = y1 * y2;

        double low;
        double high;
        if (y1 == y2) {
            low = std::max(0.0, a1 + a2 - c_);
            high = std::min(c_, a1 + a2);
        } else {
            low = std::max(0.0, a2 - a1);
            high = std::min(c_, c_ + a2 - a1);
        }
        if (low >= high) return false;

        const double k11 = k_(i1, i1);
        const double k12 = k_(i1, i2);
        const double k22 = k_(i2, i2);
        const double eta = k11 + k22 - 2.0 * k12;
        if (eta <= 0.0) return false;

        double a2_new = a2 + y2 * (e1 - e2) / eta;
        a2_new = std::clamp(a2_new, low, high);
        if (std::abs(a2_new - a2) < 1e-8 * (a2_new + a2 + 1e-8)) return false;
        const double a1_new = a1 + s * (a2 - a2_new);

        const double b1 = bias_ - e1 - y1 * (a1_new - a1) * k11 - y2 * (a2_new - a2) * k12;
        const double b2 = bias_ - e2 - y1 * (a1_new - a1) * k12 - y2 * (a2_new - a2) * k22;
        double b_new;
        if (a1_new > 0.0 && a1_new < c_) {
            b_new = b1;
        } else if (a2_new > 0.0 && a2_new < c_) {
            b_new = b2;
        } else {
            b_new = 0.5 * (b1 + b2);
        }

        const double d1 = y1 * (a1_new - a1);
        const double d2 = y2 * (a2_new - a2);
        const double db = b_new - bias_;
        for (Eigen::Index i = 0; i < n_; ++i) {
            errors_(i) += d1 * k_(i1, i) + d2 * k_(i2, i) + db;
        }
        alpha_(i1) = a1_new;
        alpha_(i2) = a2_new;
        bias_ = b_new;
        return true;
    }

    const Eigen::MatrixXd& k_;
    const std::vector<int>& y_;
    double c_;
    double tol_;
    int max_passes_;
    std::mt19937_64 rng_;
    Eigen::Index n_;
    Eigen::VectorXd alpha_;
    Eigen::VectorXd errors_;
    double bias_{0.0};
};

Eigen::MatrixXd gram_matrix(const FeatureMatrix& data, KernelKind kernel, double gamma) {
    const auto n = static_cast<Eigen::Index>(data.rows.size());
    Eigen::MatrixXd k(n, n);
    for (Eigen::Index i = 0; i < n; ++i) {
        for (Eigen::Index j = i; j < n; ++j) {
            const double value = kernel_eval(data.rows[static_cast<std::size_t>(i)],
                                             data.rows[static_cast<std::size_t>(j)], kernel, gamma);
            k(i, j) = value;
            k(j, i) = value;
        }
    }
    return k;
}

double effective_gamma(const TrainConfig& cfg, int n_features) {
    if (cfg.gamma > 0.0) return cfg.gamma;
    return 1.0 / std::max(1, n_features);
}

ClassifierModel svm_model_from_alphas(ClassifierFamily family, const FeatureMatrix& data,
                                      const SmoResult& smo, KernelKind kernel, double gamma,
                                      double c) {
    SvmParams params;
    params.kernel = kernel;
    params.gamma = gamma;
    params.c = c;
    params.bias = smo.bias;
    params.converged = smo.converged;
    std::vector<std::size_t> sv_indices;
    for (std::size_t i = 0; i < data.rows.size(); ++i) {
        if (smo.alpha(static_cast<Eigen::Index>(i)) > 1e-12) sv_indices.push_back(i);
    }
    params.dual_coefficients.resize(static_cast<Eigen::Index>(sv_indices.size()));
    for (std::size_t k = 0; k < sv_indices.size(); ++k) {
        const std::size_t i = sv_indices[k];
        params.support_vectors.push_back(data.rows[i]);
        params.dual_coefficients(static_cast<Eigen::Index>(k)) =
            smo.alpha(static_cast<Eigen::Index>(i)) * data.labels[i];
    }
    ClassifierModel model = make_model(family, data);
    model.params = std::move(params);
    return model;
}

struct NuFractions {
    double margin_errors{0.0};
    double support_vectors{0.0};
};

NuFractions nu_fractions(const FeatureMatrix& data, const Eigen::MatrixXd& gram,
                         const SmoResult& smo) {
    const auto n = static_cast<Eigen::Index>(data.rows.size());
    std::size_t margin_errors = 0;
    std::size_t svs = 0;
    for (Eigen::Index i = 0; i < n; ++i) {
        double f = smo.bias;
        for (Eigen::Index j = 0; j < n; ++j) {
            if (smo.alpha(j) > 1e-12) {
                f += smo.alpha(j) * data.labels[static_cast<std::size_t>(j)] * gram(j, i);
            }
        }
        if (smo.alpha(i) > 1e-12) ++svs;
        if (static_cast<double>(data.labels[static_cast<std::size_t>(i)]) * f < 1.0 - 1e-6) {
            ++margin_errors;
        }
    }
    const auto total = static_cast<double>(n);
    return {static_cast<double>(margin_errors) / total, static_cast<double>(svs) / total};
}

}  // namespace

ClassifierModel train_svc_smo(const FeatureMatrix& data, const TrainConfig& cfg) {
    check_shape(data);
    check_two_classes(data);
    const double gamma = effective_gamma(cfg, data.n_features);
    const Eigen::MatrixXd gram = gram_matrix(data, cfg.kernel, gamma);
    SmoSolver solver(gram, data.labels, cfg.c, cfg.smo_tolerance, cfg.smo_max_passes, cfg.seed);
    const SmoResult smo = solver.solve();
    return svm_model_from_alphas(ClassifierFamily::Svc, data, smo, cfg.kernel, gamma, cfg.c);
}

ClassifierModel train_nu_svc(const FeatureMatrix& data, const TrainConfig& cfg) {
    check_shape(data);
    check_two_classes(data);
    if (!(cfg.nu > 0.0 && cfg.nu <= 1.0)) {
        throw InfeasibleNuError("nu must lie in (0,1]");
    }
    std::size_t n_pos = 0;
    std::size_t n_neg = 0;
    for (const int y : data.labels) (y > 0 ? n_pos : n_neg) += 1;
    const auto n = static_cast<double>(data.rows.size());
    const double nu_max = 2.0 * static_cast<double>(std::min(n_pos, n_neg)) / n;
    if (cfg.nu > nu_max + 1e-12) {
        throw InfeasibleNuError("nu exceeds feasibility bound 2*min(n+,n-)/n");
    }

    const double gamma = effective_gamma(cfg, data.n_features);
    const Eigen::MatrixXd gram = gram_matrix(data, cfg.kernel, gamma);

    struct Candidate {
        SmoResult smo;
        NuFractions fractions;
        double c{0.0};
        double violation{0.0};
    };
    auto evaluate = [&](double c) {
        SmoSolver solver(gram, data.labels, c, cfg.smo_tolerance, cfg.smo_max_passes, cfg.seed);
        Candidate cand;
        cand.smo = solver.solve();
        cand.fractions = nu_fractions(data, gram, cand.smo);
        cand.c = c;
        cand.violation = std::max({cand.fractions.margin_errors - cfg.nu,
                                   cfg.nu - cand.fractions.support_vectors, 0.0});
        return cand;
    };

    // Both fractions decrease as C grows, so bisect C in log space; a fine
    // grid pass refines the best candidate when bisection lands between
    // kinks of the path.
    double lo = 1e-4;
    double hi = 1e4;
    Candidate best = evaluate(std::sqrt(lo * hi));
    for (int iter = 0; iter < 40 && best.violation > 0.0; ++iter) {
        const double mid = std::sqrt(lo * hi);
        Candidate cand = evaluate(mid);
        if (cand.violation < best.violation) best = cand;
        if (cand.fractions.support_vectors < cfg.nu) {
            hi = mid;
        } else if (cand.fractions.margin_errors > cfg.nu) {
            lo = mid;
        } else {
            break;
        }
        if (hi / lo < 1.0 + 1e-6) break;
    }
    if (best.violation > 0.035) {
        for (double c = 1e-4; c <= 1e4; c *= 1.15) {
            Candidate cand = evaluate(c);
            if (cand.violation < best.violation) best = cand;
            if (best.violation == 0.0) break;
        }
    }

    ClassifierModel model =
        svm_model_from_alphas(ClassifierFamily::NuSvc, data, best.smo, cfg.kernel, gamma, best.c);
    auto& params = std::get<SvmParams>(model.params);
    params.nu = cfg.nu;
    params.achieved_margin_error_fraction = best.fractions.margin_errors;
    params.achieved_sv_fraction = best.fractions.support_vectors;
    return model;
}

ClassifierModel train_classifier(const FeatureMatrix& data, const TrainConfig& cfg) {
    switch (cfg.family) {
        case ClassifierFamily::MultinomialNB: return train_multinomial_nb(data, cfg);
        case ClassifierFamily::BernoulliNB: return train_bernoulli_nb(data, cfg);
        case ClassifierFamily::LogisticRegression: return train_logistic_regression(data, cfg);
        case ClassifierFamily::SgdHinge: return train_sgd_hinge(data, cfg);
        case ClassifierFamily::Svc: return train_svc_smo(data, cfg);
        case ClassifierFamily::LinearSvc: return train_linear_svc(data, cfg);
        case ClassifierFamily::NuSvc: return train_nu_svc(data, cfg);
    }
    throw Error("unknown classifier family");
}

Prediction predict(const ClassifierModel& model, const SparseVector& features) {
    if (features.max_column() >= model.n_features) {
        throw VocabularyMismatchError("feature column exceeds the model's feature space");
    }
    double score = 0.0;
    if (const auto* nb = std::get_if<MultinomialNbParams>(&model.params)) {
        double pos = nb->log_prior_pos;
        double neg = nb->log_prior_neg;
        for (const auto& e : features.entries) {
            pos += e.weight * nb->log_likelihood_pos(e.column);
            neg += e.weight * nb->log_likelihood_neg(e.column);
        }
        score = pos - neg;
    } else if (const auto* bnb = std::get_if<BernoulliNbParams>(&model.params)) {
        double pos = bnb->log_prior_pos + bnb->log_1mp_pos.sum();
        double neg = bnb->log_prior_neg + bnb->log_1mp_neg.sum();
        for (const auto& e : features.entries) {
            if (e.weight > 0.0) {
                pos += bnb->log_p_pos(e.column) - bnb->log_1mp_pos(e.column);
                neg += bnb->log_p_neg(e.column) - bnb->log_1mp_neg(e.column);
            }
        }
        score = pos - neg;
    } else if (const auto* linear = std::get_if<LinearModelParams>(&model.params)) {
        score = sparse_dot_dense(features, linear->weights) + linear->bias;
    } else if (const auto* svm = std::get_if<SvmParams>(&model.params)) {
        score = svm->bias;
        for (std::size_t i = 0; i < svm->support_vectors.size(); ++i) {
            score += svm->dual_coefficients(static_cast<Eigen::Index>(i)) *
                     kernel_eval(svm->support_vectors[i], features, svm->kernel, svm->gamma);
        }
    }
    return {score > 0.0 ? Label::Malicious : Label::Benign, score};
}

const std::vector<ClassifierSpec>& standard_registry() {
    static const std::vector<ClassifierSpec> registry = [] {
        std::vector<ClassifierSpec> entries;
        for (const auto family : kRegistryOrder) {
            entries.push_back({family, family_feature_kind(family),
                               [](const FeatureMatrix& data, const TrainConfig& cfg) {
                                   return train_classifier(data, cfg);
                               }});
        }
        return entries;
    }();
    return registry;
}

}  // namespace eulaflag
