#include "eulaflag/model_io.hpp"

#include <json.hpp>

#include <fstream>

#include "eulaflag/hash.hpp"

namespace eulaflag {

using nlohmann::json;

namespace {

json vector_to_json(const Eigen::VectorXd& v) {
    json out = json::array();
    for (Eigen::Index i = 0; i < v.size(); ++i) out.push_back(v(i));
    return out;
}

Eigen::VectorXd vector_from_json(const json& arr) {
    Eigen::VectorXd v(static_cast<Eigen::Index>(arr.size()));
    Eigen::Index i = 0;
    for (const auto& x : arr) v(i++) = x.get<double>();
    return v;
}

json sparse_to_json(const SparseVector& v) {
    json out = json::array();
    for (const auto& e : v.entries) out.push_back({e.column, e.weight});
    return out;
}

SparseVector sparse_from_json(const json& arr) {
    SparseVector v;
    for (const auto& pair : arr) {
        v.entries.push_back({pair.at(0).get<int>(), pair.at(1).get<double>()});
    }
    return v;
}

json params_to_json(const ClassifierModel& model) {
    json out;
    if (const auto* nb = std::get_if<MultinomialNbParams>(&model.params)) {
        out["log_prior_pos"] = nb->log_prior_pos;
        out["log_prior_neg"] = nb->log_prior_neg;
        out["log_likelihood_pos"] = vector_to_json(nb->log_likelihood_pos);
        out["log_likelihood_neg"] = vector_to_json(nb->log_likelihood_neg);
    } else if (const auto* bnb = std::get_if<BernoulliNbParams>(&model.params)) {
        out["log_prior_pos"] = bnb->log_prior_pos;
        out["log_prior_neg"] = bnb->log_prior_neg;
        out["log_p_pos"] = vector_to_json(bnb->log_p_pos);
        out["log_p_neg"] = vector_to_json(bnb->log_p_neg);
        out["log_1mp_pos"] = vector_to_json(bnb->log_1mp_pos);
        out["log_1mp_neg"] = vector_to_json(bnb->log_1mp_neg);
    } else if (const auto* linear = std::get_if<LinearModelParams>(&model.params)) {
        out["weights"] = vector_to_json(linear->weights);
        out["bias"] = linear->bias;
    } else if (const auto* svm = std::get_if<SvmParams>(&model.params)) {
        out["kernel"] = svm->kernel == KernelKind::Linear ? "linear" : "rbf";
        out["gamma"] = svm->gamma;
        out["c"] = svm->c;
        out["bias"] = svm->bias;
        out["converged"] = svm->converged;
        out["nu"] = svm->nu;
        out["achieved_margin_error_fraction"] = svm->achieved_margin_error_fraction;
        out["achieved_sv_fraction"] = svm->achieved_sv_fraction;
        out["dual_coefficients"] = vector_to_json(svm->dual_coefficients);
        json svs = json::array();
        for (const auto& sv : svm->support_vectors) svs.push_back(sparse_to_json(sv));
        out["support_vectors"] = svs;
    }
    return out;
}

void params_from_json(const json& in, ClassifierModel& model) {
    switch (model.family) {
        case ClassifierFamily::MultinomialNB: {
            MultinomialNbParams p;
            p.log_prior_pos = in.at("log_prior_pos").get<double>();
            p.log_prior_neg = in.at("log_prior_neg").get<double>();
            p.log_likelihood_pos = vector_from_json(in.at("log_likelihood_pos"));
            p.log_likelihood_neg = vector_from_json(in.at("log_likelihood_neg"));
            model.params = std::move(p);
            break;
        }
        case ClassifierFamily::BernoulliNB: {
            BernoulliNbParams p;
            p.log_prior_pos = in.at("log_prior_pos").get<double>();
            p.log_prior_neg = in.at("log_prior_neg").get<double>();
            p.log_p_pos = vector_from_json(in.at("log_p_pos"));
            p.log_p_neg = vector_from_json(in.at("log_p_neg"));
            p.log_1mp_pos = vector_from_json(in.at("log_1mp_pos"));
            p.log_1mp_neg = vector_from_json(in.at("log_1mp_neg"));
            model.params = std::move(p);
            break;
        }
        case ClassifierFamily::LogisticRegression:
        case ClassifierFamily::SgdHinge:
        case ClassifierFamily::LinearSvc: {
            LinearModelParams p;
            p.weights = vector_from_json(in.at("weights"));
            p.bias = in.at("bias").get<double>();
            model.params = std::move(p);
            break;
        }
        case ClassifierFamily::Svc:
        case ClassifierFamily::NuSvc: {
            SvmParams p;
            p.kernel = in.at("kernel").get<std::string>() == "rbf" ? KernelKind::Rbf
                                                                   : KernelKind::Linear;
            p.gamma = in.at("gamma").get<double>();
            p.c = in.at("c").get<double>();
            p.bias = in.at("bias").get<double>();
            p.converged = in.at("converged").get<bool>();
            p.nu = in.at("nu").get<double>();
            p.achieved_margin_error_fraction =
                in.at("achieved_margin_error_fraction").get<double>();
            p.achieved_sv_fraction = in.at("achieved_sv_fraction").get<double>();
            p.dual_coefficients = vector_from_json(in.at("dual_coefficients"));
            for (const auto& sv : in.at("support_vectors")) {
                p.support_vectors.push_back(sparse_from_json(sv));
            }
            model.params = std::move(p);
            break;
        }
    }
}

}  // namespace

std::string bundle_to_string(const ModelBundle& bundle) {
    json doc;
    doc["format_version"] = ModelBundle::kFormatVersion;

    const auto& pipeline = bundle.pipeline;
    json vocab;
    vocab["terms"] = pipeline.vocabulary().terms;
    vocab["document_frequency"] = pipeline.vocabulary().document_frequency;
    doc["pipeline"] = {{"stem", pipeline.stem()},
                       {"stopwords", pipeline.stopwords().sorted_words()},
                       {"n_docs", pipeline.n_docs()},
                       {"vocabulary", vocab}};

    json members = json::array();
    for (std::size_t i = 0; i < bundle.ensemble.members.size(); ++i) {
        const auto& member = bundle.ensemble.members[i];
        members.push_back({{"family", family_id(member.family)},
                           {"validation_accuracy_pct",
                            bundle.ensemble.member_validation_accuracy[i]},
                           {"n_features", member.n_features},
                           {"params", params_to_json(member)}});
    }
    doc["members"] = members;
    return doc.dump(2);
}

ModelBundle bundle_from_string(const std::string& data) {
    json doc = json::parse(data, nullptr, false);
    if (doc.is_discarded() || !doc.is_object()) {
        throw BundleFormatError("model bundle is not valid JSON");
    }
    if (!doc.contains("format_version") ||
        doc["format_version"].get<int>() != ModelBundle::kFormatVersion) {
        throw BundleFormatError("unsupported model bundle format version");
    }

    ModelBundle bundle;
    try {
        const auto& p = doc.at("pipeline");
        Vocabulary vocab;
        vocab.terms = p.at("vocabulary").at("terms").get<std::vector<std::string>>();
        vocab.document_frequency =
            p.at("vocabulary").at("document_frequency").get<std::vector<int>>();
        for (std::size_t i = 0; i < vocab.terms.size(); ++i) {
            vocab.term_index.emplace(vocab.terms[i], static_cast<int>(i));
        }
        vocab.fitted_documents = p.at("n_docs").get<std::size_t>();
        bundle.pipeline = FeaturePipeline::restore(
            StopwordSet(p.at("stopwords").get<std::vector<std::string>>()),
            p.at("stem").get<bool>(), std::move(vocab), p.at("n_docs").get<std::size_t>());

        bundle.ensemble.vocab_fingerprint = bundle.pipeline.fingerprint();
        for (const auto& m : doc.at("members")) {
            ClassifierModel member;
            member.family = family_from_id(m.at("family").get<std::string>());
            member.n_features = m.at("n_features").get<int>();
            member.vocab_fingerprint = bundle.pipeline.fingerprint();
            params_from_json(m.at("params"), member);
            bundle.ensemble.members.push_back(std::move(member));
            bundle.ensemble.member_validation_accuracy.push_back(
                m.at("validation_accuracy_pct").get<double>());
        }
    } catch (const json::exception& e) {
        throw BundleFormatError(std::string("model bundle missing fields: ") + e.what());
    }
    return bundle;
}

void save_bundle(const ModelBundle& bundle, const std::filesystem::path& path) {
    std::ofstream out(path, std::ios::binary);
    if (!out) throw Error("cannot open model path for writing: " + path.string());
    out << bundle_to_string(bundle);
    out.put('\n');
    if (!out) throw Error("failed writing model bundle: " + path.string());
}

ModelBundle load_bundle(const std::filesystem::path& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) throw Error("cannot open model bundle: " + path.string());
    std::string data((std::istreambuf_iterator<char>(in)), std::istreambuf_iterator<char>());
    return bundle_from_string(data);
}

std::string bundle_fingerprint(const ModelBundle& bundle) {
    return hex_fingerprint(fnv1a_string(bundle_to_string(bundle)));
}

}  // namespace eulaflag
