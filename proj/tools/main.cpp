#include <CLI11.hpp>
#include <json.hpp>

#include <chrono>
#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <optional>
#include <sstream>

#include "eulaflag/corpus.hpp"
#include "eulaflag/ensemble.hpp"
#include "eulaflag/eval.hpp"
#include "eulaflag/fetch.hpp"
#include "eulaflag/model_io.hpp"
#include "eulaflag/serialize.hpp"
#include "eulaflag/summarize.hpp"

namespace {

using namespace eulaflag;

constexpr int kExitOk = 0;
constexpr int kExitInputError = 2;
constexpr int kExitTrainError = 3;
constexpr int kExitIoError = 4;
constexpr int kExitMalicious = 10;

struct SharedOptions {
    std::string corpus_path;
    std::string model_path;
    std::uint64_t seed{0};
    double split_fraction{0.2962};
    bool stratified{true};
    std::string summarizer{"textrank"};
    double ratio{0.2};
    std::string mode{"vote"};
    bool plain{false};
    std::string stopword_file;
    bool stem{false};
};

struct TrainOptions {
    int epochs{20};
    double learning_rate{0.1};
    double lambda{1e-4};
    double c{1.0};
    double nu{0.5};
    double alpha{1.0};
    std::string kernel{"linear"};
    double gamma{0.0};
};

struct SummarizerOptions {
    double lexrank_threshold{0.1};
    bool lexrank_continuous{false};
    bool lsa_length_weighted{false};
    double damping{0.85};
    int max_iterations{100};
    double tolerance{1e-6};
    int ri_dimension{512};
    int ri_nonzeros{8};
};

struct FetchCliOptions {
    double timeout{15.0};
    int max_redirects{5};
};

StopwordSet resolve_stopwords(const SharedOptions& shared) {
    if (!shared.stopword_file.empty()) {
        return StopwordSet::from_file(shared.stopword_file);
    }
    if (const char* env = std::getenv("EULAFLAG_STOPWORDS"); env != nullptr && *env != '\0') {
        return StopwordSet::from_file(env);
    }
    return StopwordSet::builtin();
}

SummaryConfig build_summary_config(const SharedOptions& shared, const SummarizerOptions& opts) {
    SummaryConfig config;
    config.algorithm = algorithm_from_name(shared.summarizer);
    config.ratio = shared.ratio;
    config.lexrank_threshold = opts.lexrank_threshold;
    config.lexrank_continuous = opts.lexrank_continuous;
    config.lsa_length_weighted = opts.lsa_length_weighted;
    config.damping = opts.damping;
    config.max_iterations = opts.max_iterations;
    config.tolerance = opts.tolerance;
    config.stem = shared.stem;
    config.random_index.dimension = opts.ri_dimension;
    config.random_index.nonzeros = opts.ri_nonzeros;
    config.random_index.seed = shared.seed;
    return config;
}

std::vector<TrainConfig> build_train_configs(const SharedOptions& shared,
                                             const TrainOptions& train) {
    std::vector<TrainConfig> configs;
    for (const auto family : kRegistryOrder) {
        TrainConfig cfg = TrainConfig::defaults_for(family);
        cfg.epochs = train.epochs;
        cfg.learning_rate = train.learning_rate;
        cfg.lambda = train.lambda;
        cfg.c = train.c;
        cfg.nu = train.nu;
        cfg.alpha = train.alpha;
        cfg.seed = shared.seed;
        cfg.kernel = train.kernel == "rbf" ? KernelKind::Rbf : KernelKind::Linear;
        cfg.gamma = train.gamma;
        configs.push_back(cfg);
    }
    return configs;
}

bool is_url(const std::string& input) {
    return input.rfind("http://", 0) == 0 || input.rfind("https://", 0) == 0;
}

/// Reads the input text from a URL (fetched and HTML-stripped when needed)
/// or a local file taken verbatim.
std::string read_input(const std::string& input, const FetchCliOptions& fetch_opts) {
    if (is_url(input)) {
        FetchOptions options;
        options.timeout_seconds = fetch_opts.timeout;
        options.max_redirects = fetch_opts.max_redirects;
        return fetch_eula(input, options).text;
    }
    std::ifstream in(input, std::ios::binary);
    if (!in) throw Error("cannot open input file: " + input);
    std::ostringstream buf;
    buf << in.rdbuf();
    return buf.str();
}

std::vector<ReportRow> evaluate_members(const ModelBundle& bundle, const Corpus& test) {
    const FeatureSet features = bundle.pipeline.prepare_set(test);
    std::vector<Label> truth;
    truth.reserve(test.size());
    for (const auto& doc : test.documents) truth.push_back(doc.label);

    std::vector<ReportRow> rows;
    for (const auto& member : bundle.ensemble.members) {
        const FeatureMatrix& matrix = features.for_kind(family_feature_kind(member.family));
        std::vector<Label> predictions;
        predictions.reserve(test.size());
        for (const auto& row : matrix.rows) predictions.push_back(predict(member, row).label);
        rows.push_back({family_display_name(member.family), score(predictions, truth)});
    }

    std::vector<Label> ensemble_predictions;
    ensemble_predictions.reserve(test.size());
    for (const auto& doc : test.documents) {
        const PreparedFeatures prepared = bundle.pipeline.prepare(doc.text);
        ensemble_predictions.push_back(vote(bundle.ensemble, prepared).final_label);
    }
    rows.push_back({"Majority vote ensemble", score(ensemble_predictions, truth)});
    return rows;
}

int cmd_train(const SharedOptions& shared, const TrainOptions& train_opts) {
    Corpus corpus;
    Corpus train;
    Corpus validation;
    try {
        corpus = load_corpus(shared.corpus_path);
        SplitSpec spec;
        spec.test_fraction = shared.split_fraction;
        spec.seed = shared.seed;
        spec.stratified = shared.stratified;
        std::tie(train, validation) = split_train_test(corpus, spec);
    } catch (const Error& e) {
        std::cerr << "corpus error: " << e.what() << "\n";
        return kExitInputError;
    }

    ModelBundle bundle;
    try {
        bundle.pipeline = FeaturePipeline::fit(train, resolve_stopwords(shared), shared.stem);
        const FeatureSet train_features = bundle.pipeline.prepare_set(train);
        const FeatureSet validation_features = bundle.pipeline.prepare_set(validation);
        std::vector<std::string> member_errors;
        bundle.ensemble = train_all(train_features, validation_features,
                                    build_train_configs(shared, train_opts), &member_errors);
        for (const auto& err : member_errors) {
            std::cerr << "warning: member failed: " << err << "\n";
        }
    } catch (const Error& e) {
        std::cerr << "training error: " << e.what() << "\n";
        return kExitTrainError;
    }

    try {
        save_bundle(bundle, shared.model_path);
    } catch (const Error& e) {
        std::cerr << "i/o error: " << e.what() << "\n";
        return kExitIoError;
    }
    std::cerr << "model written to " << shared.model_path << " (fingerprint "
              << bundle_fingerprint(bundle) << ")\n";

    const std::vector<ReportRow> rows = evaluate_members(bundle, validation);
    std::cout << render_report(rows).table;
    return kExitOk;
}

int cmd_eval(const SharedOptions& shared, const std::string& plot_out) {
    ModelBundle bundle;
    try {
        bundle = load_bundle(shared.model_path);
    } catch (const Error& e) {
        std::cerr << "i/o error: " << e.what() << "\n";
        return kExitIoError;
    }

    std::vector<ReportRow> rows;
    try {
        const Corpus corpus = load_corpus(shared.corpus_path);
        SplitSpec spec;
        spec.test_fraction = shared.split_fraction;
        spec.seed = shared.seed;
        spec.stratified = shared.stratified;
        const auto [train, test] = split_train_test(corpus, spec);
        if (test.size() == 0) throw EmptyInputError("test split is empty");
        rows = evaluate_members(bundle, test);
    } catch (const Error& e) {
        std::cerr << "corpus error: " << e.what() << "\n";
        return kExitInputError;
    }

    const Report report = render_report(rows);
    std::cout << report.table;
    if (!plot_out.empty()) {
        std::ofstream out(plot_out, std::ios::binary);
        if (!out) {
            std::cerr << "i/o error: cannot write plot data to " << plot_out << "\n";
            return kExitIoError;
        }
        out << report.plot_csv;
    }
    return kExitOk;
}

int cmd_summarize(const std::string& input, const SharedOptions& shared,
                  const SummarizerOptions& sum_opts, const FetchCliOptions& fetch_opts) {
    try {
        const std::string text = read_input(input, fetch_opts);
        const SummaryConfig config = build_summary_config(shared, sum_opts);
        const Summary summary = summarize(text, config, resolve_stopwords(shared));
        if (shared.plain) {
            std::cout << summary_to_plain(summary);
        } else {
            std::cout << summary_to_json(summary).dump(2) << "\n";
        }
        return kExitOk;
    } catch (const Error& e) {
        std::cerr << "error: " << e.what() << "\n";
        return kExitInputError;
    }
}

int cmd_flag(const std::string& input, const SharedOptions& shared,
             const SummarizerOptions& sum_opts, const FetchCliOptions& fetch_opts) {
    using Clock = std::chrono::steady_clock;
    const auto elapsed_ms = [](Clock::time_point from) {
        return std::chrono::duration<double, std::milli>(Clock::now() - from).count();
    };

    ModelBundle bundle;
    try {
        bundle = load_bundle(shared.model_path);
    } catch (const Error& e) {
        std::cerr << "i/o error: " << e.what() << "\n";
        return kExitIoError;
    }

    FlagReport report;
    report.input = input;
    report.model_fingerprint = bundle_fingerprint(bundle);
    try {
        auto t0 = Clock::now();
        const std::string text = read_input(input, fetch_opts);
        report.fetch_ms = elapsed_ms(t0);

        t0 = Clock::now();
        const PreparedFeatures features = bundle.pipeline.prepare(text);
        report.featurize_ms = elapsed_ms(t0);

        t0 = Clock::now();
        if (shared.mode == "best") {
            const auto [family, accuracy] = select_best(bundle.ensemble);
            const auto idx = member_index(bundle.ensemble, family);
            const auto& member = bundle.ensemble.members[*idx];
            const Prediction p =
                predict(member, features.for_kind(family_feature_kind(family)));
            report.verdict.votes.emplace_back(family, p.label);
            report.verdict.scores.emplace_back(family, p.score);
            report.verdict.final_label = p.label;
            (p.label == Label::Malicious ? report.verdict.malicious_votes
                                         : report.verdict.benign_votes) = 1;
        } else {
            report.verdict = vote(bundle.ensemble, features);
        }
        report.classify_ms = elapsed_ms(t0);

        t0 = Clock::now();
        // Summaries reuse the bundle's tokenizer settings so the report's
        // verdict and summary always describe the same text view.
        SharedOptions summary_shared = shared;
        summary_shared.stem = bundle.pipeline.stem();
        const SummaryConfig config = build_summary_config(summary_shared, sum_opts);
        report.summary = summarize(text, config, bundle.pipeline.stopwords());
        report.summarize_ms = elapsed_ms(t0);
    } catch (const Error& e) {
        std::cerr << "error: " << e.what() << "\n";
        return kExitInputError;
    }

    if (shared.plain) {
        std::cout << flag_report_to_plain(report);
    } else {
        std::cout << flag_report_to_json(report).dump(2) << "\n";
    }
    return report.verdict.final_label == Label::Malicious ? kExitMalicious : kExitOk;
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"EULA red-flagging toolkit: trains an ensemble of text classifiers to tell "
                 "benign from malicious license agreements and produces extractive summaries."};
    app.require_subcommand(1);

    SharedOptions shared;
    TrainOptions train_opts;
    SummarizerOptions sum_opts;
    FetchCliOptions fetch_opts;
    std::string input;
    std::string plot_out;

    const auto add_seed = [&](CLI::App* cmd) {
        cmd->add_option("--seed", shared.seed, "Seed for every random choice (default 0)");
    };
    const auto add_split = [&](CLI::App* cmd) {
        cmd->add_option("--split-fraction", shared.split_fraction,
                        "Held-out fraction; the default 0.2962 makes a 996-document corpus "
                        "yield a 295-document test set")
            ->capture_default_str();
        cmd->add_flag("!--no-stratify", shared.stratified,
                      "Disable per-class stratification of the split");
    };
    const auto add_summarizer = [&](CLI::App* cmd) {
        cmd->add_option("--summarizer", shared.summarizer,
                        "Summarization algorithm: textrank|lexrank|bm25|lsa|ri")
            ->capture_default_str();
        cmd->add_option("--ratio", shared.ratio,
                        "Fraction of source sentences kept in the summary")
            ->capture_default_str();
        cmd->add_option("--lexrank-threshold", sum_opts.lexrank_threshold,
                        "Cosine threshold for LexRank edges")
            ->capture_default_str();
        cmd->add_flag("--lexrank-continuous", sum_opts.lexrank_continuous,
                      "Keep raw cosine weights instead of binarizing LexRank edges");
        cmd->add_flag("--lsa-length-weighted", sum_opts.lsa_length_weighted,
                      "Length-weighted LSA sentence selection");
        cmd->add_option("--damping", sum_opts.damping, "PageRank damping factor")
            ->capture_default_str();
        cmd->add_option("--ri-dimension", sum_opts.ri_dimension,
                        "Random indexing vector dimension")
            ->capture_default_str();
        cmd->add_option("--ri-nonzeros", sum_opts.ri_nonzeros,
                        "Nonzero entries per index vector (even)")
            ->capture_default_str();
    };
    const auto add_stopwords = [&](CLI::App* cmd) {
        cmd->add_option("--stopwords", shared.stopword_file,
                        "Stopword file, one token per line (also via EULAFLAG_STOPWORDS)");
        cmd->add_flag("--stem", shared.stem, "Enable the naive suffix-stripping stemmer");
    };
    const auto add_fetch = [&](CLI::App* cmd) {
        cmd->add_option("--timeout", fetch_opts.timeout, "HTTP timeout in seconds")
            ->capture_default_str();
        cmd->add_option("--max-redirects", fetch_opts.max_redirects, "HTTP redirect limit")
            ->capture_default_str();
    };

    auto* train = app.add_subcommand("train", "Train all classifier families and save a model");
    train->add_option("--corpus", shared.corpus_path, "JSON Lines corpus manifest")->required();
    train->add_option("--model", shared.model_path, "Output model bundle path")->required();
    add_seed(train);
    add_split(train);
    add_stopwords(train);
    train->add_option("--epochs", train_opts.epochs, "Iterative trainer epochs")
        ->capture_default_str();
    train->add_option("--learning-rate", train_opts.learning_rate,
                      "Logistic regression step size")
        ->capture_default_str();
    train->add_option("--lambda", train_opts.lambda, "L2 regularization strength")
        ->capture_default_str();
    train->add_option("--C", train_opts.c, "SVC box constraint")->capture_default_str();
    train->add_option("--nu", train_opts.nu, "NuSVC target fraction")->capture_default_str();
    train->add_option("--alpha", train_opts.alpha, "Naive Bayes smoothing")
        ->capture_default_str();
    train->add_option("--kernel", train_opts.kernel, "SVC kernel: linear|rbf")
        ->capture_default_str();
    train->add_option("--gamma", train_opts.gamma, "RBF gamma (0 = 1/n_features)")
        ->capture_default_str();

    auto* eval_cmd = app.add_subcommand("eval", "Evaluate a saved model on a held-out split");
    eval_cmd->add_option("--corpus", shared.corpus_path, "JSON Lines corpus manifest")
        ->required();
    eval_cmd->add_option("--model", shared.model_path, "Model bundle path")->required();
    add_seed(eval_cmd);
    add_split(eval_cmd);
    eval_cmd->add_option("--plot-out", plot_out,
                         "Write family,accuracy_pct,error_rate_pct records to this file");

    auto* summarize_cmd =
        app.add_subcommand("summarize", "Summarize a document without classifying it");
    summarize_cmd->add_option("input", input, "Document path or URL")->required();
    add_seed(summarize_cmd);
    add_summarizer(summarize_cmd);
    add_stopwords(summarize_cmd);
    add_fetch(summarize_cmd);
    summarize_cmd->add_flag("--plain", shared.plain,
                            "Print concatenated sentences instead of JSON");

    auto* flag_cmd =
        app.add_subcommand("flag", "Classify and summarize a EULA (exit 10 when malicious)");
    flag_cmd->add_option("input", input, "Document path or URL")->required();
    flag_cmd->add_option("--model", shared.model_path, "Model bundle path")->required();
    add_seed(flag_cmd);
    add_summarizer(flag_cmd);
    add_fetch(flag_cmd);
    flag_cmd->add_option("--mode", shared.mode,
                         "vote = majority of all members, best = top validation member")
        ->check(CLI::IsMember({"vote", "best"}))
        ->capture_default_str();
    flag_cmd->add_flag("--plain", shared.plain, "Human-readable report instead of JSON");

    CLI11_PARSE(app, argc, argv);

    if (train->parsed()) return cmd_train(shared, train_opts);
    if (eval_cmd->parsed()) return cmd_eval(shared, plot_out);
    if (summarize_cmd->parsed()) return cmd_summarize(input, shared, sum_opts, fetch_opts);
    if (flag_cmd->parsed()) return cmd_flag(input, shared, sum_opts, fetch_opts);
    return kExitOk;
}
