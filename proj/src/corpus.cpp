#include "eulaflag/corpus.hpp"

#include <json.hpp>

#include <algorithm>
#include <fstream>
#include <random>
#include <sstream>
#include <unordered_set>

namespace eulaflag {

namespace {

bool is_blank(const std::string& line) {
    return std::all_of(line.begin(), line.end(),
                       [](unsigned char c) { return std::isspace(c) != 0; });
}

std::string read_file(const std::filesystem::path& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) return {};
    std::ostringstream out;
    out << in.rdbuf();
    return out.str();
}

bool trimmed_empty(const std::string& text) {
    return std::all_of(text.begin(), text.end(),
                       [](unsigned char c) { return std::isspace(c) != 0; });
}

/// Explicit Fisher-Yates with modulo draws so the permutation is identical
/// on every platform (std::shuffle is implementation-defined).
void deterministic_shuffle(std::vector<std::size_t>& items, std::mt19937_64& rng) {
    for (std::size_t i = items.size(); i > 1; --i) {
        const std::size_t j = static_cast<std::size_t>(rng() % i);
        std::swap(items[i - 1], items[j]);
    }
}

}  // namespace

Corpus make_corpus(std::vector<LabeledDocument> documents) {
    Corpus corpus;
    corpus.documents = std::move(documents);
    for (const auto& doc : corpus.documents) {
        if (doc.label == Label::Benign) {
            ++corpus.class_counts.benign;
        } else {
            ++corpus.class_counts.malicious;
        }
    }
    return corpus;
}

Corpus load_corpus(const std::filesystem::path& manifest_path) {
    std::ifstream in(manifest_path);
    if (!in) {
        throw MalformedRecordError(0, "cannot open manifest: " + manifest_path.string());
    }
    const auto base_dir = manifest_path.has_parent_path() ? manifest_path.parent_path()
                                                          : std::filesystem::path(".");

    std::vector<LabeledDocument> documents;
    std::unordered_set<std::string> seen_ids;
    std::string line;
    std::size_t line_no = 0;
    while (std::getline(in, line)) {
        ++line_no;
        if (is_blank(line)) continue;

        nlohmann::json record = nlohmann::json::parse(line, nullptr, false);
        if (record.is_discarded() || !record.is_object()) {
            throw MalformedRecordError(line_no, "not a JSON object");
        }
        if (record.size() != 3 || !record.contains("id") || !record.contains("path") ||
            !record.contains("label")) {
            throw MalformedRecordError(line_no, "record must have exactly {id, path, label}");
        }
        if (!record["id"].is_string() || !record["path"].is_string() ||
            !record["label"].is_string()) {
            throw MalformedRecordError(line_no, "id, path and label must be strings");
        }

        LabeledDocument doc;
        doc.id = record["id"].get<std::string>();
        if (doc.id.empty()) throw MalformedRecordError(line_no, "empty id");
        const std::string label = record["label"].get<std::string>();
        if (label == "benign") {
            doc.label = Label::Benign;
        } else if (label == "malicious") {
            doc.label = Label::Malicious;
        } else {
            throw MalformedRecordError(line_no, "label must be \"benign\" or \"malicious\"");
        }
        if (!seen_ids.insert(doc.id).second) throw DuplicateIdError(doc.id);

        const auto doc_path = base_dir / record["path"].get<std::string>();
        if (!std::filesystem::exists(doc_path)) {
            throw MissingDocumentError(doc.id, doc_path.string());
        }
        doc.text = read_file(doc_path);
        if (trimmed_empty(doc.text)) {
            throw MalformedRecordError(line_no, "document file is empty: " + doc_path.string());
        }
        documents.push_back(std::move(doc));
    }
    if (documents.empty()) throw EmptyCorpusError();
    return make_corpus(std::move(documents));
}

std::pair<Corpus, Corpus> split_train_test(const Corpus& corpus, const SplitSpec& spec) {
    if (!(spec.test_fraction > 0.0 && spec.test_fraction < 1.0)) {
        throw InvalidFractionError(spec.test_fraction);
    }
    if (spec.stratified) {
        if (corpus.class_counts.benign > 0 && corpus.class_counts.benign < 2) {
            throw TooFewDocumentsError("stratified split needs >= 2 benign documents");
        }
        if (corpus.class_counts.malicious > 0 && corpus.class_counts.malicious < 2) {
            throw TooFewDocumentsError("stratified split needs >= 2 malicious documents");
        }
    }

    std::mt19937_64 rng(spec.seed);
    std::vector<bool> in_test(corpus.size(), false);

    auto assign = [&](std::vector<std::size_t> indices) {
        if (indices.empty()) return;
        deterministic_shuffle(indices, rng);
        std::size_t n_test = round_half_up(spec.test_fraction * static_cast<double>(indices.size()));
        n_test = std::min(n_test, indices.size() - 1);  // keep one training document
        for (std::size_t i = 0; i < n_test; ++i) in_test[indices[i]] = true;
    };

    if (spec.stratified) {
        for (const Label cls : {Label::Benign, Label::Malicious}) {
            std::vector<std::size_t> indices;
            for (std::size_t i = 0; i < corpus.size(); ++i) {
                if (corpus.documents[i].label == cls) indices.push_back(i);
            }
            assign(std::move(indices));
        }
    } else {
        std::vector<std::size_t> indices(corpus.size());
        for (std::size_t i = 0; i < indices.size(); ++i) indices[i] = i;
        assign(std::move(indices));
    }

    std::vector<LabeledDocument> train_docs;
    std::vector<LabeledDocument> test_docs;
    for (std::size_t i = 0; i < corpus.size(); ++i) {
        (in_test[i] ? test_docs : train_docs).push_back(corpus.documents[i]);
    }
    return {make_corpus(std::move(train_docs)), make_corpus(std::move(test_docs))};
}

}  // namespace eulaflag
