#pragma once

#include <cstdint>
#include <filesystem>
#include <string>
#include <utility>
#include <vector>

#include "eulaflag/errors.hpp"

namespace eulaflag {

enum class Label { Benign, Malicious };

inline const char* label_name(Label l) { return l == Label::Benign ? "benign" : "malicious"; }

struct LabeledDocument {
    std::string id;
    std::string text;
    Label label{Label::Benign};
};

struct ClassCounts {
    std::size_t benign{0};
    std::size_t malicious{0};

    std::size_t of(Label l) const { return l == Label::Benign ? benign : malicious; }
    std::size_t total() const { return benign + malicious; }
};

struct Corpus {
    std::vector<LabeledDocument> documents;
    ClassCounts class_counts;

    std::size_t size() const { return documents.size(); }
};

struct SplitSpec {
    double test_fraction{0.2962};
    std::uint64_t seed{0};
    bool stratified{true};
};

/// Loads a JSON Lines manifest: one {"id","path","label"} record per line,
/// document paths resolved relative to the manifest's directory.
Corpus load_corpus(const std::filesystem::path& manifest_path);

/// Builds a corpus from in-memory documents, computing class counts.
Corpus make_corpus(std::vector<LabeledDocument> documents);

/// Deterministic (seeded) train/test split. Stratified mode shuffles each
/// class separately with Fisher-Yates over a mt19937_64 stream and takes the
/// first round(test_fraction * n_class) documents as test, capped so at least
/// one document per class stays in train.
std::pair<Corpus, Corpus> split_train_test(const Corpus& corpus, const SplitSpec& spec);

/// Half-up rounding used for split sizes and summary sizing.
inline std::size_t round_half_up(double x) {
    return static_cast<std::size_t>(x + 0.5);
}

}  // namespace eulaflag
