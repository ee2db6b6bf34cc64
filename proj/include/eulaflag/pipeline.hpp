#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include "eulaflag/classify.hpp"
#include "eulaflag/corpus.hpp"
#include "eulaflag/hash.hpp"
#include "eulaflag/textproc.hpp"

namespace eulaflag {

/// One document rendered in every feature form a member might consume, tied
/// to the vocabulary it was built from.
struct PreparedFeatures {
    std::uint64_t vocab_fingerprint{0};
    SparseVector counts;
    SparseVector binary;
    SparseVector tfidf;  // L2-normalized

    const SparseVector& for_kind(FeatureKind kind) const;
};

/// Per-kind feature matrices over one document set; labels are shared.
struct FeatureSet {
    FeatureMatrix counts;
    FeatureMatrix binary;
    FeatureMatrix tfidf;

    const FeatureMatrix& for_kind(FeatureKind kind) const;
};

/// Tokenizer settings + fitted vocabulary; the single object that binds a
/// trained model to its feature space. TF-IDF rows are L2-normalized here so
/// the spec'd learning-rate defaults are stable regardless of document
/// length.
class FeaturePipeline {
  public:
    FeaturePipeline() = default;

    static FeaturePipeline fit(const Corpus& train, StopwordSet stopwords, bool stem = false);
    /// Rebuilds a pipeline from persisted state (model bundle loading).
    static FeaturePipeline restore(StopwordSet stopwords, bool stem, Vocabulary vocab,
                                   std::size_t n_docs);

    PreparedFeatures prepare(const std::string& text) const;
    FeatureSet prepare_set(const Corpus& corpus) const;

    const Vocabulary& vocabulary() const { return vocab_; }
    const StopwordSet& stopwords() const { return stopwords_; }
    bool stem() const { return stem_; }
    std::size_t n_docs() const { return n_docs_; }
    std::uint64_t fingerprint() const { return fingerprint_; }

  private:
    StopwordSet stopwords_;
    bool stem_{false};
    Vocabulary vocab_;
    std::size_t n_docs_{0};
    std::uint64_t fingerprint_{0};

    void compute_fingerprint();
};

}  // namespace eulaflag
