#include "eulaflag/pipeline.hpp"

#include <cstdio>

namespace eulaflag {

std::string hex_fingerprint(std::uint64_t value) {
    char buf[17];
    std::snprintf(buf, sizeof(buf), "%016llx", static_cast<unsigned long long>(value));
    return buf;
}

const SparseVector& PreparedFeatures::for_kind(FeatureKind kind) const {
    switch (kind) {
        case FeatureKind::Counts: return counts;
        case FeatureKind::Binary: return binary;
        case FeatureKind::Tfidf: return tfidf;
    }
    return tfidf;
}

const FeatureMatrix& FeatureSet::for_kind(FeatureKind kind) const {
    switch (kind) {
        case FeatureKind::Counts: return counts;
        case FeatureKind::Binary: return binary;
        case FeatureKind::Tfidf: return tfidf;
    }
    return tfidf;
}

FeaturePipeline FeaturePipeline::fit(const Corpus& train, StopwordSet stopwords, bool stem) {
    FeaturePipeline pipeline;
    pipeline.stopwords_ = std::move(stopwords);
    pipeline.stem_ = stem;

    std::vector<TokenList> docs;
    docs.reserve(train.size());
    for (const auto& doc : train.documents) {
        docs.push_back(tokenize(doc.text, pipeline.stopwords_, stem));
    }
    pipeline.vocab_ = build_vocabulary(docs);
    pipeline.n_docs_ = train.size();
    pipeline.compute_fingerprint();
    return pipeline;
}

FeaturePipeline FeaturePipeline::restore(StopwordSet stopwords, bool stem, Vocabulary vocab,
                                         std::size_t n_docs) {
    FeaturePipeline pipeline;
    pipeline.stopwords_ = std::move(stopwords);
    pipeline.stem_ = stem;
    pipeline.vocab_ = std::move(vocab);
    pipeline.n_docs_ = n_docs;
    pipeline.compute_fingerprint();
    return pipeline;
}

void FeaturePipeline::compute_fingerprint() {
    std::uint64_t h = kFnvOffset;
    h = fnv1a_string("eulaflag.pipeline.v1", h);
    for (const auto& term : vocab_.terms) {
        h = fnv1a_string(term, h);
        h = fnv1a("\0", 1, h);
    }
    for (const int df : vocab_.document_frequency) {
        h = fnv1a_u64(static_cast<std::uint64_t>(df), h);
    }
    h = fnv1a_u64(n_docs_, h);
    h = fnv1a_u64(stem_ ? 1 : 0, h);
    for (const auto& word : stopwords_.sorted_words()) {
        h = fnv1a_string(word, h);
        h = fnv1a("\0", 1, h);
    }
    fingerprint_ = h;
}

PreparedFeatures FeaturePipeline::prepare(const std::string& text) const {
    const TokenList tokens = tokenize(text, stopwords_, stem_);
    PreparedFeatures features;
    features.vocab_fingerprint = fingerprint_;
    features.counts = count_vectorize(tokens, vocab_);
    features.binary = binary_vectorize(tokens, vocab_);
    features.tfidf = tfidf_vectorize(tokens, vocab_, n_docs_);
    features.tfidf.normalize();
    return features;
}

FeatureSet FeaturePipeline::prepare_set(const Corpus& corpus) const {
    FeatureSet set;
    const auto n_features = static_cast<int>(vocab_.size());
    for (auto* matrix : {&set.counts, &set.binary, &set.tfidf}) {
        matrix->n_features = n_features;
        matrix->vocab_fingerprint = fingerprint_;
        matrix->rows.reserve(corpus.size());
        matrix->labels.reserve(corpus.size());
    }
    for (const auto& doc : corpus.documents) {
        PreparedFeatures features = prepare(doc.text);
        const int y = label_to_sign(doc.label);
        set.counts.rows.push_back(std::move(features.counts));
        set.counts.labels.push_back(y);
        set.binary.rows.push_back(std::move(features.binary));
        set.binary.labels.push_back(y);
        set.tfidf.rows.push_back(std::move(features.tfidf));
        set.tfidf.labels.push_back(y);
    }
    return set;
}

}  // namespace eulaflag
