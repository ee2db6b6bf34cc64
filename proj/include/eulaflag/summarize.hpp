#pragma once

#include <Eigen/Dense>
#include <cstdint>
#include <string>
#include <unordered_map>
#include <vector>

#include "eulaflag/kernels.hpp"
#include "eulaflag/textproc.hpp"

namespace eulaflag {

enum class SummaryAlgorithm { TextRank, LexRank, Bm25TextRank, Lsa, RandomIndexing };

const char* algorithm_name(SummaryAlgorithm a);
/// Parses the CLI spelling {textrank|lexrank|bm25|lsa|ri}; throws ConfigError.
SummaryAlgorithm algorithm_from_name(const std::string& name);

/// Symmetric, zero-diagonal, non-negative sentence similarity matrix.
struct SimilarityGraph {
    Eigen::MatrixXd weights;

    static SimilarityGraph from_weights(Eigen::MatrixXd w);
    Eigen::Index size() const { return weights.rows(); }
};

struct RandomIndexConfig {
    int dimension{512};
    int nonzeros{8};  // must be even and < dimension; half +1, half -1
    std::uint64_t seed{0};
};

struct SummaryConfig {
    double ratio{0.2};
    std::size_t min_sentences{1};
    SummaryAlgorithm algorithm{SummaryAlgorithm::TextRank};
    double lexrank_threshold{0.1};
    bool lexrank_continuous{false};  // keep raw cosine weights instead of binarizing
    double damping{0.85};
    int max_iterations{100};
    double tolerance{1e-6};
    bool lsa_length_weighted{false};  // Steinberger-style selection instead of Gong & Liu
    bool stem{false};
    RandomIndexConfig random_index{};
};

struct SummarySentence {
    std::size_t index{0};
    std::string text;
    double score{0.0};
};

struct Summary {
    SummaryAlgorithm algorithm{SummaryAlgorithm::TextRank};
    double ratio{0.2};
    std::size_t source_sentence_count{0};
    std::vector<SummarySentence> selected;  // indices strictly increasing
};

/// min(n, max(min_sentences, round_half_up(ratio * n))).
std::size_t summary_target_size(std::size_t source_count, const SummaryConfig& config);

Summary textrank_summarize(const SentenceList& sentences, const SummaryConfig& config,
                           const StopwordSet& stopwords);
Summary lexrank_summarize(const SentenceList& sentences, const SummaryConfig& config,
                          const StopwordSet& stopwords);
Summary bm25_textrank_summarize(const SentenceList& sentences, const SummaryConfig& config,
                                const StopwordSet& stopwords, const Bm25Params& params);
Summary lsa_summarize(const SentenceList& sentences, const SummaryConfig& config,
                      const StopwordSet& stopwords);
Summary random_indexing_summarize(const SentenceList& sentences, const SummaryConfig& config,
                                  const StopwordSet& stopwords);

/// Sparse ternary index vector: nonzeros/2 positions at +1, nonzeros/2 at -1.
struct IndexVector {
    std::vector<int> positive;
    std::vector<int> negative;

    void add_to(Eigen::VectorXd& accum) const;
};

/// Deterministic per-token index vectors; a token's vector depends only on
/// the token string and config.seed, not on vocabulary order.
std::unordered_map<std::string, IndexVector> make_index_vectors(const Vocabulary& vocab,
                                                                const RandomIndexConfig& config);

/// Segments the document and dispatches to the configured algorithm. BM25
/// parameters and per-sentence vocabularies are fitted on the document's own
/// sentences.
Summary summarize(const std::string& text, const SummaryConfig& config,
                  const StopwordSet& stopwords);

}  // namespace eulaflag
