#include "eulaflag/summarize.hpp"

#include "eulaflag/corpus.hpp"
#include "eulaflag/hash.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>
#include <random>
#include <unordered_set>

namespace eulaflag {

const char* algorithm_name(SummaryAlgorithm a) {
    switch (a) {
        case SummaryAlgorithm::TextRank: return "textrank";
        case SummaryAlgorithm::LexRank: return "lexrank";
        case SummaryAlgorithm::Bm25TextRank: return "bm25";
        case SummaryAlgorithm::Lsa: return "lsa";
        case SummaryAlgorithm::RandomIndexing: return "ri";
    }
    return "textrank";
}

SummaryAlgorithm algorithm_from_name(const std::string& name) {
    if (name == "textrank") return SummaryAlgorithm::TextRank;
    if (name == "lexrank") return SummaryAlgorithm::LexRank;
    if (name == "bm25") return SummaryAlgorithm::Bm25TextRank;
    if (name == "lsa") return SummaryAlgorithm::Lsa;
    if (name == "ri") return SummaryAlgorithm::RandomIndexing;
    throw ConfigError("unknown summarizer \"" + name +
                      "\" (expected textrank|lexrank|bm25|lsa|ri)");
}

SimilarityGraph SimilarityGraph::from_weights(Eigen::MatrixXd w) {
    if (w.rows() != w.cols()) throw DimensionError("similarity graph must be square");
    for (Eigen::Index i = 0; i < w.rows(); ++i) {
        if (w(i, i) != 0.0) throw DimensionError("similarity graph diagonal must be zero");
        for (Eigen::Index j = 0; j < w.cols(); ++j) {
            if (!std::isfinite(w(i, j)) || w(i, j) < 0.0) {
                throw DimensionError("similarity weights must be finite and non-negative");
            }
            if (w(i, j) != w(j, i)) throw DimensionError("similarity graph must be symmetric");
        }
    }
    SimilarityGraph g;
    g.weights = std::move(w);
    return g;
}

std::size_t summary_target_size(std::size_t source_count, const SummaryConfig& config) {
    if (source_count == 0) return 0;
    const std::size_t wanted =
        std::max(config.min_sentences, round_half_up(config.ratio * static_cast<double>(source_count)));
    return std::min(wanted, source_count);
}

namespace {

std::vector<TokenList> tokenize_sentences(const SentenceList& sentences,
                                          const StopwordSet& stopwords, bool stem) {
    std::vector<TokenList> out;
    out.reserve(sentences.size());
    for (const auto& s : sentences) out.push_back(tokenize(s.text, stopwords, stem));
    return out;
}

/// Top-k by score with ties to the smaller index, re-sorted into original
/// document order.
Summary select_top(const SentenceList& sentences, const Eigen::VectorXd& scores,
                   const SummaryConfig& config) {
    const std::size_t n = sentences.size();
    const std::size_t target = summary_target_size(n, config);

    std::vector<std::size_t> order(n);
    std::iota(order.begin(), order.end(), 0);
    std::stable_sort(order.begin(), order.end(), [&](std::size_t a, std::size_t b) {
        return scores(static_cast<Eigen::Index>(a)) > scores(static_cast<Eigen::Index>(b));
    });
    order.resize(target);
    std::sort(order.begin(), order.end());

    Summary summary;
    summary.algorithm = config.algorithm;
    summary.ratio = config.ratio;
    summary.source_sentence_count = n;
    for (const std::size_t idx : order) {
        summary.selected.push_back(
            {idx, sentences[idx].text, scores(static_cast<Eigen::Index>(idx))});
    }
    return summary;
}

Summary rank_and_select(const SentenceList& sentences, const SimilarityGraph& graph,
                        const SummaryConfig& config) {
    const auto result =
        power_iteration(graph.weights, config.damping, config.tolerance, config.max_iterations);
    return select_top(sentences, result.scores, config);
}

void require_nonempty(const SentenceList& sentences) {
    if (sentences.empty()) throw EmptyDocumentError();
}

}  // namespace

Summary textrank_summarize(const SentenceList& sentences, const SummaryConfig& config,
                           const StopwordSet& stopwords) {
    require_nonempty(sentences);
    const auto tokens = tokenize_sentences(sentences, stopwords, config.stem);
    const auto n = static_cast<Eigen::Index>(sentences.size());

    std::vector<std::unordered_set<std::string>> distinct(tokens.size());
    for (std::size_t i = 0; i < tokens.size(); ++i) {
        distinct[i].insert(tokens[i].begin(), tokens[i].end());
    }

    Eigen::MatrixXd w = Eigen::MatrixXd::Zero(n, n);
    for (Eigen::Index i = 0; i < n; ++i) {
        for (Eigen::Index j = i + 1; j < n; ++j) {
            const auto& small = distinct[i].size() <= distinct[j].size() ? distinct[i] : distinct[j];
            const auto& large = distinct[i].size() <= distinct[j].size() ? distinct[j] : distinct[i];
            std::size_t overlap = 0;
            for (const auto& t : small) overlap += large.count(t);
            if (overlap == 0) continue;
            const double len_i = static_cast<double>(tokens[i].size());
            const double len_j = static_cast<double>(tokens[j].size());
            const double denom = std::max(std::log(len_i) + std::log(len_j), 1e-6);
            w(i, j) = w(j, i) = static_cast<double>(overlap) / denom;
        }
    }
    return rank_and_select(sentences, SimilarityGraph::from_weights(std::move(w)), config);
}

Summary lexrank_summarize(const SentenceList& sentences, const SummaryConfig& config,
                          const StopwordSet& stopwords) {
    require_nonempty(sentences);
    const auto tokens = tokenize_sentences(sentences, stopwords, config.stem);
    const auto vocab = build_vocabulary(tokens);
    const std::size_t n_docs = sentences.size();
    const auto n = static_cast<Eigen::Index>(n_docs);

    std::vector<SparseVector> vectors;
    vectors.reserve(tokens.size());
    for (const auto& t : tokens) vectors.push_back(tfidf_vectorize(t, vocab, n_docs));

    Eigen::MatrixXd w = Eigen::MatrixXd::Zero(n, n);
    for (Eigen::Index i = 0; i < n; ++i) {
        for (Eigen::Index j = i + 1; j < n; ++j) {
            const double sim = cosine_similarity(vectors[i], vectors[j]);
            if (sim < config.lexrank_threshold) continue;
            const double edge = config.lexrank_continuous ? sim : 1.0;
            w(i, j) = w(j, i) = edge;
        }
    }
    return rank_and_select(sentences, SimilarityGraph::from_weights(std::move(w)), config);
}

Summary bm25_textrank_summarize(const SentenceList& sentences, const SummaryConfig& config,
                                const StopwordSet& stopwords, const Bm25Params& params) {
    require_nonempty(sentences);
    const auto tokens = tokenize_sentences(sentences, stopwords, config.stem);
    const auto vocab = build_vocabulary(tokens);
    const std::size_t n_docs = sentences.size();
    const auto n = static_cast<Eigen::Index>(n_docs);

    // BM25 is asymmetric; symmetrize by averaging and floor at zero.
    Eigen::MatrixXd w = Eigen::MatrixXd::Zero(n, n);
    for (Eigen::Index i = 0; i < n; ++i) {
        for (Eigen::Index j = i + 1; j < n; ++j) {
            const auto si = static_cast<std::size_t>(i);
            const auto sj = static_cast<std::size_t>(j);
            const double ij = bm25_score(tokens[si], tokens[sj], vocab, params, n_docs);
            const double ji = bm25_score(tokens[sj], tokens[si], vocab, params, n_docs);
            w(i, j) = w(j, i) = std::max(0.0, 0.5 * (ij + ji));
        }
    }
    return rank_and_select(sentences, SimilarityGraph::from_weights(std::move(w)), config);
}

Summary lsa_summarize(const SentenceList& sentences, const SummaryConfig& config,
                      const StopwordSet& stopwords) {
    require_nonempty(sentences);
    const auto tokens = tokenize_sentences(sentences, stopwords, config.stem);
    const auto vocab = build_vocabulary(tokens);
    const std::size_t n = sentences.size();
    const std::size_t target = summary_target_size(n, config);

    Eigen::VectorXd scores = Eigen::VectorXd::Zero(static_cast<Eigen::Index>(n));
    if (vocab.size() == 0) {
        // Degenerate document (everything stopworded): uniform scores, the
        // positional tie-break picks the earliest sentences.
        return select_top(sentences, scores, config);
    }

    Eigen::MatrixXd a = Eigen::MatrixXd::Zero(static_cast<Eigen::Index>(vocab.size()),
                                              static_cast<Eigen::Index>(n));
    for (std::size_t j = 0; j < n; ++j) {
        for (const auto& e : tfidf_vectorize(tokens[j], vocab, n).entries) {
            a(e.column, static_cast<Eigen::Index>(j)) = e.weight;
        }
    }

    const auto k = static_cast<Eigen::Index>(
        std::min<std::size_t>(target, std::min(vocab.size(), n)));
    const auto svd = truncated_svd(a, k);

    Summary summary;
    summary.algorithm = config.algorithm;
    summary.ratio = config.ratio;
    summary.source_sentence_count = n;

    std::vector<std::size_t> chosen;
    std::vector<bool> used(n, false);
    if (config.lsa_length_weighted) {
        // Steinberger: sentence score = sqrt(sum_c (v_sc * sigma_c)^2).
        for (std::size_t s = 0; s < n; ++s) {
            double sum = 0.0;
            for (Eigen::Index c = 0; c < k; ++c) {
                const double term =
                    svd.v(static_cast<Eigen::Index>(s), c) * svd.singular_values(c);
                sum += term * term;
            }
            scores(static_cast<Eigen::Index>(s)) = std::sqrt(sum);
        }
        return select_top(sentences, scores, config);
    }

    // Gong & Liu: one sentence per concept, cycling when the target exceeds
    // the concept count.
    while (chosen.size() < target) {
        const std::size_t before = chosen.size();
        for (Eigen::Index c = 0; c < k && chosen.size() < target; ++c) {
            double best = -1.0;
            std::size_t best_idx = n;
            for (std::size_t s = 0; s < n; ++s) {
                if (used[s]) continue;
                const double value = std::abs(svd.v(static_cast<Eigen::Index>(s), c));
                if (value > best) {
                    best = value;
                    best_idx = s;
                }
            }
            if (best_idx == n) break;
            used[best_idx] = true;
            chosen.push_back(best_idx);
            scores(static_cast<Eigen::Index>(best_idx)) = best;
        }
        if (chosen.size() == before) break;  // no selectable sentence left
    }
    std::sort(chosen.begin(), chosen.end());
    for (const std::size_t idx : chosen) {
        summary.selected.push_back(
            {idx, sentences[idx].text, scores(static_cast<Eigen::Index>(idx))});
    }
    return summary;
}

void IndexVector::add_to(Eigen::VectorXd& accum) const {
    for (const int p : positive) accum(p) += 1.0;
    for (const int p : negative) accum(p) -= 1.0;
}

std::unordered_map<std::string, IndexVector> make_index_vectors(const Vocabulary& vocab,
                                                                const RandomIndexConfig& config) {
    if (config.nonzeros % 2 != 0) throw ConfigError("random index nonzeros must be even");
    if (config.nonzeros >= config.dimension) {
        throw ConfigError("random index nonzeros must be < dimension");
    }
    if (vocab.size() == 0) throw EmptyInputError("make_index_vectors: empty vocabulary");

    std::unordered_map<std::string, IndexVector> vectors;
    vectors.reserve(vocab.size());
    for (const auto& term : vocab.terms) {
        // Seeded per token so the vector is independent of vocabulary order.
        std::mt19937_64 rng(config.seed ^ fnv1a_string(term));
        std::vector<int> positions;
        positions.reserve(static_cast<std::size_t>(config.nonzeros));
        std::unordered_set<int> taken;
        while (static_cast<int>(positions.size()) < config.nonzeros) {
            const int p = static_cast<int>(rng() % static_cast<std::uint64_t>(config.dimension));
            if (taken.insert(p).second) positions.push_back(p);
        }
        IndexVector iv;
        const int half = config.nonzeros / 2;
        iv.positive.assign(positions.begin(), positions.begin() + half);
        iv.negative.assign(positions.begin() + half, positions.end());
        vectors.emplace(term, std::move(iv));
    }
    return vectors;
}

Summary random_indexing_summarize(const SentenceList& sentences, const SummaryConfig& config,
                                  const StopwordSet& stopwords) {
    require_nonempty(sentences);
    const auto tokens = tokenize_sentences(sentences, stopwords, config.stem);
    const auto vocab = build_vocabulary(tokens);
    const std::size_t n = sentences.size();
    const auto dim = static_cast<Eigen::Index>(config.random_index.dimension);

    Eigen::VectorXd scores = Eigen::VectorXd::Zero(static_cast<Eigen::Index>(n));
    if (vocab.size() == 0) {
        return select_top(sentences, scores, config);
    }
    const auto index_vectors = make_index_vectors(vocab, config.random_index);

    std::vector<Eigen::VectorXd> sentence_vectors(n, Eigen::VectorXd::Zero(dim));
    Eigen::VectorXd document_vector = Eigen::VectorXd::Zero(dim);
    for (std::size_t s = 0; s < n; ++s) {
        for (const auto& token : tokens[s]) {
            index_vectors.at(token).add_to(sentence_vectors[s]);
        }
        document_vector += sentence_vectors[s];
    }

    const double doc_norm = document_vector.norm();
    for (std::size_t s = 0; s < n; ++s) {
        const double sent_norm = sentence_vectors[s].norm();
        scores(static_cast<Eigen::Index>(s)) =
            (doc_norm == 0.0 || sent_norm == 0.0)
                ? 0.0
                : sentence_vectors[s].dot(document_vector) / (sent_norm * doc_norm);
    }
    return select_top(sentences, scores, config);
}

Summary summarize(const std::string& text, const SummaryConfig& config,
                  const StopwordSet& stopwords) {
    const SentenceList sentences = segment_sentences(text);
    if (sentences.empty()) throw EmptyDocumentError();
    switch (config.algorithm) {
        case SummaryAlgorithm::TextRank:
            return textrank_summarize(sentences, config, stopwords);
        case SummaryAlgorithm::LexRank:
            return lexrank_summarize(sentences, config, stopwords);
        case SummaryAlgorithm::Bm25TextRank: {
            const auto tokens = tokenize_sentences(sentences, stopwords, config.stem);
            return bm25_textrank_summarize(sentences, config, stopwords, Bm25Params::fit(tokens));
        }
        case SummaryAlgorithm::Lsa:
            return lsa_summarize(sentences, config, stopwords);
        case SummaryAlgorithm::RandomIndexing:
            return random_indexing_summarize(sentences, config, stopwords);
    }
    throw ConfigError("unknown summarizer algorithm");
}

}  // namespace eulaflag
