#pragma once

#include <cstddef>
#include <filesystem>
#include <string>
#include <string_view>
#include <unordered_map>
#include <unordered_set>
#include <vector>

#include "eulaflag/errors.hpp"

namespace eulaflag {

using TokenList = std::vector<std::string>;

struct Sentence {
    std::size_t index{0};
    std::string text;
};

using SentenceList = std::vector<Sentence>;

/// Splits text into sentences on [.?!] runs followed by whitespace and an
/// uppercase letter (or end of text). A fixed abbreviation list ("e.g.",
/// "i.e.", "etc.", "Sec.", "Inc.", "Ltd.", "Corp.", "No.") never ends a
/// sentence. Sentence texts are verbatim substrings, trimmed at both ends.
SentenceList segment_sentences(std::string_view text);

class StopwordSet {
  public:
    StopwordSet() = default;
    explicit StopwordSet(std::vector<std::string> words);

    /// The built-in English list (~150 pronouns, determiners, prepositions,
    /// auxiliaries, conjunctions).
    static const StopwordSet& builtin();
    /// One token per line, lowercased on load; '#' lines ignored.
    static StopwordSet from_file(const std::filesystem::path& path);

    bool contains(std::string_view token) const;
    std::vector<std::string> sorted_words() const;
    std::size_t size() const { return words_.size(); }

  private:
    std::unordered_set<std::string> words_;
};

/// Naive suffix-stripping stemmer (opt-in): ies->y, then ing/ed/ly/es/s.
std::string stem_token(const std::string& token);

/// Lowercases, splits on any non-alphanumeric byte, removes stopwords,
/// preserves order. Single-character tokens are kept. Optional stemming runs
/// after the stopword filter.
TokenList tokenize(std::string_view text, const StopwordSet& stopwords, bool stem = false);

struct Vocabulary {
    std::vector<std::string> terms;                      // sorted lexicographically
    std::unordered_map<std::string, int> term_index;     // term -> column
    std::vector<int> document_frequency;                 // per column
    std::size_t fitted_documents{0};

    int index_of(std::string_view term) const;
    std::size_t size() const { return terms.size(); }
};

/// Builds a vocabulary over tokenized documents; document_frequency counts
/// distinct documents containing each term. Throws EmptyInputError when docs
/// is empty (a list of empty documents is fine and yields an empty
/// vocabulary).
Vocabulary build_vocabulary(const std::vector<TokenList>& docs);

struct SparseVector {
    struct Entry {
        int column{0};
        double weight{0.0};
    };
    std::vector<Entry> entries;  // sorted by column, columns unique

    double dot(const SparseVector& other) const;
    double squared_norm() const;
    double norm() const;
    int max_column() const;  // -1 when empty
    bool empty() const { return entries.empty(); }

    /// Scales all weights so the vector has unit L2 norm; no-op on zero.
    void normalize();
};

/// Smoothed inverse document frequency: ln((1+N)/(1+df)) + 1.
double smoothed_idf(std::size_t df, std::size_t n_docs);

/// BM25 idf with a floor at zero: max(0, ln((N-df+0.5)/(df+0.5))).
double bm25_idf(std::size_t df, std::size_t n_docs);

/// Raw term counts over the vocabulary; out-of-vocabulary tokens ignored.
SparseVector count_vectorize(const TokenList& doc, const Vocabulary& vocab);

/// tf * smoothed_idf weights; tf is the raw in-document count.
SparseVector tfidf_vectorize(const TokenList& doc, const Vocabulary& vocab, std::size_t n_docs);

/// 1 for every vocabulary term present in the document.
SparseVector binary_vectorize(const TokenList& doc, const Vocabulary& vocab);

/// u.v / (|u||v|); 0 when either norm is 0.
double cosine_similarity(const SparseVector& u, const SparseVector& v);

struct Bm25Params {
    double k1{1.2};
    double b{0.75};
    double avgdl{0.0};

    /// Fits avgdl as the mean token count over the given documents.
    static Bm25Params fit(const std::vector<TokenList>& docs, double k1 = 1.2, double b = 0.75);
};

/// Okapi BM25 score of candidate_doc against the distinct terms of
/// query_doc. Document frequencies come from the vocabulary; idf is floored
/// at zero, so the score is never negative.
double bm25_score(const TokenList& query_doc, const TokenList& candidate_doc,
                  const Vocabulary& vocab, const Bm25Params& params, std::size_t n_docs);

}  // namespace eulaflag
