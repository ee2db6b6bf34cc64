#include "eulaflag/textproc.hpp"

#include <algorithm>
#include <array>
#include <cmath>
#include <map>
#include <unordered_map>

namespace eulaflag {

namespace {

constexpr std::array<std::string_view, 8> kAbbreviations = {
    "e.g.", "i.e.", "etc.", "Sec.", "Inc.", "Ltd.", "Corp.", "No.",
};

bool is_terminal(char c) { return c == '.' || c == '?' || c == '!'; }

bool is_ascii_space(char c) {
    return c == ' ' || c == '\t' || c == '\n' || c == '\r' || c == '\v' || c == '\f';
}

bool is_upper_ascii(char c) { return c >= 'A' && c <= 'Z'; }

bool is_alnum_ascii(char c) {
    return (c >= 'a' && c <= 'z') || (c >= 'A' && c <= 'Z') || (c >= '0' && c <= '9');
}

std::string_view trim(std::string_view s) {
    std::size_t begin = 0;
    std::size_t end = s.size();
    while (begin < end && is_ascii_space(s[begin])) ++begin;
    while (end > begin && is_ascii_space(s[end - 1])) --end;
    return s.substr(begin, end - begin);
}

/// The word ending at (and including) position `dot` of a '.' character:
/// the maximal run of letters and dots immediately before it.
std::string_view word_ending_at(std::string_view text, std::size_t dot) {
    std::size_t begin = dot;
    while (begin > 0) {
        const char c = text[begin - 1];
        if ((c >= 'a' && c <= 'z') || (c >= 'A' && c <= 'Z') || c == '.') {
            --begin;
        } else {
            break;
        }
    }
    return text.substr(begin, dot - begin + 1);
}

bool is_abbreviation(std::string_view text, std::size_t dot) {
    const std::string_view word = word_ending_at(text, dot);
    return std::find(kAbbreviations.begin(), kAbbreviations.end(), word) != kAbbreviations.end();
}

}  // namespace

SentenceList segment_sentences(std::string_view text) {
    SentenceList sentences;
    std::size_t start = 0;

    auto flush = [&](std::size_t end) {
        const std::string_view raw = trim(text.substr(start, end - start));
        if (!raw.empty()) {
            sentences.push_back({sentences.size(), std::string(raw)});
        }
        start = end;
    };

    std::size_t i = 0;
    const std::size_t n = text.size();
    while (i < n) {
        if (!is_terminal(text[i])) {
            ++i;
            continue;
        }
        const std::size_t run_start = i;
        while (i < n && is_terminal(text[i])) ++i;
        const bool single_period = (i - run_start == 1) && text[run_start] == '.';
        if (single_period && is_abbreviation(text, run_start)) continue;

        if (i >= n) {
            flush(i);
            break;
        }
        if (!is_ascii_space(text[i])) continue;
        std::size_t next = i;
        while (next < n && is_ascii_space(text[next])) ++next;
        if (next >= n || is_upper_ascii(text[next])) {
            flush(i);
        }
    }
    flush(n);
    return sentences;
}

std::string stem_token(const std::string& token) {
    auto ends_with = [&](std::string_view suffix) {
        return token.size() >= suffix.size() &&
               token.compare(token.size() - suffix.size(), suffix.size(), suffix) == 0;
    };
    if (ends_with("ies") && token.size() > 4) {
        return token.substr(0, token.size() - 3) + "y";
    }
    for (const std::string_view suffix : {"ing", "ed", "ly", "es"}) {
        if (ends_with(suffix) && token.size() >= suffix.size() + 3) {
            return token.substr(0, token.size() - suffix.size());
        }
    }
    if (ends_with("s") && !ends_with("ss") && !ends_with("us") && token.size() >= 4) {
        return token.substr(0, token.size() - 1);
    }
    return token;
}

TokenList tokenize(std::string_view text, const StopwordSet& stopwords, bool stem) {
    TokenList tokens;
    std::string current;
    auto flush = [&] {
        if (current.empty()) return;
        if (!stopwords.contains(current)) {
            tokens.push_back(stem ? stem_token(current) : current);
        }
        current.clear();
    };
    for (const char c : text) {
        if (is_alnum_ascii(c)) {
            current.push_back(c >= 'A' && c <= 'Z' ? static_cast<char>(c - 'A' + 'a') : c);
        } else {
            flush();
        }
    }
    flush();
    return tokens;
}

int Vocabulary::index_of(std::string_view term) const {
    const auto it = term_index.find(std::string(term));
    return it == term_index.end() ? -1 : it->second;
}

Vocabulary build_vocabulary(const std::vector<TokenList>& docs) {
    if (docs.empty()) throw EmptyInputError("build_vocabulary: no documents");
    std::map<std::string, int> df;  // ordered -> terms come out sorted
    for (const auto& doc : docs) {
        std::unordered_map<std::string, bool> seen;
        for (const auto& token : doc) {
            if (!seen[token]) {
                seen[token] = true;
                ++df[token];
            }
        }
    }
    Vocabulary vocab;
    vocab.fitted_documents = docs.size();
    vocab.terms.reserve(df.size());
    vocab.document_frequency.reserve(df.size());
    for (auto& [term, count] : df) {
        vocab.term_index.emplace(term, static_cast<int>(vocab.terms.size()));
        vocab.terms.push_back(term);
        vocab.document_frequency.push_back(count);
    }
    return vocab;
}

double SparseVector::dot(const SparseVector& other) const {
    double sum = 0.0;
    std::size_t i = 0;
    std::size_t j = 0;
    while (i < entries.size() && j < other.entries.size()) {
        if (entries[i].column < other.entries[j].column) {
            ++i;
        } else if (entries[i].column > other.entries[j].column) {
            ++j;
        } else {
            sum += entries[i].weight * other.entries[j].weight;
            ++i;
            ++j;
        }
    }
    return sum;
}

double SparseVector::squared_norm() const {
    double sum = 0.0;
    for (const auto& e : entries) sum += e.weight * e.weight;
    return sum;
}

double SparseVector::norm() const { return std::sqrt(squared_norm()); }

int SparseVector::max_column() const {
    return entries.empty() ? -1 : entries.back().column;
}

void SparseVector::normalize() {
    const double n = norm();
    if (n <= 0.0) return;
    for (auto& e : entries) e.weight /= n;
}

double smoothed_idf(std::size_t df, std::size_t n_docs) {
    return std::log((1.0 + static_cast<double>(n_docs)) / (1.0 + static_cast<double>(df))) + 1.0;
}

double bm25_idf(std::size_t df, std::size_t n_docs) {
    const double raw = std::log((static_cast<double>(n_docs) - static_cast<double>(df) + 0.5) /
                                (static_cast<double>(df) + 0.5));
    return std::max(0.0, raw);
}

namespace {

/// column -> raw count for in-vocabulary tokens, sorted by column.
std::vector<std::pair<int, int>> term_counts(const TokenList& doc, const Vocabulary& vocab) {
    std::map<int, int> counts;
    for (const auto& token : doc) {
        const int col = vocab.index_of(token);
        if (col >= 0) ++counts[col];
    }
    return {counts.begin(), counts.end()};
}

}  // namespace

SparseVector count_vectorize(const TokenList& doc, const Vocabulary& vocab) {
    SparseVector v;
    for (const auto& [col, count] : term_counts(doc, vocab)) {
        v.entries.push_back({col, static_cast<double>(count)});
    }
    return v;
}

SparseVector tfidf_vectorize(const TokenList& doc, const Vocabulary& vocab, std::size_t n_docs) {
    SparseVector v;
    for (const auto& [col, count] : term_counts(doc, vocab)) {
        const auto df = static_cast<std::size_t>(vocab.document_frequency[col]);
        v.entries.push_back({col, static_cast<double>(count) * smoothed_idf(df, n_docs)});
    }
    return v;
}

SparseVector binary_vectorize(const TokenList& doc, const Vocabulary& vocab) {
    SparseVector v;
    for (const auto& [col, count] : term_counts(doc, vocab)) {
        v.entries.push_back({col, 1.0});
    }
    return v;
}

double cosine_similarity(const SparseVector& u, const SparseVector& v) {
    const double nu = u.norm();
    const double nv = v.norm();
    if (nu == 0.0 || nv == 0.0) return 0.0;
    return u.dot(v) / (nu * nv);
}

Bm25Params Bm25Params::fit(const std::vector<TokenList>& docs, double k1, double b) {
    Bm25Params params;
    params.k1 = k1;
    params.b = b;
    std::size_t total = 0;
    for (const auto& doc : docs) total += doc.size();
    params.avgdl = docs.empty() ? 0.0 : static_cast<double>(total) / static_cast<double>(docs.size());
    return params;
}

double bm25_score(const TokenList& query_doc, const TokenList& candidate_doc,
                  const Vocabulary& vocab, const Bm25Params& params, std::size_t n_docs) {
    if (params.avgdl <= 0.0) return 0.0;
    std::unordered_map<int, int> cand_counts;
    for (const auto& token : candidate_doc) {
        const int col = vocab.index_of(token);
        if (col >= 0) ++cand_counts[col];
    }
    const double dl = static_cast<double>(candidate_doc.size());
    const double length_norm = 1.0 - params.b + params.b * dl / params.avgdl;

    double score = 0.0;
    std::unordered_map<int, bool> seen;
    for (const auto& token : query_doc) {
        const int col = vocab.index_of(token);
        if (col < 0 || seen[col]) continue;
        seen[col] = true;
        const auto it = cand_counts.find(col);
        if (it == cand_counts.end()) continue;
        const double tf = static_cast<double>(it->second);
        const auto df = static_cast<std::size_t>(vocab.document_frequency[col]);
        score += bm25_idf(df, n_docs) * tf * (params.k1 + 1.0) / (tf + params.k1 * length_norm);
    }
    return score;
}

}  // namespace eulaflag
