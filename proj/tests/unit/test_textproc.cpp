#include <doctest.h>

#include <cmath>
#include <fstream>
#include <random>

#include "eulaflag/textproc.hpp"

using namespace eulaflag;

namespace {

const StopwordSet kNoStopwords{};

std::string join(const TokenList& tokens) {
    std::string out;
    for (const auto& t : tokens) {
        if (!out.empty()) out.push_back(' ');
        out += t;
    }
    return out;
}

}  // namespace

TEST_CASE("segment_sentences splits on terminal punctuation") {
    const auto sentences = segment_sentences("It works. Does it? Yes!");
    REQUIRE(sentences.size() == 3);
    CHECK(sentences[0].text == "It works.");
    CHECK(sentences[1].text == "Does it?");
    CHECK(sentences[2].text == "Yes!");
    CHECK(sentences[0].index == 0);
    CHECK(sentences[1].index == 1);
    CHECK(sentences[2].index == 2);
}

TEST_CASE("segment_sentences on empty input") {
    CHECK(segment_sentences("").empty());
    CHECK(segment_sentences("   \n\t ").empty());
}

TEST_CASE("segment_sentences honours the abbreviation list") {
    const auto sentences = segment_sentences("See Sec. 3 for terms. You agree.");
    REQUIRE(sentences.size() == 2);
    CHECK(sentences[0].text == "See Sec. 3 for terms.");
    CHECK(sentences[1].text == "You agree.");

    const auto inc = segment_sentences("Apple Inc. May collect data. Accept now.");
    REQUIRE(inc.size() == 2);
    CHECK(inc[0].text == "Apple Inc. May collect data.");
}

TEST_CASE("segment_sentences requires an uppercase continuation") {
    const auto sentences = segment_sentences("version 2.0 applies. the rest is unchanged");
    REQUIRE(sentences.size() == 1);
}

TEST_CASE("segment_sentences never exceeds terminal marks plus one") {
    std::mt19937_64 rng(7);
    const std::string alphabet = "abcZ .?!\n";
    for (int trial = 0; trial < 200; ++trial) {
        std::string text;
        const auto len = static_cast<std::size_t>(rng() % 60);
        for (std::size_t i = 0; i < len; ++i) {
            text.push_back(alphabet[static_cast<std::size_t>(rng() % alphabet.size())]);
        }
        std::size_t terminals = 0;
        for (const char c : text) {
            if (c == '.' || c == '?' || c == '!') ++terminals;
        }
        const auto sentences = segment_sentences(text);
        CHECK(sentences.size() <= terminals + 1);
        for (std::size_t i = 0; i < sentences.size(); ++i) {
            CHECK(sentences[i].index == i);
            CHECK_FALSE(sentences[i].text.empty());
        }
    }
}

TEST_CASE("tokenize lowercases and removes stopwords") {
    const StopwordSet stopwords(std::vector<std::string>{"the", "shall"});
    CHECK(tokenize("The Licensee SHALL pay.", stopwords) ==
          TokenList{"licensee", "pay"});
    CHECK(tokenize("", stopwords).empty());
}

TEST_CASE("tokenize treats every non-alphanumeric byte as a separator") {
    CHECK(tokenize("third-party software, web links", kNoStopwords) ==
          TokenList{"third", "party", "software", "web", "links"});
    CHECK(tokenize("(a) clause 1.2", kNoStopwords) == TokenList{"a", "clause", "1", "2"});
}

TEST_CASE("tokenize is idempotent") {
    std::mt19937_64 rng(11);
    const std::string alphabet = "abC1 ,.-!";
    for (int trial = 0; trial < 100; ++trial) {
        std::string text;
        const auto len = static_cast<std::size_t>(rng() % 40);
        for (std::size_t i = 0; i < len; ++i) {
            text.push_back(alphabet[static_cast<std::size_t>(rng() % alphabet.size())]);
        }
        const auto once = tokenize(text, StopwordSet::builtin());
        const auto twice = tokenize(join(once), StopwordSet::builtin());
        CHECK(once == twice);
    }
}

TEST_CASE("stemmer strips common suffixes when enabled") {
    CHECK(stem_token("tracking") == "track");
    CHECK(stem_token("parties") == "party");
    CHECK(stem_token("linked") == "link");
    CHECK(stem_token("links") == "link");
    CHECK(stem_token("less") == "less");
    CHECK(tokenize("tracking links", kNoStopwords, true) == TokenList{"track", "link"});
}

TEST_CASE("build_vocabulary counts document frequency") {
    const auto vocab = build_vocabulary({{"a", "b"}, {"a", "c"}});
    CHECK(vocab.terms == std::vector<std::string>{"a", "b", "c"});
    CHECK(vocab.document_frequency == std::vector<int>{2, 1, 1});
    CHECK(vocab.index_of("b") == 1);
    CHECK(vocab.index_of("zz") == -1);
}

TEST_CASE("build_vocabulary accepts all-stopworded documents") {
    const auto vocab = build_vocabulary({{}});
    CHECK(vocab.size() == 0);
    CHECK_THROWS_AS(build_vocabulary({}), EmptyInputError);
}

TEST_CASE("tfidf matches the smoothed idf formula") {
    const auto vocab = build_vocabulary({{"a", "b"}, {"a", "c"}});
    const auto v = tfidf_vectorize({"a", "b"}, vocab, 2);
    REQUIRE(v.entries.size() == 2);
    // df(a) = 2 over N = 2: idf collapses to 1, weight = raw count.
    CHECK(v.entries[0].column == 0);
    CHECK(v.entries[0].weight == doctest::Approx(1.0).epsilon(1e-12));
    // df(b) = 1: weight = ln(3/2) + 1.
    CHECK(v.entries[1].column == 1);
    CHECK(v.entries[1].weight == doctest::Approx(std::log(1.5) + 1.0).epsilon(1e-9));
    CHECK(v.entries[1].weight == doctest::Approx(1.4055).epsilon(1e-4));
}

TEST_CASE("tfidf of out-of-vocabulary text is the zero vector") {
    const auto vocab = build_vocabulary({{"a"}});
    CHECK(tfidf_vectorize({"x", "y"}, vocab, 1).empty());
}

TEST_CASE("tfidf weights stay non-negative") {
    std::mt19937_64 rng(3);
    const std::vector<std::string> words = {"a", "b", "c", "d", "e"};
    for (int trial = 0; trial < 50; ++trial) {
        std::vector<TokenList> docs(1 + rng() % 5);
        for (auto& doc : docs) {
            const auto len = static_cast<std::size_t>(rng() % 8);
            for (std::size_t i = 0; i < len; ++i) {
                doc.push_back(words[static_cast<std::size_t>(rng() % words.size())]);
            }
        }
        const auto vocab = build_vocabulary(docs);
        for (const auto& doc : docs) {
            for (const auto& e : tfidf_vectorize(doc, vocab, docs.size()).entries) {
                CHECK(e.weight >= 1.0);  // idf >= 1 and tf >= 1
            }
        }
    }
}

TEST_CASE("binary_vectorize records presence only") {
    const auto vocab = build_vocabulary({{"a", "b", "c"}});
    const auto v = binary_vectorize({"a", "a", "b"}, vocab);
    REQUIRE(v.entries.size() == 2);
    CHECK(v.entries[0].column == 0);
    CHECK(v.entries[0].weight == 1.0);
    CHECK(v.entries[1].column == 1);
    CHECK(binary_vectorize({}, vocab).empty());

    // Deduplicating the input changes nothing.
    const auto deduped = binary_vectorize({"a", "b"}, vocab);
    REQUIRE(v.entries.size() == deduped.entries.size());
    for (std::size_t i = 0; i < v.entries.size(); ++i) {
        CHECK(v.entries[i].column == deduped.entries[i].column);
        CHECK(v.entries[i].weight == deduped.entries[i].weight);
    }
}

TEST_CASE("cosine_similarity basics") {
    SparseVector u;
    u.entries = {{0, 1.0}, {1, 1.0}};
    SparseVector v;
    v.entries = {{0, 1.0}};
    CHECK(cosine_similarity(u, u) == doctest::Approx(1.0).epsilon(1e-12));
    CHECK(cosine_similarity(u, v) == doctest::Approx(1.0 / std::sqrt(2.0)).epsilon(1e-5));

    SparseVector w;
    w.entries = {{2, 3.0}};
    CHECK(cosine_similarity(u, w) == 0.0);
    CHECK(cosine_similarity(u, SparseVector{}) == 0.0);
}

TEST_CASE("cosine_similarity is symmetric and bounded") {
    std::mt19937_64 rng(17);
    for (int trial = 0; trial < 100; ++trial) {
        SparseVector u;
        SparseVector v;
        for (int col = 0; col < 6; ++col) {
            if (rng() % 2 == 0) u.entries.push_back({col, static_cast<double>(rng() % 9)});
            if (rng() % 2 == 0) v.entries.push_back({col, static_cast<double>(rng() % 9)});
        }
        const double uv = cosine_similarity(u, v);
        CHECK(uv == cosine_similarity(v, u));
        CHECK(uv >= 0.0);  // non-negative weights
        CHECK(uv <= 1.0 + 1e-12);
    }
}

TEST_CASE("bm25_score hand-computed single-term case") {
    // d0 holds the query term twice (dl = 4); avgdl over the three docs is 3.
    const std::vector<TokenList> docs = {
        {"t", "t", "x", "y"}, {"a", "b", "c"}, {"d", "e"}};
    const auto vocab = build_vocabulary(docs);
    const auto params = Bm25Params::fit(docs);
    CHECK(params.avgdl == doctest::Approx(3.0));

    const double idf = std::log((3.0 - 1.0 + 0.5) / (1.0 + 0.5));
    const double tf_part = 2.0 * (1.2 + 1.0) / (2.0 + 1.2 * (1.0 - 0.75 + 0.75 * 4.0 / 3.0));
    const double expected = idf * tf_part;

    const double got = bm25_score({"t"}, docs[0], vocab, params, docs.size());
    CHECK(got == doctest::Approx(expected).epsilon(1e-6));
    // Repeated query terms must not double-count.
    CHECK(bm25_score({"t", "t"}, docs[0], vocab, params, docs.size()) ==
          doctest::Approx(expected).epsilon(1e-12));
}

TEST_CASE("bm25_score of disjoint documents is zero") {
    const std::vector<TokenList> docs = {{"a", "b"}, {"c", "d"}};
    const auto vocab = build_vocabulary(docs);
    const auto params = Bm25Params::fit(docs);
    CHECK(bm25_score(docs[0], docs[1], vocab, params, docs.size()) == 0.0);
}

TEST_CASE("bm25_score with b = 0 ignores candidate length") {
    const std::vector<TokenList> docs = {
        {"t", "x"}, {"t", "a", "b", "c", "d", "e", "f", "g"}, {"z"}};
    const auto vocab = build_vocabulary(docs);
    const auto params = Bm25Params::fit(docs, 1.2, 0.0);
    const double short_doc = bm25_score({"t"}, docs[0], vocab, params, docs.size());
    const double long_doc = bm25_score({"t"}, docs[1], vocab, params, docs.size());
    CHECK(short_doc == doctest::Approx(long_doc).epsilon(1e-12));
}

TEST_CASE("bm25_score never goes negative") {
    // A term present in every document has negative raw idf; the floor
    // keeps the score at zero instead.
    const std::vector<TokenList> docs = {{"t"}, {"t"}, {"t"}};
    const auto vocab = build_vocabulary(docs);
    const auto params = Bm25Params::fit(docs);
    CHECK(bm25_score({"t"}, docs[0], vocab, params, docs.size()) == 0.0);
}

TEST_CASE("stopword file override") {
    const auto path = std::filesystem::temp_directory_path() / "eulaflag_stopwords_test.txt";
    {
        std::ofstream out(path);
        out << "# comment\nFoo\nbar\n";
    }
    const auto set = StopwordSet::from_file(path);
    CHECK(set.contains("foo"));
    CHECK(set.contains("bar"));
    CHECK_FALSE(set.contains("baz"));
    std::filesystem::remove(path);
}
