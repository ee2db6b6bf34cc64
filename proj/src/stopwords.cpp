#include <algorithm>
#include <fstream>

#include "eulaflag/textproc.hpp"

namespace eulaflag {

namespace {

// Pronouns, determiners, prepositions, auxiliaries and conjunctions.
constexpr const char* kBuiltinStopwords[] = {
    "a", "about", "above", "after", "again", "against", "all", "am", "an", "and", "any", "are",
    "aren", "as", "at", "be", "because", "been", "before", "being", "below", "between", "both",
    "but", "by", "can", "cannot", "could", "did", "do", "does", "doing", "down", "during",
    "each", "few", "for", "from", "further", "had", "has", "have", "having", "he", "her",
    "here", "hers", "herself", "him", "himself", "his", "how", "i", "if", "in", "into", "is",
    "it", "its", "itself", "just", "may", "me", "might", "more", "most", "must", "my", "myself",
    "no", "nor", "not", "now", "of", "off", "on", "once", "only", "or", "other", "our", "ours",
    "ourselves", "out", "over", "own", "same", "shall", "she", "should", "so", "some", "such",
    "than", "that", "the", "their", "theirs", "them", "themselves", "then", "there", "these",
    "they", "this", "those", "through", "to", "too", "under", "until", "up", "upon", "very",
    "was", "we", "were", "what", "when", "where", "which", "while", "who", "whom", "why",
    "will", "with", "within", "without", "would", "you", "your", "yours", "yourself",
    "yourselves",
};

std::string lowercase_ascii(std::string s) {
    std::transform(s.begin(), s.end(), s.begin(),
                   [](unsigned char c) { return static_cast<char>(std::tolower(c)); });
    return s;
}

}  // namespace

StopwordSet::StopwordSet(std::vector<std::string> words) {
    for (auto& w : words) words_.insert(lowercase_ascii(std::move(w)));
}

const StopwordSet& StopwordSet::builtin() {
    static const StopwordSet set = [] {
        std::vector<std::string> words;
        for (const char* w : kBuiltinStopwords) words.emplace_back(w);
        return StopwordSet(std::move(words));
    }();
    return set;
}

StopwordSet StopwordSet::from_file(const std::filesystem::path& path) {
    std::ifstream in(path);
    if (!in) throw Error("cannot open stopword file: " + path.string());
    std::vector<std::string> words;
    std::string line;
    while (std::getline(in, line)) {
        while (!line.empty() && (line.back() == '\r' || line.back() == ' ')) line.pop_back();
        if (line.empty() || line.front() == '#') continue;
        words.push_back(line);
    }
    return StopwordSet(std::move(words));
}

bool StopwordSet::contains(std::string_view token) const {
    return words_.find(std::string(token)) != words_.end();
}

std::vector<std::string> StopwordSet::sorted_words() const {
    std::vector<std::string> out(words_.begin(), words_.end());
    std::sort(out.begin(), out.end());
    return out;
}

}  // namespace eulaflag
