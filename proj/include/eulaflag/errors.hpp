#pragma once

#include <stdexcept>
#include <string>

namespace eulaflag {

/// Base class for every error thrown by the library.
struct Error : std::runtime_error {
    using std::runtime_error::runtime_error;
};

// corpus
struct EmptyCorpusError : Error {
    EmptyCorpusError() : Error("corpus manifest contains no records") {}
};
struct MissingDocumentError : Error {
    explicit MissingDocumentError(const std::string& id, const std::string& path)
        : Error("document file for id \"" + id + "\" not found: " + path), id(id) {}
    std::string id;
};
struct DuplicateIdError : Error {
    explicit DuplicateIdError(const std::string& id)
        : Error("duplicate document id \"" + id + "\" in manifest"), id(id) {}
    std::string id;
};
struct MalformedRecordError : Error {
    MalformedRecordError(std::size_t line_no, const std::string& what)
        : Error("malformed manifest record at line " + std::to_string(line_no) + ": " + what),
          line_no(line_no) {}
    std::size_t line_no;
};
struct InvalidFractionError : Error {
    explicit InvalidFractionError(double f)
        : Error("test_fraction must lie in (0,1), got " + std::to_string(f)) {}
};
struct TooFewDocumentsError : Error {
    explicit TooFewDocumentsError(const std::string& what) : Error(what) {}
};

// textproc
struct EmptyInputError : Error {
    explicit EmptyInputError(const std::string& what = "empty input") : Error(what) {}
};

// summarize
struct EmptyDocumentError : Error {
    EmptyDocumentError() : Error("document contains no sentences") {}
};
struct DimensionError : Error {
    explicit DimensionError(const std::string& what) : Error(what) {}
};
struct ConfigError : Error {
    explicit ConfigError(const std::string& what) : Error(what) {}
};

// classify
struct SingleClassDataError : Error {
    SingleClassDataError() : Error("training data must contain both classes") {}
};
struct InfeasibleNuError : Error {
    explicit InfeasibleNuError(const std::string& what) : Error(what) {}
};
struct VocabularyMismatchError : Error {
    explicit VocabularyMismatchError(const std::string& what) : Error(what) {}
};

// eval
struct LengthMismatchError : Error {
    LengthMismatchError(std::size_t a, std::size_t b)
        : Error("prediction/truth length mismatch: " + std::to_string(a) + " vs " +
                std::to_string(b)) {}
};

// fetch
struct FetchError : Error {
    using Error::Error;
};
struct TimeoutError : FetchError {
    explicit TimeoutError(const std::string& url) : FetchError("request timed out: " + url) {}
};
struct TooManyRedirectsError : FetchError {
    explicit TooManyRedirectsError(int limit)
        : FetchError("redirect limit of " + std::to_string(limit) + " exceeded") {}
};
struct HttpStatusError : FetchError {
    HttpStatusError(int status, const std::string& url)
        : FetchError("HTTP status " + std::to_string(status) + " for " + url), status(status) {}
    int status;
};
struct EmptyBodyError : FetchError {
    explicit EmptyBodyError(const std::string& url)
        : FetchError("response body empty after extraction: " + url) {}
};
struct UnsupportedSchemeError : FetchError {
    explicit UnsupportedSchemeError(const std::string& what) : FetchError(what) {}
};
struct ConnectionError : FetchError {
    explicit ConnectionError(const std::string& what) : FetchError(what) {}
};

// model_io
struct BundleFormatError : Error {
    explicit BundleFormatError(const std::string& what) : Error(what) {}
};

}  // namespace eulaflag
