#pragma once

#include <string>
#include <string_view>

#include "eulaflag/errors.hpp"

namespace eulaflag {

struct FetchResult {
    std::string url;
    std::string final_url;  // after redirects
    std::string text;       // extracted plain text, nonempty on success
    std::string content_type;
};

struct FetchOptions {
    double timeout_seconds{15.0};
    int max_redirects{5};
};

/// HTTP(S) GET with manual redirect handling (301/302/303/307/308). HTML
/// bodies go through strip_html; anything else passes through verbatim.
FetchResult fetch_eula(const std::string& url, const FetchOptions& options = {});

/// Tolerant tag-scanner HTML-to-text: drops tags, script/style/comment
/// blocks, decodes named ({amp,lt,gt,quot,apos,nbsp}) and numeric entities,
/// turns block-level tags into newlines and collapses whitespace. A '<' not
/// followed by a tag-ish character is kept as text, which keeps the function
/// idempotent on its own output.
std::string strip_html(std::string_view html);

namespace detail {
struct ParsedUrl {
    std::string scheme;
    std::string host;
    int port{0};
    std::string target;  // path + query, always starts with '/'
};
ParsedUrl parse_url(const std::string& url);
std::string resolve_redirect(const ParsedUrl& base, const std::string& location);
}  // namespace detail

}  // namespace eulaflag
