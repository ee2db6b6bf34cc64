#include "eulaflag/fetch.hpp"

#include <httplib.h>

#include <algorithm>
#include <array>
#include <cctype>
#include <cmath>
#include <sstream>

namespace eulaflag {

namespace {

constexpr const char* kUserAgent = "eulaflag/1.0 (EULA text analyzer)";

const std::array<std::string_view, 32> kBlockTags = {
    "address", "article", "aside",      "blockquote", "br",   "dd",     "div",    "dl",
    "dt",      "fieldset", "figcaption", "figure",     "footer", "form",  "h1",     "h2",
    "h3",      "h4",       "h5",         "h6",         "header", "hr",    "li",     "main",
    "nav",     "ol",       "p",          "pre",        "section", "table", "tr",    "ul",
};

bool is_block_tag(std::string_view name) {
    return std::find(kBlockTags.begin(), kBlockTags.end(), name) != kBlockTags.end() ||
           name == "td" || name == "th" || name == "thead" || name == "tbody" ||
           name == "tfoot" || name == "title";
}

bool is_tag_start(char c) {
    return c == '/' || c == '!' || c == '?' ||
           (c >= 'a' && c <= 'z') || (c >= 'A' && c <= 'Z');
}

char lower(char c) { return c >= 'A' && c <= 'Z' ? static_cast<char>(c - 'A' + 'a') : c; }

bool iequals(std::string_view a, std::string_view b) {
    if (a.size() != b.size()) return false;
    for (std::size_t i = 0; i < a.size(); ++i) {
        if (lower(a[i]) != lower(b[i])) return false;
    }
    return true;
}

void append_utf8(std::string& out, std::uint32_t cp) {
    if (cp <= 0x7F) {
        out.push_back(static_cast<char>(cp));
    } else if (cp <= 0x7FF) {
        out.push_back(static_cast<char>(0xC0 | (cp >> 6)));
        out.push_back(static_cast<char>(0x80 | (cp & 0x3F)));
    } else if (cp <= 0xFFFF) {
        out.push_back(static_cast<char>(0xE0 | (cp >> 12)));
        out.push_back(static_cast<char>(0x80 | ((cp >> 6) & 0x3F)));
        out.push_back(static_cast<char>(0x80 | (cp & 0x3F)));
    } else if (cp <= 0x10FFFF) {
        out.push_back(static_cast<char>(0xF0 | (cp >> 18)));
        out.push_back(static_cast<char>(0x80 | ((cp >> 12) & 0x3F)));
        out.push_back(static_cast<char>(0x80 | ((cp >> 6) & 0x3F)));
        out.push_back(static_cast<char>(0x80 | (cp & 0x3F)));
    }
}

/// Decodes the entity starting at html[i] (which is '&'). Returns the number
/// of consumed characters and appends the decoded text; an unrecognized
/// entity is kept verbatim as a single '&'.
std::size_t decode_entity(std::string_view html, std::size_t i, std::string& out) {
    const std::size_t semi = html.find(';', i + 1);
    if (semi == std::string_view::npos || semi - i > 10) {
        out.push_back('&');
        return 1;
    }
    const std::string_view body = html.substr(i + 1, semi - i - 1);
    if (body == "amp") {
        out.push_back('&');
    } else if (body == "lt") {
        out.push_back('<');
    } else if (body == "gt") {
        out.push_back('>');
    } else if (body == "quot") {
        out.push_back('"');
    } else if (body == "apos") {
        out.push_back('\'');
    } else if (body == "nbsp") {
        out.push_back(' ');
    } else if (!body.empty() && body[0] == '#') {
        std::uint32_t cp = 0;
        bool ok = body.size() > 1;
        if (body.size() > 2 && (body[1] == 'x' || body[1] == 'X')) {
            for (std::size_t j = 2; j < body.size() && ok; ++j) {
                const char c = lower(body[j]);
                if (c >= '0' && c <= '9') {
                    cp = cp * 16 + static_cast<std::uint32_t>(c - '0');
                } else if (c >= 'a' && c <= 'f') {
                    cp = cp * 16 + static_cast<std::uint32_t>(c - 'a' + 10);
                } else {
                    ok = false;
                }
            }
        } else {
            for (std::size_t j = 1; j < body.size() && ok; ++j) {
                if (body[j] >= '0' && body[j] <= '9') {
                    cp = cp * 10 + static_cast<std::uint32_t>(body[j] - '0');
                } else {
                    ok = false;
                }
            }
        }
        if (!ok || cp == 0 || cp > 0x10FFFF) {
            out.push_back('&');
            return 1;
        }
        append_utf8(out, cp);
    } else {
        out.push_back('&');
        return 1;
    }
    return semi - i + 1;
}

/// Reads a tag starting at html[i] == '<'. Returns one past the closing '>'
/// (quoted attribute values may contain '>'), plus the lowercased tag name
/// and whether it was a closing tag.
std::size_t scan_tag(std::string_view html, std::size_t i, std::string& name, bool& closing) {
    std::size_t j = i + 1;
    closing = false;
    if (j < html.size() && html[j] == '/') {
        closing = true;
        ++j;
    }
    name.clear();
    while (j < html.size() && (std::isalnum(static_cast<unsigned char>(html[j])) != 0)) {
        name.push_back(lower(html[j]));
        ++j;
    }
    char quote = '\0';
    while (j < html.size()) {
        const char c = html[j];
        if (quote != '\0') {
            if (c == quote) quote = '\0';
        } else if (c == '"' || c == '\'') {
            quote = c;
        } else if (c == '>') {
            return j + 1;
        }
        ++j;
    }
    return j;  // unterminated tag: consume the rest
}

/// Skips everything through the matching case-insensitive close tag of a raw
/// text element (script/style).
std::size_t skip_raw_element(std::string_view html, std::size_t i, std::string_view name) {
    while (i < html.size()) {
        if (html[i] == '<' && i + 1 < html.size() && html[i + 1] == '/') {
            const std::size_t name_start = i + 2;
            if (name_start + name.size() <= html.size() &&
                iequals(html.substr(name_start, name.size()), name)) {
                const std::size_t close = html.find('>', name_start);
                return close == std::string_view::npos ? html.size() : close + 1;
            }
        }
        ++i;
    }
    return i;
}

std::string collapse_whitespace(const std::string& raw) {
    std::string out;
    std::istringstream lines(raw);
    std::string line;
    while (std::getline(lines, line)) {
        std::string collapsed;
        bool in_space = true;  // leading whitespace dropped
        for (const char c : line) {
            if (c == ' ' || c == '\t' || c == '\r' || c == '\v' || c == '\f') {
                if (!in_space) collapsed.push_back(' ');
                in_space = true;
            } else {
                collapsed.push_back(c);
                in_space = false;
            }
        }
        while (!collapsed.empty() && collapsed.back() == ' ') collapsed.pop_back();
        if (collapsed.empty()) continue;
        if (!out.empty()) out.push_back('\n');
        out += collapsed;
    }
    return out;
}

bool looks_like_html(std::string_view content_type, std::string_view body) {
    const std::string ct(content_type);
    std::string lowered;
    lowered.reserve(ct.size());
    for (const char c : ct) lowered.push_back(lower(c));
    if (lowered.find("html") != std::string::npos) return true;
    if (!lowered.empty()) return false;
    // No content type: sniff the prefix.
    std::size_t i = 0;
    while (i < body.size() && std::isspace(static_cast<unsigned char>(body[i])) != 0) ++i;
    const std::string_view rest = body.substr(i);
    return rest.size() >= 5 &&
           (iequals(rest.substr(0, 5), "<html") || iequals(rest.substr(0, 5), "<!doc"));
}

}  // namespace

std::string strip_html(std::string_view html) {
    std::string out;
    out.reserve(html.size());
    std::size_t i = 0;
    while (i < html.size()) {
        const char c = html[i];
        if (c == '<') {
            if (i + 1 >= html.size() || !is_tag_start(html[i + 1])) {
                out.push_back('<');  // stray '<': keep as text (tolerant mode)
                ++i;
                continue;
            }
            if (html.compare(i, 4, "<!--") == 0) {
                const std::size_t end = html.find("-->", i + 4);
                i = end == std::string_view::npos ? html.size() : end + 3;
                continue;
            }
            std::string name;
            bool closing = false;
            i = scan_tag(html, i, name, closing);
            if (!closing && (name == "script" || name == "style")) {
                i = skip_raw_element(html, i, name);
                out.push_back('\n');
                continue;
            }
            if (is_block_tag(name)) {
                out.push_back('\n');
            } else {
                out.push_back(' ');  // inline tags separate words, never glue them
            }
            continue;
        }
        if (c == '&') {
            i += decode_entity(html, i, out);
            continue;
        }
        if (c == '\n') {
            out.push_back(' ');
        } else {
            out.push_back(c);
        }
        ++i;
    }
    return collapse_whitespace(out);
}

namespace detail {

ParsedUrl parse_url(const std::string& url) {
    const std::size_t scheme_end = url.find("://");
    if (scheme_end == std::string::npos) {
        throw UnsupportedSchemeError("url has no scheme: " + url);
    }
    ParsedUrl parsed;
    parsed.scheme = url.substr(0, scheme_end);
    std::transform(parsed.scheme.begin(), parsed.scheme.end(), parsed.scheme.begin(), lower);
    if (parsed.scheme != "http" && parsed.scheme != "https") {
        throw UnsupportedSchemeError("unsupported scheme \"" + parsed.scheme + "\" in " + url);
    }
    const std::size_t host_start = scheme_end + 3;
    const std::size_t path_start = url.find('/', host_start);
    std::string authority = path_start == std::string::npos
                                ? url.substr(host_start)
                                : url.substr(host_start, path_start - host_start);
    parsed.target = path_start == std::string::npos ? "/" : url.substr(path_start);
    const std::size_t colon = authority.rfind(':');
    if (colon != std::string::npos) {
        parsed.host = authority.substr(0, colon);
        try {
            parsed.port = std::stoi(authority.substr(colon + 1));
        } catch (...) {
            throw UnsupportedSchemeError("bad port in url: " + url);
        }
    } else {
        parsed.host = authority;
        parsed.port = parsed.scheme == "https" ? 443 : 80;
    }
    if (parsed.host.empty()) throw UnsupportedSchemeError("url has no host: " + url);
    return parsed;
}

std::string resolve_redirect(const ParsedUrl& base, const std::string& location) {
    if (location.find("://") != std::string::npos) return location;
    std::string origin = base.scheme + "://" + base.host;
    const int default_port = base.scheme == "https" ? 443 : 80;
    if (base.port != default_port) origin += ":" + std::to_string(base.port);
    if (!location.empty() && location[0] == '/') return origin + location;
    // Relative path: resolve against the base target's directory.
    std::string dir = base.target;
    const std::size_t slash = dir.rfind('/');
    dir = slash == std::string::npos ? "/" : dir.substr(0, slash + 1);
    return origin + dir + location;
}

}  // namespace detail

FetchResult fetch_eula(const std::string& url, const FetchOptions& options) {
    std::string current = url;
    for (int hop = 0; hop <= options.max_redirects; ++hop) {
        const detail::ParsedUrl parsed = detail::parse_url(current);
#ifndef CPPHTTPLIB_OPENSSL_SUPPORT
        if (parsed.scheme == "https") {
            throw UnsupportedSchemeError("this build lacks TLS support; use http");
        }
#endif
        httplib::Client client(parsed.scheme + "://" + parsed.host + ":" +
                               std::to_string(parsed.port));
        client.set_follow_location(false);
        const auto whole = static_cast<time_t>(options.timeout_seconds);
        const auto usec = static_cast<time_t>(
            (options.timeout_seconds - std::floor(options.timeout_seconds)) * 1e6);
        client.set_connection_timeout(whole, usec);
        client.set_read_timeout(whole, usec);
        client.set_write_timeout(whole, usec);

        httplib::Headers headers = {{"User-Agent", kUserAgent}, {"Accept", "*/*"}};
        auto res = client.Get(parsed.target, headers);
        if (!res) {
            const auto err = res.error();
            if (err == httplib::Error::ConnectionTimeout || err == httplib::Error::Read ||
                err == httplib::Error::Write) {
                throw TimeoutError(current);
            }
            throw ConnectionError("connection to " + current + " failed: " +
                                  httplib::to_string(err));
        }
        const int status = res->status;
        if (status == 301 || status == 302 || status == 303 || status == 307 || status == 308) {
            const std::string location = res->get_header_value("Location");
            if (location.empty()) throw HttpStatusError(status, current);
            current = detail::resolve_redirect(parsed, location);
            continue;
        }
        if (status < 200 || status >= 300) throw HttpStatusError(status, current);
        if (res->body.empty()) throw EmptyBodyError(current);

        FetchResult result;
        result.url = url;
        result.final_url = current;
        result.content_type = res->get_header_value("Content-Type");
        result.text = looks_like_html(result.content_type, res->body) ? strip_html(res->body)
                                                                      : res->body;
        if (result.text.find_first_not_of(" \t\r\n\v\f") == std::string::npos) {
            throw EmptyBodyError(current);
        }
        return result;
    }
    throw TooManyRedirectsError(options.max_redirects);
}

}  // namespace eulaflag
