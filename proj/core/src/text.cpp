#include "qgen/text.hpp"

#include <algorithm>
#include <cctype>

#include "qgen/error.hpp"

namespace qgen {

namespace {

bool is_ascii_alnum(char32_t c) {
    return (c >= U'a' && c <= U'z') || (c >= U'A' && c <= U'Z') || (c >= U'0' && c <= U'9');
}

bool is_apostrophe(char32_t c) { return c == U'\'' || c == U'’'; }

bool is_word_char(char32_t c) {
    if (c < 0x80) return is_ascii_alnum(c);
    if (c >= 0xA0 && c <= 0xBF) return false;  // Latin-1 punctuation and symbols
    if (c == 0xD7 || c == 0xF7) return false;
    if (c >= 0x2000 && c <= 0x206F) return false;  // General Punctuation
    if (c >= 0x3000 && c <= 0x303F) return false;  // CJK punctuation
    return true;
}

void append_utf8(std::string& out, char32_t c) {
    if (c < 0x80) {
        out.push_back(static_cast<char>(c));
    } else if (c < 0x800) {
        out.push_back(static_cast<char>(0xC0 | (c >> 6)));
        out.push_back(static_cast<char>(0x80 | (c & 0x3F)));
    } else if (c < 0x10000) {
        out.push_back(static_cast<char>(0xE0 | (c >> 12)));
        out.push_back(static_cast<char>(0x80 | ((c >> 6) & 0x3F)));
        out.push_back(static_cast<char>(0x80 | (c & 0x3F)));
    } else {
        out.push_back(static_cast<char>(0xF0 | (c >> 18)));
        out.push_back(static_cast<char>(0x80 | ((c >> 12) & 0x3F)));
        out.push_back(static_cast<char>(0x80 | ((c >> 6) & 0x3F)));
        out.push_back(static_cast<char>(0x80 | (c & 0x3F)));
    }
}

char32_t ascii_lower(char32_t c) { return (c >= U'A' && c <= U'Z') ? c - U'A' + U'a' : c; }

std::string strip_token_punctuation(std::string_view token) {
    auto cps = decode_utf8(token);
    std::size_t b = 0;
    std::size_t e = cps.size();
    while (b < e && !is_word_char(cps[b])) ++b;
    while (e > b && !is_word_char(cps[e - 1])) --e;
    std::string out;
    for (std::size_t i = b; i < e; ++i) append_utf8(out, ascii_lower(cps[i]));
    return out;
}

}  // namespace

std::string to_lower(std::string_view s) {
    std::string out(s);
    for (auto& c : out) {
        if (c >= 'A' && c <= 'Z') c = static_cast<char>(c - 'A' + 'a');
    }
    return out;
}

std::string trim(std::string_view s) {
    const auto is_space = [](unsigned char c) { return std::isspace(c) != 0; };
    std::size_t b = 0;
    std::size_t e = s.size();
    while (b < e && is_space(static_cast<unsigned char>(s[b]))) ++b;
    while (e > b && is_space(static_cast<unsigned char>(s[e - 1]))) --e;
    return std::string(s.substr(b, e - b));
}

std::vector<std::string> split_whitespace(std::string_view s) {
    std::vector<std::string> out;
    std::size_t i = 0;
    while (i < s.size()) {
        while (i < s.size() && std::isspace(static_cast<unsigned char>(s[i]))) ++i;
        std::size_t j = i;
        while (j < s.size() && !std::isspace(static_cast<unsigned char>(s[j]))) ++j;
        if (j > i) out.emplace_back(s.substr(i, j - i));
        i = j;
    }
    return out;
}

std::u32string decode_utf8(std::string_view s) {
    std::u32string out;
    out.reserve(s.size());
    std::size_t i = 0;
    while (i < s.size()) {
        const auto b0 = static_cast<unsigned char>(s[i]);
        int extra = 0;
        char32_t cp = b0;
        if (b0 >= 0xF0 && b0 <= 0xF4) {
            extra = 3;
            cp = b0 & 0x07;
        } else if (b0 >= 0xE0) {
            extra = 2;
            cp = b0 & 0x0F;
        } else if (b0 >= 0xC2 && b0 < 0xE0) {
            extra = 1;
            cp = b0 & 0x1F;
        }
        bool valid = extra > 0 && i + static_cast<std::size_t>(extra) < s.size();
        for (int k = 1; valid && k <= extra; ++k) {
            const auto bk = static_cast<unsigned char>(s[i + k]);
            if ((bk & 0xC0) != 0x80) valid = false;
            cp = (cp << 6) | (bk & 0x3F);
        }
        if (valid) {
            out.push_back(cp);
            i += static_cast<std::size_t>(extra) + 1;
        } else {
            out.push_back(b0);
            ++i;
        }
    }
    return out;
}

std::vector<std::string> tokenize(std::string_view text) {
    const auto cps = decode_utf8(text);
    std::vector<std::string> tokens;
    std::string current;
    for (std::size_t i = 0; i < cps.size(); ++i) {
        const char32_t c = cps[i];
        if (is_word_char(c)) {
            append_utf8(current, ascii_lower(c));
        } else if (is_apostrophe(c) && !current.empty() && i + 1 < cps.size() && is_word_char(cps[i + 1])) {
            current.push_back('\'');
        } else if (!current.empty()) {
            tokens.push_back(std::move(current));
            current.clear();
        }
    }
    if (!current.empty()) tokens.push_back(std::move(current));
    return tokens;
}

std::string normalize_text(std::string_view text) {
    std::string out;
    for (const auto& t : tokenize(text)) {
        if (!out.empty()) out.push_back(' ');
        out += t;
    }
    return out;
}

PersonName parse_name(std::string_view full_name) {
    PersonName name;
    std::vector<std::string> parts;
    for (const auto& raw : split_whitespace(full_name)) {
        auto p = strip_token_punctuation(raw);
        if (!p.empty()) parts.push_back(std::move(p));
    }
    if (parts.empty()) return name;
    name.last = parts.back();
    if (parts.size() >= 2) {
        const auto cps = decode_utf8(parts.front());
        append_utf8(name.initial, cps.front());
    }
    return name;
}

std::string normalize_name(std::string_view full_name) {
    std::string out;
    for (const auto& raw : split_whitespace(full_name)) {
        auto p = strip_token_punctuation(raw);
        if (p.empty()) continue;
        if (!out.empty()) out.push_back(' ');
        out += p;
    }
    return out;
}

std::string author_key(std::string_view full_name) {
    const auto name = parse_name(full_name);
    if (name.initial.empty()) return name.last;
    return name.last + " " + name.initial;
}

StopwordList::StopwordList(std::string id, std::vector<std::string> words) : id_(std::move(id)) {
    for (auto& w : words) words_.insert(to_lower(w));
}

bool StopwordList::contains(std::string_view token) const { return words_.count(std::string(token)) > 0; }

const StopwordList& stopword_list(std::string_view id) {
    static const StopwordList kDefault(
        "default", {"a",       "about", "after", "against", "all",   "an",      "and",    "are",   "as",
                    "at",      "be",    "by",    "can",     "do",    "for",     "from",   "has",   "have",
                    "how",     "if",    "in",    "into",    "is",    "it",      "its",    "new",   "not",
                    "of",      "on",    "or",    "over",    "some",  "that",    "the",    "their", "this",
                    "through", "to",    "towards", "toward", "under", "up",     "using",  "via",   "was",
                    "we",      "what",  "when",  "where",   "which", "while",   "who",    "why",   "with",
                    "within",  "without"});
    static const StopwordList kNone("none", {});
    if (id == "default") return kDefault;
    if (id == "none") return kNone;
    throw Error("unknown stopword list '" + std::string(id) + "'");
}

std::vector<std::string> content_tokens(std::string_view text, const StopwordList& stopwords) {
    auto tokens = tokenize(text);
    std::erase_if(tokens, [&](const std::string& t) { return stopwords.contains(t); });
    return tokens;
}

}  // namespace qgen
