#pragma once

#include <string>
#include <string_view>
#include <unordered_set>
#include <vector>

namespace qgen {

/// ASCII lowercase; bytes outside ASCII are left untouched.
std::string to_lower(std::string_view s);

std::string trim(std::string_view s);

/// Splits on whitespace only (used for person names).
std::vector<std::string> split_whitespace(std::string_view s);

/// Search tokenization shared by the engine, the generators and the matcher.
///
/// Text is lowercased and split on every character that is not a letter or
/// digit. An apostrophe is kept when it sits between two word characters, so
/// "Don't" is the single token "don't". Non-ASCII code points count as word
/// characters except Latin-1 punctuation and the General Punctuation block
/// (dashes, curly quotes), which separate tokens. U+2019 inside a word is
/// folded to an ASCII apostrophe.
std::vector<std::string> tokenize(std::string_view text);

/// Tokens joined by single spaces.
std::string normalize_text(std::string_view text);

/// Decodes UTF-8 into code points. Invalid bytes decode as themselves.
std::u32string decode_utf8(std::string_view s);

/// A person name reduced to the parts the matcher compares.
struct PersonName {
    std::string last;     // lowercase final whitespace token
    std::string initial;  // lowercase first code point of the first token; empty for one-token names
};

PersonName parse_name(std::string_view full_name);

/// Lowercase full name with punctuation trimmed from each token ("J. Smith" -> "j smith").
std::string normalize_name(std::string_view full_name);

/// Last name plus first initial ("John Smith" -> "smith j"); groups datasets by author.
std::string author_key(std::string_view full_name);

class StopwordList {
public:
    StopwordList(std::string id, std::vector<std::string> words);

    const std::string& id() const noexcept { return id_; }
    bool contains(std::string_view token) const;
    std::size_t size() const noexcept { return words_.size(); }

private:
    std::string id_;
    std::unordered_set<std::string> words_;
};

/// Looks up a shipped stopword list by id. Only "default" and "none" exist.
const StopwordList& stopword_list(std::string_view id);

/// Title tokens with stopwords removed, order preserved.
std::vector<std::string> content_tokens(std::string_view text, const StopwordList& stopwords);

}  // namespace qgen
