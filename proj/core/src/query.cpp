#include "qgen/query.hpp"

#include <algorithm>
#include <cctype>

namespace qgen {

SearchValue SearchValue::value(std::string v) {
    SearchValue s;
    s.kind = ValueKind::Value;
    s.text = std::move(v);
    return s;
}

SearchValue SearchValue::keywords(std::vector<std::string> tokens) {
    SearchValue s;
    s.kind = ValueKind::Keywords;
    s.tokens = std::move(tokens);
    return s;
}

SearchValue SearchValue::phrase(std::string text) {
    SearchValue s;
    s.kind = ValueKind::Phrase;
    s.text = std::move(text);
    return s;
}

SearchValue SearchValue::make_pattern(std::vector<PatternItem> items) {
    SearchValue s;
    s.kind = ValueKind::Pattern;
    s.pattern = std::move(items);
    return s;
}

bool SearchValue::well_formed() const {
    switch (kind) {
        case ValueKind::Keywords:
            return !tokens.empty() && std::none_of(tokens.begin(), tokens.end(), [](const auto& t) { return t.empty(); });
        case ValueKind::Pattern:
            return std::any_of(pattern.begin(), pattern.end(), [](const PatternItem& i) { return i.has_value() && !i->empty(); });
        case ValueKind::Value:
        case ValueKind::Phrase:
            return true;
    }
    return false;
}

std::string_view to_string(Rejection::Code code) {
    switch (code) {
        case Rejection::Code::EmptyQuery: return "empty query";
        case Rejection::Code::MalformedValue: return "malformed search value";
        case Rejection::Code::UnknownPredicate: return "unknown predicate";
        case Rejection::Code::UnsupportedValueKind: return "unsupported value kind";
        case Rejection::Code::OrNotSupported: return "OR not supported";
        case Rejection::Code::TooManyDisjuncts: return "too many disjuncts";
    }
    return "?";
}

RejectedQuery::RejectedQuery(Rejection rejection)
    : Error("query rejected: " + std::string(to_string(rejection.code)) +
            (rejection.detail.empty() ? std::string() : " (" + rejection.detail + ")")),
      rejection_(std::move(rejection)) {}

std::optional<Rejection> validate(const Query& query, const EngineCapabilities& caps) {
    using Code = Rejection::Code;
    if (query.disjuncts.empty()) return Rejection{Code::EmptyQuery, "no basic query"};
    if (query.disjuncts.size() > 1 && !caps.supports_or) {
        return Rejection{Code::OrNotSupported, std::to_string(query.disjuncts.size()) + " disjuncts"};
    }
    if (query.disjuncts.size() > static_cast<std::size_t>(caps.max_disjuncts)) {
        return Rejection{Code::TooManyDisjuncts,
                         std::to_string(query.disjuncts.size()) + " > " + std::to_string(caps.max_disjuncts)};
    }
    for (const auto& basic : query.disjuncts) {
        if (basic.terms.empty()) return Rejection{Code::EmptyQuery, "basic query without terms"};
        for (const auto& term : basic.terms) {
            const auto* pred = caps.find(term.predicate);
            if (pred == nullptr) return Rejection{Code::UnknownPredicate, term.predicate};
            if (!pred->accepts(term.value.kind)) {
                return Rejection{Code::UnsupportedValueKind, term.predicate + " does not accept " + std::string(to_string(term.value.kind))};
            }
            if (!term.value.well_formed()) return Rejection{Code::MalformedValue, to_string(term)};
        }
    }
    return std::nullopt;
}

namespace {

bool is_bare(std::string_view word) {
    if (word.empty() || word == "*" || word == "OR" || word == "AND") return false;
    return std::none_of(word.begin(), word.end(), [](char c) {
        return c == '(' || c == ')' || c == '"' || c == '\\' || std::isspace(static_cast<unsigned char>(c));
    });
}

std::string quote(std::string_view s) {
    std::string out = "\"";
    for (char c : s) {
        if (c == '"' || c == '\\') out.push_back('\\');
        out.push_back(c);
    }
    out.push_back('"');
    return out;
}

std::string word(std::string_view s) { return is_bare(s) ? std::string(s) : quote(s); }

}  // namespace

std::string to_string(const SearchValue& value) {
    std::string out(to_string(value.kind));
    switch (value.kind) {
        case ValueKind::Value:
            out += ' ';
            out += word(value.text);
            break;
        case ValueKind::Phrase:
            out += ' ';
            out += quote(value.text);
            break;
        case ValueKind::Keywords:
            for (const auto& t : value.tokens) {
                out += ' ';
                out += word(t);
            }
            break;
        case ValueKind::Pattern:
            for (const auto& item : value.pattern) {
                out += ' ';
                out += item ? word(*item) : std::string("*");
            }
            break;
    }
    return out;
}

std::string to_string(const Term& term) { return term.predicate + ":(" + to_string(term.value) + ")"; }

std::string to_string(const Query& query) {
    std::string out;
    const bool group = query.disjuncts.size() > 1;
    for (std::size_t d = 0; d < query.disjuncts.size(); ++d) {
        if (d > 0) out += " OR ";
        const auto& terms = query.disjuncts[d].terms;
        const bool parens = group && terms.size() > 1;
        if (parens) out += '(';
        for (std::size_t i = 0; i < terms.size(); ++i) {
            if (i > 0) out += " AND ";
            out += to_string(terms[i]);
        }
        if (parens) out += ')';
    }
    return out;
}

namespace {

class QueryParser {
public:
    explicit QueryParser(std::string_view text) : text_(text) {}

    Query parse() {
        Query q;
        q.disjuncts.push_back(basic());
        while (keyword("OR")) q.disjuncts.push_back(basic());
        skip_space();
        if (pos_ != text_.size()) fail("unexpected trailing text");
        return q;
    }

private:
    struct Item {
        std::string text;
        bool quoted;
    };

    BasicQuery basic() {
        skip_space();
        BasicQuery b;
        const bool parens = peek() == '(';
        if (parens) ++pos_;
        b.terms.push_back(term());
        while (keyword("AND")) b.terms.push_back(term());
        if (parens) {
            skip_space();
            expect(')');
        }
        return b;
    }

    Term term() {
        skip_space();
        Term t;
        const auto colon = text_.find(":(", pos_);
        if (colon == std::string_view::npos || colon == pos_) fail("expected predicate:(");
        t.predicate = std::string(text_.substr(pos_, colon - pos_));
        if (std::any_of(t.predicate.begin(), t.predicate.end(), [](char c) { return std::isspace(static_cast<unsigned char>(c)) || c == '(' || c == ')'; })) {
            fail("malformed predicate name '" + t.predicate + "'");
        }
        pos_ = colon + 2;
        const auto kind_end = text_.find_first_of(" )", pos_);
        if (kind_end == std::string_view::npos) fail("unterminated term");
        const auto kind = parse_value_kind(text_.substr(pos_, kind_end - pos_));
        if (!kind) fail("unknown value kind");
        pos_ = kind_end;
        std::vector<Item> items;
        for (;;) {
            skip_space();
            if (peek() == ')') {
                ++pos_;
                break;
            }
            if (pos_ >= text_.size()) fail("unterminated term");
            items.push_back(item());
        }
        switch (*kind) {
            case ValueKind::Value:
                if (items.size() != 1) fail("value takes exactly one item");
                t.value = SearchValue::value(items.front().text);
                break;
            case ValueKind::Phrase: {
                std::string joined;
                for (const auto& i : items) {
                    if (!joined.empty()) joined += ' ';
                    joined += i.text;
                }
                t.value = SearchValue::phrase(joined);
                break;
            }
            case ValueKind::Keywords: {
                std::vector<std::string> tokens;
                for (auto& i : items) tokens.push_back(std::move(i.text));
                t.value = SearchValue::keywords(std::move(tokens));
                break;
            }
            case ValueKind::Pattern: {
                std::vector<PatternItem> pattern;
                for (auto& i : items) {
                    if (!i.quoted && i.text == "*") {
                        pattern.emplace_back(std::nullopt);
                    } else {
                        pattern.emplace_back(std::move(i.text));
                    }
                }
                t.value = SearchValue::make_pattern(std::move(pattern));
                break;
            }
        }
        return t;
    }

    Item item() {
        if (peek() == '"') {
            ++pos_;
            std::string out;
            while (pos_ < text_.size() && text_[pos_] != '"') {
                if (text_[pos_] == '\\' && pos_ + 1 < text_.size()) ++pos_;
                out.push_back(text_[pos_++]);
            }
            expect('"');
            return {out, true};
        }
        const auto start = pos_;
        while (pos_ < text_.size() && text_[pos_] != ')' && !std::isspace(static_cast<unsigned char>(text_[pos_]))) ++pos_;
        return {std::string(text_.substr(start, pos_ - start)), false};
    }

    bool keyword(std::string_view kw) {
        const auto save = pos_;
        skip_space();
        if (text_.substr(pos_, kw.size()) == kw && pos_ + kw.size() < text_.size() &&
            std::isspace(static_cast<unsigned char>(text_[pos_ + kw.size()]))) {
            pos_ += kw.size();
            return true;
        }
        pos_ = save;
        return false;
    }

    void skip_space() {
        while (pos_ < text_.size() && std::isspace(static_cast<unsigned char>(text_[pos_]))) ++pos_;
    }
    char peek() const { return pos_ < text_.size() ? text_[pos_] : '\0'; }
    void expect(char c) {
        if (peek() != c) fail(std::string("expected '") + c + "'");
        ++pos_;
    }
    [[noreturn]] void fail(const std::string& message) const {
        throw Error("cannot parse query at offset " + std::to_string(pos_) + ": " + message);
    }

    std::string_view text_;
    std::size_t pos_ = 0;
};

}  // namespace

Query parse_query(std::string_view text) { return QueryParser(text).parse(); }

}  // namespace qgen
