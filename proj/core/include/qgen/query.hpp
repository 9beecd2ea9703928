#pragma once

#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "qgen/capabilities.hpp"
#include "qgen/error.hpp"

namespace qgen {

/// A pattern position: a literal token, or a wildcard standing for exactly one token.
using PatternItem = std::optional<std::string>;

struct SearchValue {
    ValueKind kind = ValueKind::Keywords;
    std::string text;                  // Value and Phrase payload
    std::vector<std::string> tokens;   // Keywords payload, normalized tokens
    std::vector<PatternItem> pattern;  // Pattern payload

    static SearchValue value(std::string v);
    static SearchValue keywords(std::vector<std::string> tokens);
    static SearchValue phrase(std::string text);
    static SearchValue make_pattern(std::vector<PatternItem> items);

    /// Keywords are non-empty and a pattern has at least one literal.
    bool well_formed() const;

    friend bool operator==(const SearchValue&, const SearchValue&) = default;
};

struct Term {
    std::string predicate;
    SearchValue value;

    friend bool operator==(const Term&, const Term&) = default;
};

/// Conjunction of predicate terms.
struct BasicQuery {
    std::vector<Term> terms;

    friend bool operator==(const BasicQuery&, const BasicQuery&) = default;
};

/// Disjunction of basic queries; a single disjunct is a plain basic query.
struct Query {
    std::vector<BasicQuery> disjuncts;

    friend bool operator==(const Query&, const Query&) = default;
};

struct Rejection {
    enum class Code { EmptyQuery, MalformedValue, UnknownPredicate, UnsupportedValueKind, OrNotSupported, TooManyDisjuncts };

    Code code;
    std::string detail;
};

std::string_view to_string(Rejection::Code code);

class RejectedQuery : public Error {
public:
    explicit RejectedQuery(Rejection rejection);
    const Rejection& rejection() const noexcept { return rejection_; }

private:
    Rejection rejection_;
};

/// nullopt when the query satisfies every capability constraint.
std::optional<Rejection> validate(const Query& query, const EngineCapabilities& caps);

/// Textual form: `pred:(kind payload)` terms joined by " AND "; basic queries
/// joined by " OR ", parenthesized when they hold more than one term.
/// Phrases are double-quoted; wildcards print as `*`.
std::string to_string(const SearchValue& value);
std::string to_string(const Term& term);
std::string to_string(const Query& query);

/// Inverse of to_string(const Query&). Throws qgen::Error on malformed text.
Query parse_query(std::string_view text);

}  // namespace qgen
