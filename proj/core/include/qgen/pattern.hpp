#pragma once

#include <cstddef>
#include <string>
#include <string_view>
#include <unordered_map>
#include <vector>

#include "qgen/corpus.hpp"
#include "qgen/query.hpp"

namespace qgen {

/// Title statistics of the source corpus that wildcard patterns are made
/// unique against. Titles are compared by their normalized token sequence.
class TitleContext {
public:
    explicit TitleContext(const Corpus& corpus);

    std::size_t distinct_titles() const noexcept { return titles_.size(); }
    /// Number of distinct titles containing the token.
    std::size_t document_frequency(std::string_view token) const;

    /// Distinct titles the pattern matches, counting no further than `limit`.
    std::size_t count_matches(const std::vector<PatternItem>& pattern, std::size_t limit = SIZE_MAX) const;

private:
    std::vector<std::vector<std::string>> titles_;  // distinct normalized token sequences
    std::unordered_map<std::string, std::vector<std::size_t>> postings_;
};

struct GeneratedPattern {
    SearchValue value;
    bool ambiguous = false;  // even the fully literal title matches several distinct titles
};

/// Keeps the rarest title tokens literal (ascending document frequency,
/// leftmost first on ties) until the pattern identifies one distinct title,
/// wildcards the rest, and trims wildcards outside the outermost literals.
/// Throws qgen::Error for titles without tokens.
GeneratedPattern gen_pattern(std::string_view title, const TitleContext& context);

/// Removes wildcards that do not sit between two literals.
std::vector<PatternItem> trim_pattern(std::vector<PatternItem> items);

}  // namespace qgen
