#pragma once

#include <cstddef>
#include <cstdint>
#include <span>
#include <string>
#include <string_view>
#include <vector>

#include "qgen/corpus.hpp"
#include "qgen/text.hpp"

namespace qgen {

struct MatchConfig {
    double author_threshold = 0.5;
    double title_threshold = 0.8;
    double year_threshold = 1.0;

    void validate() const;
};

/// 1 - min(|y1 - y2|, 10) / 10
double year_sim(int y1, int y2);

/// Fraction of names paired by a maximum one-to-one matching, relative to the
/// longer list. Two names agree when their last names agree and so do their
/// first initials; a name without a first name agrees on the last name alone.
double author_sim(std::span<const std::string> a, std::span<const std::string> b);
double author_sim(std::span<const PersonName> a, std::span<const PersonName> b);

/// Dice coefficient over the character-trigram multisets of the normalized titles.
double title_sim(std::string_view a, std::string_view b);

/// Precomputed comparison keys of one publication.
struct MatchProfile {
    int year = 0;
    std::vector<PersonName> names;
    std::vector<std::uint64_t> trigrams;  // sorted multiset
    std::string normalized_title;
};

MatchProfile make_profile(const Publication& pub);
std::vector<MatchProfile> make_profiles(std::span<const Publication> pubs);

/// Character trigrams of already-normalized text, sorted. Texts shorter than
/// three code points yield a single gram of the whole text.
std::vector<std::uint64_t> trigram_multiset(std::string_view normalized);
double dice(std::span<const std::uint64_t> a, std::span<const std::uint64_t> b);

struct MatchPair {
    std::size_t s;  // position in S
    std::size_t t;  // position in T
    double author_sim;
    double title_sim;
    double year_sim;
};

/// M subset of S x T, ordered by (s, t). Many-to-many.
struct MatchMapping {
    std::vector<MatchPair> pairs;

    /// Distinct S positions, ascending.
    std::vector<std::size_t> domain() const;
    /// Distinct T positions, ascending.
    std::vector<std::size_t> range() const;
};

MatchMapping match(std::span<const MatchProfile> s, std::span<const MatchProfile> t, const MatchConfig& config);
/// Same, with T given as pointers into a shared profile table.
MatchMapping match(std::span<const MatchProfile> s, std::span<const MatchProfile* const> t, const MatchConfig& config);
MatchMapping match(std::span<const Publication> s, std::span<const Publication> t, const MatchConfig& config);

}  // namespace qgen
