#pragma once

#include <cstdint>
#include <span>
#include <string>
#include <vector>

#include "qgen/capabilities.hpp"
#include "qgen/corpus.hpp"
#include "qgen/index.hpp"
#include "qgen/query.hpp"

namespace qgen {

/// Reference matcher over raw strings. The predicate decides which field is
/// tested: field-scoped predicates see only their field, free sees all fields.
///
///   keywords  every token occurs in the field
///   phrase    the phrase tokens occur as a contiguous run
///   pattern   literals occur in order, each wildcard consuming exactly one token
///   value     the field's tokens equal the value's tokens; years compare as
///             integers; authors compare per name; free compares per field
bool term_matches(const Publication& entity, const PredicateDescriptor& predicate, const SearchValue& value);

struct ResultPage {
    std::uint64_t query_id = 0;  // fnv1a64 of the query's textual form
    int page = 1;
    std::vector<EntityRef> entities;
    bool has_next = false;
};

struct RankedEntity {
    EntityRef ref;
    double score;  // best fraction of satisfied terms over the disjuncts
};

/// Every entity that matches the query, best first. An entity matches a
/// basic query when the fraction of satisfied terms reaches the soft-AND
/// threshold, and the query when it matches any disjunct. Ties on score fall
/// back to the index's static rank. Throws RejectedQuery for invalid queries.
std::vector<RankedEntity> rank_matches(const EngineIndex& index, const Query& query, const EngineCapabilities& caps);

/// Cuts the 1-based page out of a ranked match list. Pages past the last one,
/// or past caps.max_pages, come back empty with has_next = false.
ResultPage slice_page(std::span<const RankedEntity> ranked, std::uint64_t query_id, int page,
                      const EngineCapabilities& caps);

/// One request: the 1-based page of rank_matches. Pages past the last one,
/// or past caps.max_pages, come back empty with has_next = false.
ResultPage execute(const EngineIndex& index, const Query& query, int page, const EngineCapabilities& caps);

}  // namespace qgen
