#pragma once

#include <cstdint>
#include <filesystem>
#include <iosfwd>
#include <optional>
#include <span>
#include <string>
#include <string_view>
#include <unordered_map>
#include <vector>

#include "qgen/capabilities.hpp"
#include "qgen/corpus.hpp"

namespace qgen {

using EntityRef = std::uint32_t;  // position of an entity inside an EngineIndex
using TokenId = std::uint32_t;

inline constexpr TokenId kUnknownToken = 0xffffffffU;

/// Token sequences of one entity, as term ids.
struct EntityFields {
    std::vector<std::vector<TokenId>> authors;  // one sequence per author name
    std::vector<TokenId> authors_flat;
    std::vector<TokenId> title;
    std::vector<TokenId> year;  // the year as a single token
    std::vector<TokenId> venue;
    std::vector<TokenId> all;   // authors, title, year, venue concatenated (the free field)
};

/// Immutable searchable collection with a deterministic static rank.
class EngineIndex {
public:
    EngineIndex() = default;
    /// popularity[i] orders entries: higher popularity gets a better (smaller)
    /// static rank; ties go to the smaller id. Ids must be unique.
    EngineIndex(std::vector<Publication> entries, std::span<const double> popularity);

    std::size_t size() const noexcept { return entries_.size(); }
    const Publication& entity(EntityRef ref) const { return entries_[ref]; }
    std::span<const Publication> entities() const noexcept { return entries_; }
    const EntityFields& fields(EntityRef ref) const { return fields_[ref]; }
    std::uint32_t static_rank(EntityRef ref) const { return static_rank_[ref]; }
    std::optional<EntityRef> find(std::string_view id) const;

    /// kUnknownToken when no entity contains the token.
    TokenId token_id(std::string_view token) const;

    /// Entities whose field contains the token, ascending by ref.
    std::span<const EntityRef> postings(Field field, TokenId token) const;
    std::span<const EntityRef> free_postings(TokenId token) const;

private:
    struct PostingLists {
        std::unordered_map<TokenId, std::vector<EntityRef>> lists;
    };

    std::vector<Publication> entries_;
    std::vector<EntityFields> fields_;
    std::vector<std::uint32_t> static_rank_;
    std::unordered_map<std::string, EntityRef> by_id_;
    std::unordered_map<std::string, TokenId> vocabulary_;
    PostingLists field_postings_[4];
    PostingLists free_postings_;
};

}  // namespace qgen
