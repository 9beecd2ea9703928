#include "qgen/index.hpp"

#include <algorithm>
#include <numeric>

#include "qgen/error.hpp"
#include "qgen/text.hpp"

namespace qgen {

namespace {

std::size_t field_slot(Field field) { return static_cast<std::size_t>(field); }

void add_posting(std::unordered_map<TokenId, std::vector<EntityRef>>& lists, TokenId token, EntityRef ref) {
    auto& list = lists[token];
    if (list.empty() || list.back() != ref) list.push_back(ref);
}

}  // namespace

EngineIndex::EngineIndex(std::vector<Publication> entries, std::span<const double> popularity)
    : entries_(std::move(entries)) {
    if (!popularity.empty() && popularity.size() != entries_.size()) {
        throw Error("popularity must have one value per index entry");
    }
    const auto intern = [this](const std::string& token) {
        const auto [it, inserted] = vocabulary_.emplace(token, static_cast<TokenId>(vocabulary_.size()));
        return it->second;
    };
    const auto intern_all = [&](std::string_view text) {
        std::vector<TokenId> ids;
        for (const auto& t : tokenize(text)) ids.push_back(intern(t));
        return ids;
    };

    fields_.resize(entries_.size());
    by_id_.reserve(entries_.size());
    for (std::size_t i = 0; i < entries_.size(); ++i) {
        const auto& p = entries_[i];
        const auto ref = static_cast<EntityRef>(i);
        if (!by_id_.emplace(p.id, ref).second) throw Error("duplicate index entry id '" + p.id + "'");

        auto& f = fields_[i];
        for (const auto& name : p.authors) {
            f.authors.push_back(intern_all(name));
            f.authors_flat.insert(f.authors_flat.end(), f.authors.back().begin(), f.authors.back().end());
        }
        f.title = intern_all(p.title);
        f.year = {intern(std::to_string(p.year))};
        f.venue = intern_all(p.venue);
        f.all = f.authors_flat;
        f.all.insert(f.all.end(), f.title.begin(), f.title.end());
        f.all.insert(f.all.end(), f.year.begin(), f.year.end());
        f.all.insert(f.all.end(), f.venue.begin(), f.venue.end());

        const std::pair<Field, const std::vector<TokenId>*> scoped[] = {
            {Field::Authors, &f.authors_flat}, {Field::Title, &f.title}, {Field::Year, &f.year}, {Field::Venue, &f.venue}};
        for (const auto& [field, tokens] : scoped) {
            for (auto t : *tokens) add_posting(field_postings_[field_slot(field)].lists, t, ref);
        }
        for (auto t : f.all) add_posting(free_postings_.lists, t, ref);
    }

    std::vector<EntityRef> order(entries_.size());
    std::iota(order.begin(), order.end(), EntityRef{0});
    std::sort(order.begin(), order.end(), [&](EntityRef a, EntityRef b) {
        const double pa = popularity.empty() ? 0.0 : popularity[a];
        const double pb = popularity.empty() ? 0.0 : popularity[b];
        if (pa != pb) return pa > pb;
        return entries_[a].id < entries_[b].id;
    });
    static_rank_.resize(entries_.size());
    for (std::size_t r = 0; r < order.size(); ++r) static_rank_[order[r]] = static_cast<std::uint32_t>(r);
}

std::optional<EntityRef> EngineIndex::find(std::string_view id) const {
    const auto it = by_id_.find(std::string(id));
    if (it == by_id_.end()) return std::nullopt;
    return it->second;
}

TokenId EngineIndex::token_id(std::string_view token) const {
    const auto it = vocabulary_.find(std::string(token));
    return it == vocabulary_.end() ? kUnknownToken : it->second;
}

std::span<const EntityRef> EngineIndex::postings(Field field, TokenId token) const {
    const auto& lists = field_postings_[field_slot(field)].lists;
    const auto it = lists.find(token);
    if (it == lists.end()) return {};
    return it->second;
}

std::span<const EntityRef> EngineIndex::free_postings(TokenId token) const {
    const auto it = free_postings_.lists.find(token);
    if (it == free_postings_.lists.end()) return {};
    return it->second;
}

}  // namespace qgen
