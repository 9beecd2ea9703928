#include "qgen/engine.hpp"

#include <algorithm>
#include <charconv>
#include <limits>
#include <unordered_map>

#include "qgen/random.hpp"
#include "qgen/text.hpp"

namespace qgen {

namespace {

// Matching primitives, shared by the string-based reference path and the
// token-id path of the index so both implement one semantics.

template <class T>
bool contains_all(const std::vector<T>& field, const std::vector<T>& tokens) {
    return std::all_of(tokens.begin(), tokens.end(),
                       [&](const T& t) { return std::find(field.begin(), field.end(), t) != field.end(); });
}

template <class T>
bool contains_run(const std::vector<T>& field, const std::vector<T>& run) {
    if (run.empty()) return false;
    return std::search(field.begin(), field.end(), run.begin(), run.end()) != field.end();
}

template <class T>
bool matches_window(const std::vector<T>& field, const std::vector<std::optional<T>>& pattern) {
    if (pattern.empty() || pattern.size() > field.size()) return false;
    for (std::size_t start = 0; start + pattern.size() <= field.size(); ++start) {
        bool ok = true;
        for (std::size_t i = 0; i < pattern.size() && ok; ++i) {
            if (pattern[i] && *pattern[i] != field[start + i]) ok = false;
        }
        if (ok) return true;
    }
    return false;
}

template <class T>
bool equals(const std::vector<T>& field, const std::vector<T>& tokens) {
    return !tokens.empty() && field == tokens;
}

/// One entity's fields, as token sequences of type T.
template <class T>
struct FieldView {
    const std::vector<std::vector<T>>* authors;
    const std::vector<T>* authors_flat;
    const std::vector<T>* title;
    const std::vector<T>* year;
    const std::vector<T>* venue;
    const std::vector<T>* all;

    const std::vector<T>& scoped(Field f) const {
        switch (f) {
            case Field::Authors: return *authors_flat;
            case Field::Title: return *title;
            case Field::Year: return *year;
            case Field::Venue: return *venue;
        }
        return *title;
    }
};

/// The search value translated into tokens of type T. `year_token` is the
/// canonical year token for value searches on the year field.
template <class T>
struct CompiledValue {
    ValueKind kind;
    std::vector<T> tokens;
    std::vector<std::optional<T>> pattern;
    std::optional<T> year_token;
    bool impossible = false;  // a required token cannot occur anywhere
};

template <class T>
bool per_name(const std::vector<std::vector<T>>& names, const CompiledValue<T>& v) {
    for (const auto& name : names) {
        switch (v.kind) {
            case ValueKind::Value:
                if (equals(name, v.tokens)) return true;
                break;
            case ValueKind::Phrase:
                if (contains_run(name, v.tokens)) return true;
                break;
            case ValueKind::Pattern:
                if (matches_window(name, v.pattern)) return true;
                break;
            case ValueKind::Keywords:
                break;
        }
    }
    return false;
}

template <class T>
bool field_matches(const FieldView<T>& view, Field field, const CompiledValue<T>& v) {
    if (field == Field::Year && v.kind == ValueKind::Value) {
        return v.year_token && view.year->front() == *v.year_token;
    }
    if (field == Field::Authors && v.kind != ValueKind::Keywords) return per_name(*view.authors, v);
    const auto& tokens = view.scoped(field);
    switch (v.kind) {
        case ValueKind::Value: return equals(tokens, v.tokens);
        case ValueKind::Keywords: return !v.tokens.empty() && contains_all(tokens, v.tokens);
        case ValueKind::Phrase: return contains_run(tokens, v.tokens);
        case ValueKind::Pattern: return matches_window(tokens, v.pattern);
    }
    return false;
}

template <class T>
bool view_matches(const FieldView<T>& view, const PredicateDescriptor& pred, const CompiledValue<T>& v) {
    if (v.impossible) return false;
    if (pred.scope == PredicateScope::FieldScoped) return field_matches(view, pred.field, v);
    if (v.kind == ValueKind::Value) {
        for (auto f : {Field::Authors, Field::Title, Field::Year, Field::Venue}) {
            if (field_matches(view, f, v)) return true;
        }
        return false;
    }
    switch (v.kind) {
        case ValueKind::Keywords: return !v.tokens.empty() && contains_all(*view.all, v.tokens);
        case ValueKind::Phrase: return contains_run(*view.all, v.tokens);
        case ValueKind::Pattern: return matches_window(*view.all, v.pattern);
        case ValueKind::Value: break;
    }
    return false;
}

std::optional<int> parse_year(std::string_view text) {
    const auto t = trim(text);
    int year = 0;
    const auto [ptr, ec] = std::from_chars(t.data(), t.data() + t.size(), year);
    if (ec != std::errc() || ptr != t.data() + t.size() || t.empty()) return std::nullopt;
    return year;
}

/// Search value tokens as lowercase strings.
CompiledValue<std::string> compile_strings(const SearchValue& value) {
    CompiledValue<std::string> c{value.kind, {}, {}, std::nullopt};
    switch (value.kind) {
        case ValueKind::Value:
            c.tokens = tokenize(value.text);
            if (const auto y = parse_year(value.text)) c.year_token = std::to_string(*y);
            break;
        case ValueKind::Phrase: c.tokens = tokenize(value.text); break;
        case ValueKind::Keywords:
            for (const auto& raw : value.tokens) {
                auto toks = tokenize(raw);
                c.tokens.insert(c.tokens.end(), toks.begin(), toks.end());
            }
            break;
        case ValueKind::Pattern:
            for (const auto& item : value.pattern) {
                if (!item) {
                    c.pattern.emplace_back(std::nullopt);
                    continue;
                }
                for (auto& t : tokenize(*item)) c.pattern.emplace_back(std::move(t));
            }
            break;
    }
    return c;
}

CompiledValue<TokenId> compile_ids(const EngineIndex& index, const SearchValue& value) {
    const auto s = compile_strings(value);
    CompiledValue<TokenId> c{s.kind, {}, {}, std::nullopt};
    const auto id = [&](const std::string& t) {
        const auto tid = index.token_id(t);
        if (tid == kUnknownToken) c.impossible = true;
        return tid;
    };
    for (const auto& t : s.tokens) c.tokens.push_back(id(t));
    for (const auto& item : s.pattern) c.pattern.push_back(item ? std::optional<TokenId>(id(*item)) : std::nullopt);
    if (s.year_token) {
        const auto tid = index.token_id(*s.year_token);
        if (tid != kUnknownToken) c.year_token = tid;
    }
    // An unknown token only rules out a year value search when no year token resolves.
    if (value.kind == ValueKind::Value && c.year_token) c.impossible = false;
    return c;
}

struct StringFields {
    std::vector<std::vector<std::string>> authors;
    std::vector<std::string> authors_flat, title, year, venue, all;
};

StringFields string_fields(const Publication& p) {
    StringFields f;
    for (const auto& name : p.authors) {
        f.authors.push_back(tokenize(name));
        f.authors_flat.insert(f.authors_flat.end(), f.authors.back().begin(), f.authors.back().end());
    }
    f.title = tokenize(p.title);
    f.year = {std::to_string(p.year)};
    f.venue = tokenize(p.venue);
    f.all = f.authors_flat;
    for (const auto* part : {&f.title, &f.year, &f.venue}) f.all.insert(f.all.end(), part->begin(), part->end());
    return f;
}

/// Entities matching one term, ascending by ref.
std::vector<EntityRef> term_entities(const EngineIndex& index, const PredicateDescriptor& pred, const SearchValue& value) {
    const auto c = compile_ids(index, value);
    if (c.impossible && !(value.kind == ValueKind::Value && c.year_token)) return {};

    // Literal tokens that every match must contain, whatever field it occurs in.
    std::vector<TokenId> required = c.tokens;
    for (const auto& item : c.pattern) {
        if (item) required.push_back(*item);
    }
    const bool year_value = value.kind == ValueKind::Value && c.year_token &&
                            (pred.scope == PredicateScope::Free || pred.field == Field::Year);
    const bool free_value = value.kind == ValueKind::Value && pred.scope == PredicateScope::Free;

    const auto postings_of = [&](TokenId t) {
        return pred.scope == PredicateScope::Free ? index.free_postings(t) : index.postings(pred.field, t);
    };

    std::vector<EntityRef> candidates;
    if (free_value) {
        // Either the year or the other fields can satisfy the value; scan both posting sources.
        if (c.year_token) {
            const auto p = index.postings(Field::Year, *c.year_token);
            candidates.assign(p.begin(), p.end());
        }
        if (!required.empty() && !c.impossible) {
            const auto best = *std::min_element(required.begin(), required.end(), [&](TokenId a, TokenId b) {
                return postings_of(a).size() < postings_of(b).size();
            });
            const auto p = postings_of(best);
            std::vector<EntityRef> merged;
            std::set_union(candidates.begin(), candidates.end(), p.begin(), p.end(), std::back_inserter(merged));
            candidates = std::move(merged);
        }
    } else if (year_value) {
        const auto p = index.postings(Field::Year, *c.year_token);
        candidates.assign(p.begin(), p.end());
    } else {
        if (required.empty()) return {};
        const auto best = *std::min_element(required.begin(), required.end(), [&](TokenId a, TokenId b) {
            return postings_of(a).size() < postings_of(b).size();
        });
        const auto p = postings_of(best);
        candidates.assign(p.begin(), p.end());
    }

    std::vector<EntityRef> out;
    for (auto ref : candidates) {
        const auto& f = index.fields(ref);
        const FieldView<TokenId> view{&f.authors, &f.authors_flat, &f.title, &f.year, &f.venue, &f.all};
        if (view_matches(view, pred, c)) out.push_back(ref);
    }
    return out;
}

}  // namespace

bool term_matches(const Publication& entity, const PredicateDescriptor& predicate, const SearchValue& value) {
    const auto f = string_fields(entity);
    const FieldView<std::string> view{&f.authors, &f.authors_flat, &f.title, &f.year, &f.venue, &f.all};
    return view_matches(view, predicate, compile_strings(value));
}

std::vector<RankedEntity> rank_matches(const EngineIndex& index, const Query& query, const EngineCapabilities& caps) {
    if (auto rejection = validate(query, caps)) throw RejectedQuery(std::move(*rejection));

    std::unordered_map<EntityRef, double> best;
    for (const auto& basic : query.disjuncts) {
        std::unordered_map<EntityRef, std::size_t> satisfied;
        for (const auto& term : basic.terms) {
            for (auto ref : term_entities(index, *caps.find(term.predicate), term.value)) ++satisfied[ref];
        }
        const auto n = static_cast<double>(basic.terms.size());
        for (const auto& [ref, count] : satisfied) {
            const double score = static_cast<double>(count) / n;
            if (score + 1e-12 < caps.soft_and_threshold) continue;
            auto& slot = best[ref];
            slot = std::max(slot, score);
        }
    }

    std::vector<RankedEntity> ranked;
    ranked.reserve(best.size());
    for (const auto& [ref, score] : best) ranked.push_back({ref, score});
    std::sort(ranked.begin(), ranked.end(), [&](const RankedEntity& a, const RankedEntity& b) {
        if (a.score != b.score) return a.score > b.score;
        return index.static_rank(a.ref) < index.static_rank(b.ref);
    });
    return ranked;
}

ResultPage slice_page(std::span<const RankedEntity> ranked, std::uint64_t query_id, int page,
                      const EngineCapabilities& caps) {
    if (page < 1) throw Error("page numbers start at 1");
    ResultPage result;
    result.query_id = query_id;
    result.page = page;
    if (page > caps.max_pages) return result;

    const auto z = static_cast<std::size_t>(caps.page_size);
    const auto begin = static_cast<std::size_t>(page - 1) * z;
    if (begin >= ranked.size()) return result;
    const auto end = std::min(ranked.size(), begin + z);
    for (auto i = begin; i < end; ++i) result.entities.push_back(ranked[i].ref);
    result.has_next = end < ranked.size() && page < caps.max_pages;
    return result;
}

ResultPage execute(const EngineIndex& index, const Query& query, int page, const EngineCapabilities& caps) {
    if (page < 1) throw Error("page numbers start at 1");
    const auto ranked = rank_matches(index, query, caps);
    return slice_page(ranked, fnv1a64(to_string(query)), page, caps);
}

}  // namespace qgen
