#include "qgen/generators.hpp"

#include <algorithm>
#include <fstream>
#include <map>
#include <ostream>
#include <set>

#include "qgen/record_format.hpp"

namespace qgen {

std::string_view to_string(Attribute a) {
    switch (a) {
        case Attribute::Authors: return "authors";
        case Attribute::Title: return "title";
        case Attribute::Year: return "year";
        case Attribute::Venue: return "venue";
    }
    return "?";
}

std::optional<Attribute> parse_attribute(std::string_view name) {
    for (auto a : {Attribute::Authors, Attribute::Title, Attribute::Year, Attribute::Venue}) {
        if (to_string(a) == name) return a;
    }
    return std::nullopt;
}

std::string_view to_string(ValueGen v) {
    switch (v) {
        case ValueGen::Keywords: return "keywords";
        case ValueGen::Phrase: return "phrase";
        case ValueGen::Pattern: return "pattern";
        case ValueGen::GsAuthors: return "gs_authors";
        case ValueGen::Value: return "value";
    }
    return "?";
}

std::optional<ValueGen> parse_value_gen(std::string_view name) {
    for (auto v : {ValueGen::Keywords, ValueGen::Phrase, ValueGen::Pattern, ValueGen::GsAuthors, ValueGen::Value}) {
        if (to_string(v) == name) return v;
    }
    return std::nullopt;
}

ValueKind emitted_kind(ValueGen v) {
    switch (v) {
        case ValueGen::Keywords: return ValueKind::Keywords;
        case ValueGen::Phrase: return ValueKind::Phrase;
        case ValueGen::Pattern: return ValueKind::Pattern;
        case ValueGen::GsAuthors: return ValueKind::Keywords;
        case ValueGen::Value: return ValueKind::Value;
    }
    return ValueKind::Keywords;
}

namespace {

bool applicable(ValueGen gen, Attribute attribute) {
    switch (gen) {
        case ValueGen::Phrase:
        case ValueGen::Pattern: return attribute == Attribute::Title;
        case ValueGen::GsAuthors: return attribute == Attribute::Authors;
        case ValueGen::Value: return attribute == Attribute::Year || attribute == Attribute::Venue;
        case ValueGen::Keywords: return attribute == Attribute::Title || attribute == Attribute::Venue;
    }
    return false;
}

const AttributeMapping* mapping_for(const GeneratorSpec& spec, Attribute attribute) {
    for (const auto& m : spec.mapping) {
        if (m.attribute == attribute) return &m;
    }
    return nullptr;
}

}  // namespace

void GeneratorSpec::validate() const {
    const auto fail = [this](const std::string& message) { throw Error("generator '" + id + "': " + message); };
    if (id.empty()) throw Error("generator id must not be empty");
    if (mapping.empty()) fail("mapping is empty");
    std::set<Attribute> mapped;
    for (const auto& m : mapping) {
        if (!mapped.insert(m.attribute).second) fail("attribute '" + std::string(to_string(m.attribute)) + "' mapped twice");
        if (m.predicate.empty()) fail("mapping without predicate");
        if (!applicable(m.value_gen, m.attribute)) {
            fail("value generation '" + std::string(to_string(m.value_gen)) + "' does not apply to attribute '" +
                 std::string(to_string(m.attribute)) + "'");
        }
        try {
            stopword_list(m.stopwords);
        } catch (const Error& e) {
            fail(e.what());
        }
    }
    if (const auto* fv = std::get_if<FrequentValuePartitioning>(&partitioning)) {
        if (fv->attributes.empty()) fail("frequent-value partitioning needs attributes");
        if (fv->min_support < 2) fail("min_support must be at least 2");
        if (fv->items_required < 1) fail("items_required must be at least 1");
        for (auto a : fv->attributes) {
            const auto* m = mapping_for(*this, a);
            if (m == nullptr) fail("partitioning attribute '" + std::string(to_string(a)) + "' is not mapped");
            if (m->value_gen == ValueGen::Phrase || m->value_gen == ValueGen::Pattern) {
                fail("anchored attribute '" + std::string(to_string(a)) + "' cannot use " +
                     std::string(to_string(m->value_gen)));
            }
        }
    }
    if (or_group && *or_group < 2) fail("OR aggregation needs k >= 2");
}

std::vector<GeneratorSpec> table3_catalog() {
    using A = Attribute;
    using V = ValueGen;
    const AttributeMapping title_kw{A::Title, "intitle", V::Keywords};
    const AttributeMapping title_phrase{A::Title, "intitle", V::Phrase};
    const AttributeMapping title_pattern{A::Title, "intitle", V::Pattern};
    const AttributeMapping authors{A::Authors, "author", V::GsAuthors};
    const AttributeMapping year{A::Year, "year", V::Value};
    const FrequentValuePartitioning pooled{{A::Authors, A::Title, A::Year}, 2, 2};

    std::vector<GeneratorSpec> specs = {
        {"1", NaivePartitioning{}, {title_kw}, std::nullopt},
        {"2", NaivePartitioning{}, {title_phrase}, std::nullopt},
        {"3", NaivePartitioning{}, {title_phrase}, 2},
        {"4", NaivePartitioning{}, {authors, title_kw, year}, std::nullopt},
        {"5", FrequentValuePartitioning{{A::Authors}, 2, 1}, {authors}, std::nullopt},
        {"6", FrequentValuePartitioning{{A::Title}, 2, 1}, {title_kw}, std::nullopt},
        {"7", pooled, {authors, title_kw, year}, std::nullopt},
        {"8", pooled,
         {{A::Authors, "free", V::GsAuthors}, {A::Title, "free", V::Keywords}, {A::Year, "free", V::Value}},
         std::nullopt},
        {"9", NaivePartitioning{}, {title_pattern}, std::nullopt},
        {"10", NaivePartitioning{}, {title_pattern}, 10},
    };
    return specs;
}

GeneratorSpec read_genspec(std::istream& in, const std::string& source) {
    const auto file = read_records(in, kGenspecFormat, source);
    GeneratorSpec spec;
    bool have_id = false;
    for (const auto& r : file.records) {
        const auto type = r.first_key();
        if (type == "id") {
            spec.id = r.get("id");
            have_id = true;
        } else if (type == "partitioning") {
            const auto kind = r.get("partitioning");
            if (kind == "naive") {
                spec.partitioning = NaivePartitioning{};
            } else if (kind == "frequent-value") {
                FrequentValuePartitioning fv;
                for (const auto& name : r.get_list("attributes")) {
                    const auto a = parse_attribute(name);
                    if (!a) r.fail("unknown attribute '" + name + "'");
                    fv.attributes.push_back(*a);
                }
                fv.min_support = static_cast<int>(r.has("min_support") ? r.get_int("min_support") : 2);
                fv.items_required = static_cast<int>(r.has("items_required") ? r.get_int("items_required") : 1);
                spec.partitioning = std::move(fv);
            } else {
                r.fail("unknown partitioning '" + kind + "' (expected naive or frequent-value)");
            }
        } else if (type == "map") {
            AttributeMapping m;
            const auto a = parse_attribute(r.get("map"));
            if (!a) r.fail("unknown attribute '" + r.get("map") + "'");
            m.attribute = *a;
            m.predicate = r.get("predicate");
            const auto v = parse_value_gen(r.get("value"));
            if (!v) r.fail("unknown value generation '" + r.get("value") + "'");
            m.value_gen = *v;
            m.stopwords = r.get_or("stopwords", "default");
            spec.mapping.push_back(std::move(m));
        } else if (type == "aggregation") {
            const auto kind = r.get("aggregation");
            if (kind == "or") {
                spec.or_group = static_cast<int>(r.get_int("k"));
            } else if (kind != "none") {
                r.fail("unknown aggregation '" + kind + "' (expected none or or)");
            }
        } else {
            r.fail("unknown record type '" + std::string(type) + "'");
        }
    }
    if (!have_id) throw ParseError(source, 1, "missing id record");
    try {
        spec.validate();
    } catch (const Error& e) {
        throw Error(source + ": " + e.what());
    }
    return spec;
}

GeneratorSpec load_genspec(const std::filesystem::path& path) {
    std::ifstream in(path);
    if (!in) throw Error("cannot open generator spec " + path.string());
    return read_genspec(in, path.string());
}

void write_genspec(std::ostream& out, const GeneratorSpec& spec) {
    RecordWriter w(out, kGenspecFormat);
    w.field("id", spec.id);
    w.end_record();
    if (const auto* fv = std::get_if<FrequentValuePartitioning>(&spec.partitioning)) {
        std::vector<std::string> attributes;
        for (auto a : fv->attributes) attributes.emplace_back(to_string(a));
        w.field("partitioning", "frequent-value")
            .list("attributes", attributes)
            .field("min_support", fv->min_support)
            .field("items_required", fv->items_required);
    } else {
        w.field("partitioning", "naive");
    }
    w.end_record();
    for (const auto& m : spec.mapping) {
        w.field("map", to_string(m.attribute))
            .field("predicate", m.predicate)
            .field("value", to_string(m.value_gen))
            .field("stopwords", m.stopwords);
        w.end_record();
    }
    if (spec.or_group) {
        w.field("aggregation", "or").field("k", *spec.or_group);
    } else {
        w.field("aggregation", "none");
    }
    w.end_record();
}

std::vector<Item> extract_items(const Publication& pub, std::span<const Attribute> attributes,
                                const StopwordList& stopwords) {
    std::set<Item> items;
    for (auto a : attributes) {
        switch (a) {
            case Attribute::Authors:
                for (const auto& name : pub.authors) {
                    auto n = normalize_name(name);
                    if (!n.empty()) items.insert({a, std::move(n)});
                }
                break;
            case Attribute::Title:
                for (auto& t : content_tokens(pub.title, stopwords)) items.insert({a, std::move(t)});
                break;
            case Attribute::Year: items.insert({a, std::to_string(pub.year)}); break;
            case Attribute::Venue: {
                auto v = normalize_text(pub.venue);
                if (!v.empty()) items.insert({a, std::move(v)});
                break;
            }
        }
    }
    return {items.begin(), items.end()};
}

std::vector<Partition> partition_naive(std::size_t input_size) {
    std::vector<Partition> out(input_size);
    for (std::size_t i = 0; i < input_size; ++i) out[i].members = {i};
    return out;
}

namespace {

void for_each_combination(const std::vector<Item>& items, std::size_t r, std::vector<Item>& current, std::size_t start,
                          std::map<std::vector<Item>, std::size_t>& counts) {
    if (current.size() == r) {
        ++counts[current];
        return;
    }
    for (std::size_t i = start; i + (r - current.size()) <= items.size(); ++i) {
        current.push_back(items[i]);
        for_each_combination(items, r, current, i + 1, counts);
        current.pop_back();
    }
}

bool contains_all(const std::vector<Item>& sorted_items, const std::vector<Item>& wanted) {
    return std::includes(sorted_items.begin(), sorted_items.end(), wanted.begin(), wanted.end());
}

}  // namespace

std::vector<Partition> partition_frequent_value(std::span<const Publication> input,
                                                const FrequentValuePartitioning& params,
                                                const StopwordList& stopwords) {
    if (params.min_support < 2) throw Error("min_support must be at least 2");
    if (params.items_required < 1) throw Error("items_required must be at least 1");
    if (params.attributes.empty()) throw Error("frequent-value partitioning needs attributes");

    std::vector<std::vector<Item>> items;
    items.reserve(input.size());
    for (const auto& p : input) items.push_back(extract_items(p, params.attributes, stopwords));

    const auto min_support = static_cast<std::size_t>(params.min_support);
    const auto r = static_cast<std::size_t>(params.items_required);
    std::vector<bool> covered(input.size(), false);
    std::vector<Partition> out;

    for (;;) {
        // Level 1: frequent single items over the uncovered entities.
        std::map<Item, std::size_t> single;
        for (std::size_t i = 0; i < input.size(); ++i) {
            if (covered[i]) continue;
            for (const auto& item : items[i]) ++single[item];
        }
        // Apriori pruning: an r-itemset can only be frequent if all its items are.
        std::map<std::vector<Item>, std::size_t> counts;
        std::vector<Item> current;
        for (std::size_t i = 0; i < input.size(); ++i) {
            if (covered[i]) continue;
            std::vector<Item> frequent;
            for (const auto& item : items[i]) {
                if (single[item] >= min_support) frequent.push_back(item);
            }
            if (frequent.size() >= r) for_each_combination(frequent, r, current, 0, counts);
        }

        const std::vector<Item>* best = nullptr;
        std::size_t best_support = 0;
        for (const auto& [itemset, support] : counts) {
            if (support > best_support) {
                best = &itemset;
                best_support = support;
            }
        }
        if (best == nullptr || best_support < min_support) break;

        Partition part;
        part.anchor = *best;
        for (std::size_t i = 0; i < input.size(); ++i) {
            if (!covered[i] && contains_all(items[i], part.anchor)) {
                part.members.push_back(i);
                covered[i] = true;
            }
        }
        out.push_back(std::move(part));
    }

    for (std::size_t i = 0; i < input.size(); ++i) {
        if (!covered[i]) out.push_back(Partition{{i}, {}});
    }
    return out;
}

GeneratedValue gen_value(const Publication& entity, const AttributeMapping& mapping, std::span<const Item> anchor,
                         const TitleContext* context) {
    std::vector<std::string> anchored;
    for (const auto& item : anchor) {
        if (item.attribute == mapping.attribute) anchored.push_back(item.value);
    }

    GeneratedValue out;
    switch (mapping.value_gen) {
        case ValueGen::Keywords: {
            if (!anchored.empty()) {
                std::vector<std::string> tokens;
                for (const auto& v : anchored) {
                    for (auto& t : tokenize(v)) tokens.push_back(std::move(t));
                }
                out.value = SearchValue::keywords(std::move(tokens));
                break;
            }
            const auto& text = mapping.attribute == Attribute::Venue ? entity.venue : entity.title;
            auto tokens = content_tokens(text, stopword_list(mapping.stopwords));
            if (tokens.empty()) {
                tokens = tokenize(text);
                out.stopword_fallback = true;
            }
            out.value = SearchValue::keywords(std::move(tokens));
            break;
        }
        case ValueGen::Phrase: out.value = SearchValue::phrase(normalize_text(entity.title)); break;
        case ValueGen::Pattern: {
            if (context == nullptr) throw Error("pattern generation needs a title context");
            auto generated = gen_pattern(entity.title, *context);
            out.value = std::move(generated.value);
            out.ambiguous_pattern = generated.ambiguous;
            break;
        }
        case ValueGen::GsAuthors: {
            std::vector<std::string> last_names;
            if (anchored.empty()) {
                last_names.push_back(parse_name(entity.authors.front()).last);
            } else {
                for (const auto& name : anchored) last_names.push_back(parse_name(name).last);
            }
            out.value = SearchValue::keywords(std::move(last_names));
            break;
        }
        case ValueGen::Value: {
            if (!anchored.empty()) {
                out.value = SearchValue::value(anchored.front());
            } else if (mapping.attribute == Attribute::Year) {
                out.value = SearchValue::value(std::to_string(entity.year));
            } else {
                out.value = SearchValue::value(mapping.attribute == Attribute::Venue ? entity.venue : entity.title);
            }
            break;
        }
    }
    return out;
}

std::optional<Rejection> check_capabilities(const GeneratorSpec& spec, const EngineCapabilities& caps) {
    using Code = Rejection::Code;
    for (const auto& m : spec.mapping) {
        const auto* pred = caps.find(m.predicate);
        if (pred == nullptr) return Rejection{Code::UnknownPredicate, m.predicate};
        const auto kind = emitted_kind(m.value_gen);
        if (!pred->accepts(kind)) {
            return Rejection{Code::UnsupportedValueKind, "(" + m.predicate + ", " + std::string(to_string(kind)) + ")"};
        }
    }
    if (spec.or_group) {
        if (!caps.supports_or) return Rejection{Code::OrNotSupported, "OR(" + std::to_string(*spec.or_group) + ")"};
        if (*spec.or_group > caps.max_disjuncts) {
            return Rejection{Code::TooManyDisjuncts, "OR(" + std::to_string(*spec.or_group) + ") exceeds max_disjuncts " +
                                                         std::to_string(caps.max_disjuncts)};
        }
    }
    return std::nullopt;
}

QueryPlan build_plan(const GeneratorSpec& spec, std::span<const Publication> input, const EngineCapabilities& caps,
                     const TitleContext* context) {
    spec.validate();
    if (auto rejection = check_capabilities(spec, caps)) throw RejectedQuery(std::move(*rejection));

    QueryPlan plan;
    plan.generator_id = spec.id;
    if (const auto* fv = std::get_if<FrequentValuePartitioning>(&spec.partitioning)) {
        const auto* title = mapping_for(spec, Attribute::Title);
        plan.partitions = partition_frequent_value(input, *fv, stopword_list(title ? title->stopwords : "default"));
    } else {
        plan.partitions = partition_naive(input.size());
    }

    std::vector<BasicQuery> basics;
    for (const auto& part : plan.partitions) {
        const auto& entity = input[part.members.front()];
        BasicQuery basic;
        for (const auto& m : spec.mapping) {
            const bool anchored_attribute = std::any_of(part.anchor.begin(), part.anchor.end(),
                                                        [&](const Item& i) { return i.attribute == m.attribute; });
            // Anchored partitions query only the attributes their anchor items come from.
            if (!part.anchor.empty() && !anchored_attribute) continue;
            auto generated = gen_value(entity, m, part.anchor, context);
            plan.stopword_fallbacks += generated.stopword_fallback ? 1 : 0;
            plan.ambiguous_patterns += generated.ambiguous_pattern ? 1 : 0;
            basic.terms.push_back({m.predicate, std::move(generated.value)});
        }
        basics.push_back(std::move(basic));
    }

    const std::size_t k = spec.or_group ? static_cast<std::size_t>(*spec.or_group) : 1;
    for (std::size_t start = 0; start < basics.size(); start += k) {
        PlannedQuery planned;
        for (std::size_t i = start; i < std::min(basics.size(), start + k); ++i) {
            planned.query.disjuncts.push_back(std::move(basics[i]));
            planned.partitions.push_back(i);
        }
        if (auto rejection = validate(planned.query, caps)) throw RejectedQuery(std::move(*rejection));
        plan.queries.push_back(std::move(planned));
    }
    return plan;
}

}  // namespace qgen
