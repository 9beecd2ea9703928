#include "qgen/capabilities.hpp"

#include <algorithm>
#include <fstream>
#include <ostream>

#include "qgen/error.hpp"
#include "qgen/record_format.hpp"
#include "qgen/text.hpp"

namespace qgen {

std::string_view to_string(ValueKind kind) {
    switch (kind) {
        case ValueKind::Value: return "value";
        case ValueKind::Keywords: return "keywords";
        case ValueKind::Phrase: return "phrase";
        case ValueKind::Pattern: return "pattern";
    }
    return "?";
}

std::optional<ValueKind> parse_value_kind(std::string_view name) {
    for (auto k : {ValueKind::Value, ValueKind::Keywords, ValueKind::Phrase, ValueKind::Pattern}) {
        if (to_string(k) == name) return k;
    }
    return std::nullopt;
}

std::string_view to_string(Field field) {
    switch (field) {
        case Field::Authors: return "authors";
        case Field::Title: return "title";
        case Field::Year: return "year";
        case Field::Venue: return "venue";
    }
    return "?";
}

std::optional<Field> parse_field(std::string_view name) {
    for (auto f : {Field::Authors, Field::Title, Field::Year, Field::Venue}) {
        if (to_string(f) == name) return f;
    }
    return std::nullopt;
}

bool PredicateDescriptor::accepts(ValueKind kind) const {
    return std::find(kinds.begin(), kinds.end(), kind) != kinds.end();
}

const PredicateDescriptor* EngineCapabilities::find(std::string_view predicate) const {
    for (const auto& p : predicates) {
        if (p.name == predicate) return &p;
    }
    return nullptr;
}

void EngineCapabilities::validate() const {
    if (page_size < 1) throw Error("page_size must be at least 1");
    if (max_pages < 1) throw Error("max_pages must be at least 1");
    if (max_disjuncts < 1) throw Error("max_disjuncts must be at least 1");
    if (!supports_or && max_disjuncts != 1) throw Error("max_disjuncts must be 1 when OR is not supported");
    if (!(soft_and_threshold > 0.0 && soft_and_threshold <= 1.0)) throw Error("soft_and_threshold must lie in (0, 1]");
    if (predicates.empty()) throw Error("capabilities declare no predicates");
    for (std::size_t i = 0; i < predicates.size(); ++i) {
        const auto& p = predicates[i];
        if (p.name.empty()) throw Error("predicate without a name");
        if (p.kinds.empty()) throw Error("predicate '" + p.name + "' accepts no value kind");
        for (std::size_t j = 0; j < i; ++j) {
            if (predicates[j].name == p.name) throw Error("predicate '" + p.name + "' declared twice");
        }
    }
}

EngineCapabilities scholar_profile() {
    using enum ValueKind;
    EngineCapabilities caps;
    caps.profile = "scholar";
    caps.predicates = {
        {"intitle", PredicateScope::FieldScoped, Field::Title, {Value, Keywords, Phrase, Pattern}},
        {"author", PredicateScope::FieldScoped, Field::Authors, {Value, Keywords, Phrase}},
        {"year", PredicateScope::FieldScoped, Field::Year, {Value}},
        {"free", PredicateScope::Free, Field::Title, {Value, Keywords, Phrase, Pattern}},
    };
    caps.supports_or = true;
    caps.max_disjuncts = 10;
    caps.page_size = 100;
    caps.max_pages = 10;
    caps.soft_and_threshold = 1.0;
    return caps;
}

EngineCapabilities read_capabilities(std::istream& in, const std::string& source) {
    const auto file = read_records(in, kCapsFormat, source);
    EngineCapabilities caps;
    bool have_engine = false;
    for (const auto& r : file.records) {
        if (r.first_key() == "engine") {
            if (have_engine) r.fail("duplicate engine record");
            have_engine = true;
            caps.profile = r.get("engine");
            caps.page_size = static_cast<int>(r.get_int("page_size"));
            caps.max_pages = static_cast<int>(r.get_int("max_pages"));
            caps.supports_or = r.get_bool("supports_or");
            caps.max_disjuncts = static_cast<int>(r.get_int("max_disjuncts"));
            caps.soft_and_threshold = r.get_double("soft_and_threshold");
        } else if (r.first_key() == "predicate") {
            PredicateDescriptor p;
            p.name = r.get("predicate");
            const auto scope = r.get("scope");
            if (scope == "free") {
                p.scope = PredicateScope::Free;
            } else {
                const auto field = parse_field(scope);
                if (!field) r.fail("unknown predicate scope '" + scope + "' (expected free or a field name)");
                p.scope = PredicateScope::FieldScoped;
                p.field = *field;
            }
            for (const auto& k : r.get_list("kinds")) {
                const auto kind = parse_value_kind(k);
                if (!kind) r.fail("unknown value kind '" + k + "'");
                p.kinds.push_back(*kind);
            }
            caps.predicates.push_back(std::move(p));
        } else {
            r.fail("unknown record type '" + std::string(r.first_key()) + "'");
        }
    }
    if (!have_engine) throw ParseError(source, 1, "missing engine record");
    try {
        caps.validate();
    } catch (const ParseError&) {
        throw;
    } catch (const Error& e) {
        throw Error(source + ": " + e.what());
    }
    return caps;
}

EngineCapabilities load_capabilities(const std::filesystem::path& path) {
    std::ifstream in(path);
    if (!in) throw Error("cannot open capabilities " + path.string());
    return read_capabilities(in, path.string());
}

void write_capabilities(std::ostream& out, const EngineCapabilities& caps) {
    RecordWriter w(out, kCapsFormat);
    w.field("engine", caps.profile)
        .field("page_size", caps.page_size)
        .field("max_pages", caps.max_pages)
        .field("supports_or", caps.supports_or ? "true" : "false")
        .field("max_disjuncts", caps.max_disjuncts)
        .field("soft_and_threshold", std::to_string(caps.soft_and_threshold));
    w.end_record();
    for (const auto& p : caps.predicates) {
        std::vector<std::string> kinds;
        for (auto k : p.kinds) kinds.emplace_back(to_string(k));
        w.field("predicate", p.name)
            .field("scope", p.scope == PredicateScope::Free ? std::string_view("free") : to_string(p.field))
            .list("kinds", kinds);
        w.end_record();
    }
}

}  // namespace qgen
