#pragma once

#include <compare>
#include <cstddef>
#include <filesystem>
#include <iosfwd>
#include <optional>
#include <span>
#include <string>
#include <string_view>
#include <variant>
#include <vector>

#include "qgen/capabilities.hpp"
#include "qgen/corpus.hpp"
#include "qgen/error.hpp"
#include "qgen/pattern.hpp"
#include "qgen/query.hpp"
#include "qgen/text.hpp"

namespace qgen {

enum class Attribute { Authors, Title, Year, Venue };

std::string_view to_string(Attribute a);
std::optional<Attribute> parse_attribute(std::string_view name);

enum class ValueGen { Keywords, Phrase, Pattern, GsAuthors, Value };

std::string_view to_string(ValueGen v);
std::optional<ValueGen> parse_value_gen(std::string_view name);
/// The engine value kind a generation function emits.
ValueKind emitted_kind(ValueGen v);

struct NaivePartitioning {
    friend bool operator==(const NaivePartitioning&, const NaivePartitioning&) = default;
};

struct FrequentValuePartitioning {
    std::vector<Attribute> attributes;
    int min_support = 2;
    int items_required = 1;

    friend bool operator==(const FrequentValuePartitioning&, const FrequentValuePartitioning&) = default;
};

using Partitioning = std::variant<NaivePartitioning, FrequentValuePartitioning>;

struct AttributeMapping {
    Attribute attribute = Attribute::Title;
    std::string predicate;
    ValueGen value_gen = ValueGen::Keywords;
    std::string stopwords = "default";  // stopword-list id, used by Keywords

    friend bool operator==(const AttributeMapping&, const AttributeMapping&) = default;
};

/// The four building blocks of one query generator.
struct GeneratorSpec {
    std::string id;
    Partitioning partitioning;
    std::vector<AttributeMapping> mapping;
    std::optional<int> or_group;  // OR(k) aggregation

    void validate() const;

    friend bool operator==(const GeneratorSpec&, const GeneratorSpec&) = default;
};

/// The ten generators evaluated against the Scholar-like profile, ids "1".."10".
std::vector<GeneratorSpec> table3_catalog();

inline constexpr std::string_view kGenspecFormat = "qf-genspec-1";

GeneratorSpec read_genspec(std::istream& in, const std::string& source = "<stream>");
GeneratorSpec load_genspec(const std::filesystem::path& path);
void write_genspec(std::ostream& out, const GeneratorSpec& spec);

/// A frequent attribute value. Authors are normalized full names, titles
/// contribute non-stopword tokens, years their decimal form.
struct Item {
    Attribute attribute;
    std::string value;

    friend auto operator<=>(const Item&, const Item&) = default;
    friend bool operator==(const Item&, const Item&) = default;
};

std::vector<Item> extract_items(const Publication& pub, std::span<const Attribute> attributes,
                                const StopwordList& stopwords);

struct Partition {
    std::vector<std::size_t> members;  // positions in the input set
    std::vector<Item> anchor;          // empty for unanchored partitions
};

std::vector<Partition> partition_naive(std::size_t input_size);

/// Greedy Apriori partitioning: mine itemsets of exactly items_required items
/// over the still-uncovered entities, take the one with the highest support
/// (lexicographically smallest on ties) as a partition, and repeat until no
/// itemset reaches min_support. Leftovers become unanchored singletons.
std::vector<Partition> partition_frequent_value(std::span<const Publication> input,
                                                const FrequentValuePartitioning& params,
                                                const StopwordList& stopwords);

struct GeneratedValue {
    SearchValue value;
    bool stopword_fallback = false;  // every token was a stopword
    bool ambiguous_pattern = false;
};

/// Search value for one mapped attribute of one entity. Anchor items of the
/// mapped attribute replace the entity's own value when present.
GeneratedValue gen_value(const Publication& entity, const AttributeMapping& mapping, std::span<const Item> anchor,
                         const TitleContext* context);

struct PlannedQuery {
    Query query;
    std::vector<std::size_t> partitions;  // positions in QueryPlan::partitions
};

struct QueryPlan {
    std::string generator_id;
    std::vector<Partition> partitions;
    std::vector<PlannedQuery> queries;
    std::size_t stopword_fallbacks = 0;
    std::size_t ambiguous_patterns = 0;
};

/// nullopt when every mapped predicate accepts the emitted kind and the
/// aggregation fits the engine.
std::optional<Rejection> check_capabilities(const GeneratorSpec& spec, const EngineCapabilities& caps);

/// Partitions the input, builds one basic query per partition and OR-groups
/// consecutive basic queries. `context` is required for pattern generation.
/// Throws RejectedQuery on capability mismatches.
QueryPlan build_plan(const GeneratorSpec& spec, std::span<const Publication> input, const EngineCapabilities& caps,
                     const TitleContext* context);

}  // namespace qgen
