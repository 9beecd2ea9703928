#pragma once

#include <filesystem>
#include <iosfwd>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

namespace qgen {

enum class ValueKind { Value, Keywords, Phrase, Pattern };

std::string_view to_string(ValueKind kind);
std::optional<ValueKind> parse_value_kind(std::string_view name);

/// Entity attribute a field-scoped predicate searches.
enum class Field { Authors, Title, Year, Venue };

std::string_view to_string(Field field);
std::optional<Field> parse_field(std::string_view name);

enum class PredicateScope { FieldScoped, Free };

struct PredicateDescriptor {
    std::string name;
    PredicateScope scope = PredicateScope::Free;
    Field field = Field::Title;  // meaningful only for field-scoped predicates
    std::vector<ValueKind> kinds;

    bool accepts(ValueKind kind) const;
};

/// Declarative description of what a search engine accepts.
struct EngineCapabilities {
    std::string profile = "custom";
    std::vector<PredicateDescriptor> predicates;
    bool supports_or = false;
    int max_disjuncts = 1;  // basic queries per OR query
    int page_size = 10;     // z, entities per request
    int max_pages = 10;
    double soft_and_threshold = 1.0;  // fraction of a basic query's terms an entity must satisfy

    const PredicateDescriptor* find(std::string_view predicate) const;
    /// Throws qgen::Error if an invariant does not hold.
    void validate() const;
};

/// Google-Scholar-like profile: intitle/author/year/free, OR of up to 10
/// basic queries, 100 entities per page, 10 pages, strict conjunction.
EngineCapabilities scholar_profile();

inline constexpr std::string_view kCapsFormat = "qf-caps-1";

EngineCapabilities read_capabilities(std::istream& in, const std::string& source = "<stream>");
EngineCapabilities load_capabilities(const std::filesystem::path& path);
void write_capabilities(std::ostream& out, const EngineCapabilities& caps);

}  // namespace qgen
