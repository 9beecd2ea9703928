#pragma once

#include <cstdint>
#include <filesystem>
#include <iosfwd>
#include <optional>
#include <span>
#include <string>
#include <string_view>
#include <vector>

#include "qgen/corpus.hpp"
#include "qgen/index.hpp"

namespace qgen {

/// Data-quality defects the simulated engine shows relative to the source corpus.
struct NoiseProfile {
    double duplicate_probability = 0.0;  // per source entity
    int max_duplicates = 0;              // duplicates per entity, uniform in [1, max]
    double title_typo_rate = 0.0;        // expected edits per 100 title characters
    double author_misspell_probability = 0.0;
    double year_shift_probability = 0.0;
    int drop_cutoff_year = 1995;
    double drop_probability_old = 0.0;  // for entities with year < drop_cutoff_year
    int distractor_count = 0;
    std::uint64_t seed = 0;

    /// Exact copy of the corpus.
    static NoiseProfile zero();
    /// Illustrative defaults; not calibrated against any real engine.
    static NoiseProfile defaults();

    void validate() const;
};

/// Maps every index entity (by position) to the corpus entity it derives from.
class IndexProvenance {
public:
    IndexProvenance() = default;
    explicit IndexProvenance(std::vector<std::optional<std::string>> sources) : sources_(std::move(sources)) {}

    std::size_t size() const noexcept { return sources_.size(); }
    /// nullopt for distractors.
    const std::optional<std::string>& source(EntityRef ref) const { return sources_[ref]; }
    std::size_t distractor_count() const;

private:
    std::vector<std::optional<std::string>> sources_;
};

struct SimulatedIndex {
    EngineIndex index;
    IndexProvenance provenance;
};

/// Derives the engine's index from the corpus. Per retained source entity the
/// index holds one faithful copy (same id) and 0..max_duplicates perturbed
/// duplicates (ids `<id>~d<k>`); distractors get ids `x<n>`. Deterministic for
/// a fixed (corpus, profile).
///
/// Static popularity, and with it the engine's tie-break rank, favors faithful
/// entries over duplicates and duplicates over distractors.
SimulatedIndex build_index(const Corpus& corpus, const NoiseProfile& profile);

inline constexpr std::string_view kIndexFormat = "qf-index-1";

/// Index entries with `source` (absent for distractors) and `rank` fields.
void write_index(std::ostream& out, const SimulatedIndex& built);
SimulatedIndex read_index(std::istream& in, const std::string& source = "<stream>");

}  // namespace qgen
