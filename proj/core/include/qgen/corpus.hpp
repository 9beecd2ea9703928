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

#include "qgen/error.hpp"

namespace qgen {

/// A bibliographic entity. Used both for input sets and for engine results.
struct Publication {
    std::string id;
    std::vector<std::string> authors;  // full names, in byline order
    std::string title;
    int year = 0;
    std::string venue;  // conference/journal plus volume label

    friend bool operator==(const Publication&, const Publication&) = default;
};

inline constexpr int kMinYear = 1900;
inline constexpr int kMaxYear = 2100;

/// Throws qgen::Error when an invariant of Publication is violated.
void validate_publication(const Publication& pub);

class Corpus {
public:
    Corpus() = default;
    /// Validates every publication and rejects duplicate ids.
    explicit Corpus(std::vector<Publication> publications);

    std::size_t size() const noexcept { return pubs_.size(); }
    bool empty() const noexcept { return pubs_.empty(); }
    const Publication& operator[](std::size_t i) const { return pubs_[i]; }
    auto begin() const noexcept { return pubs_.begin(); }
    auto end() const noexcept { return pubs_.end(); }
    std::span<const Publication> publications() const noexcept { return pubs_; }

    std::optional<std::size_t> index_of(std::string_view id) const;
    const Publication* find(std::string_view id) const;

private:
    std::vector<Publication> pubs_;
    std::unordered_map<std::string, std::size_t> by_id_;
};

inline constexpr std::string_view kCorpusFormat = "qf-corpus-1";
inline constexpr std::string_view kDatasetFormat = "qf-dataset-1";

Corpus read_corpus(std::istream& in, const std::string& source = "<stream>");
Corpus load_corpus(const std::filesystem::path& path);
void write_corpus(std::ostream& out, const Corpus& corpus);
void save_corpus(const std::filesystem::path& path, const Corpus& corpus);

enum class Category { Author, Title, Venue, Random };

inline constexpr Category kAllCategories[] = {Category::Author, Category::Title, Category::Venue,
                                             Category::Random};

std::string_view to_string(Category c);
/// Case-insensitive; throws qgen::Error on unknown names.
Category parse_category(std::string_view name);

/// An input entity set S drawn from the corpus.
struct Dataset {
    std::string id;
    Category category = Category::Random;
    int size = 0;
    std::vector<std::string> members;  // corpus ids, in corpus order
    std::uint64_t seed = 0;

    friend bool operator==(const Dataset&, const Dataset&) = default;
};

/// No (category, size) cell can be filled from the corpus.
class InfeasibleCell : public Error {
public:
    InfeasibleCell(Category category, int size, const std::string& reason);
    Category category() const noexcept { return category_; }
    int size() const noexcept { return size_; }

private:
    Category category_;
    int size_;
};

/// Builds |sizes| x |categories| x reps datasets, ordered size-major, then
/// category, then repetition. Each cell draws from its own derived seed.
std::vector<Dataset> generate_datasets(const Corpus& corpus, std::span<const int> sizes,
                                       std::span<const Category> categories, int reps, std::uint64_t seed);

/// True iff the dataset's members resolve and its category constraint holds.
bool satisfies_category(const Corpus& corpus, const Dataset& dataset);

std::vector<Publication> resolve_members(const Corpus& corpus, const Dataset& dataset);

std::vector<Dataset> read_datasets(std::istream& in, const std::string& source = "<stream>");
std::vector<Dataset> load_datasets(const std::filesystem::path& path);
void write_datasets(std::ostream& out, std::span<const Dataset> datasets);
void save_datasets(const std::filesystem::path& path, std::span<const Dataset> datasets);

}  // namespace qgen
