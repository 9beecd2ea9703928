#pragma once

#include <cstdint>
#include <filesystem>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "qgen/experiment.hpp"

namespace qgen {

inline constexpr std::string_view kWarehouseFormat = "qf-wh-1";

/// Inputs of a run, keyed by content hash.
struct Manifest {
    std::vector<std::pair<std::string, std::string>> entries;  // written in order

    void add(std::string key, std::string value) { entries.emplace_back(std::move(key), std::move(value)); }
    std::optional<std::string> get(std::string_view key) const;
    /// fnv1a64 over every entry, as 16 hex digits.
    std::string content_hash() const;
};

/// Writes runs.jsonl, measures.csv, pages.csv, failures.csv, timings.csv and
/// manifest into `dir`. Every file starts with the line `format=qf-wh-1`.
/// Re-writing a warehouse whose manifest hash matches is a no-op and returns
/// false; a different hash throws, since the warehouse is append-only.
bool write_warehouse(const std::filesystem::path& dir, const ExperimentResult& result, const EngineIndex& index,
                     const Manifest& manifest);

struct MeasureRow {
    std::string dataset_id;
    Category category = Category::Random;
    int size = 0;
    std::string generator_id;
    double coverage = 0.0;
    std::optional<double> recall;
    double precision = 0.0;
    double efficiency_all = 0.0;
    double efficiency_first = 0.0;
    int total_requests = 0;
    int queries = 0;
    std::uint64_t seed = 0;
};

struct PageRow {
    std::string run_id;
    std::size_t query = 0;
    int page = 1;
    double page_precision = 0.0;
    bool next_offered = false;
    std::optional<double> next_page_precision;
};

std::vector<MeasureRow> read_measures(const std::filesystem::path& dir);
std::vector<PageRow> read_pages(const std::filesystem::path& dir);
Manifest read_manifest(const std::filesystem::path& dir);

}  // namespace qgen
