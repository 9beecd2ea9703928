#pragma once

#include <cstddef>
#include <cstdint>
#include <span>
#include <string>
#include <vector>

#include "qgen/corpus.hpp"
#include "qgen/evaluator.hpp"
#include "qgen/generators.hpp"
#include "qgen/matcher.hpp"
#include "qgen/noise.hpp"

namespace qgen {

struct ExperimentSetup {
    const Corpus* corpus = nullptr;
    std::span<const Dataset> datasets;
    std::span<const GeneratorSpec> specs;
    EngineCapabilities caps;
    const SimulatedIndex* index = nullptr;
    MatchConfig match;
    FollowPolicy follow;
    std::uint64_t seed = 0;
    unsigned jobs = 1;
};

/// One (dataset, generator) execution.
struct CellResult {
    std::string dataset_id;
    Category category = Category::Random;
    int size = 0;
    std::string generator_id;
    bool ok = false;
    std::string error;

    RunRecord record;
    std::vector<EntityRef> returned;  // T
    MatchMapping mapping;             // over (S, T)
    MeasureReport measures;
    std::vector<PagePrecisionSample> pages;
};

/// Unweighted means over the repetitions of one (category, size, generator).
struct AggregateRow {
    Category category = Category::Random;
    int size = 0;
    std::string generator_id;
    std::size_t cells = 0;
    double coverage = 0.0;
    std::size_t recall_defined = 0;
    double recall = 0.0;  // mean over cells where recall is defined
    double precision = 0.0;
    double efficiency_all = 0.0;
    double efficiency_first = 0.0;
};

struct ExperimentResult {
    std::vector<CellResult> cells;  // dataset-major, then generator, in input order
    std::vector<AggregateRow> aggregates;
    std::size_t failed_cells = 0;
};

/// Executes the dataset x generator cross product. Cells run on `jobs` worker
/// threads against the shared immutable index; results do not depend on the
/// schedule. A failing cell is recorded, not rethrown.
ExperimentResult run_experiment(const ExperimentSetup& setup);

/// Evaluates a single cell; throws on failure.
CellResult run_cell(const ExperimentSetup& setup, const Dataset& dataset, const GeneratorSpec& spec,
                    const TitleContext& context, std::span<const MatchProfile> index_profiles);

std::vector<AggregateRow> aggregate(std::span<const CellResult> cells);

}  // namespace qgen
