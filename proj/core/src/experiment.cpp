#include "qgen/experiment.hpp"

#include <algorithm>
#include <atomic>
#include <map>
#include <thread>
#include <tuple>

#include "qgen/error.hpp"

namespace qgen {

CellResult run_cell(const ExperimentSetup& setup, const Dataset& dataset, const GeneratorSpec& spec,
                    const TitleContext& context, std::span<const MatchProfile> index_profiles) {
    CellResult cell;
    cell.dataset_id = dataset.id;
    cell.category = dataset.category;
    cell.size = dataset.size;
    cell.generator_id = spec.id;

    const auto s = resolve_members(*setup.corpus, dataset);
    const auto plan = build_plan(spec, s, setup.caps, &context);
    const auto relevant = t_rel(dataset.members, setup.index->provenance);

    cell.record = execute_plan(plan, setup.index->index, setup.caps, setup.follow, &relevant);
    cell.record.dataset_id = dataset.id;
    cell.record.seed = dataset.seed;
    cell.returned = cell.record.returned();

    const auto s_profiles = make_profiles(s);
    std::vector<const MatchProfile*> t_profiles;
    t_profiles.reserve(cell.returned.size());
    for (auto ref : cell.returned) t_profiles.push_back(&index_profiles[ref]);
    cell.mapping = match(s_profiles, t_profiles, setup.match);

    cell.measures = compute_measures(cell.record, cell.mapping, s.size(), cell.returned, relevant);
    cell.pages = page_samples(cell.record, relevant);
    cell.ok = true;
    return cell;
}

ExperimentResult run_experiment(const ExperimentSetup& setup) {
    if (setup.corpus == nullptr || setup.index == nullptr) throw Error("experiment needs a corpus and an index");
    setup.caps.validate();
    setup.match.validate();

    const TitleContext context(*setup.corpus);
    const auto index_profiles = make_profiles(setup.index->index.entities());

    ExperimentResult result;
    result.cells.resize(setup.datasets.size() * setup.specs.size());
    std::atomic<std::size_t> next{0};
    const auto worker = [&] {
        for (;;) {
            const auto i = next.fetch_add(1);
            if (i >= result.cells.size()) return;
            const auto& dataset = setup.datasets[i / setup.specs.size()];
            const auto& spec = setup.specs[i % setup.specs.size()];
            try {
                result.cells[i] = run_cell(setup, dataset, spec, context, index_profiles);
            } catch (const std::exception& e) {
                auto& cell = result.cells[i];
                cell = CellResult{};
                cell.dataset_id = dataset.id;
                cell.category = dataset.category;
                cell.size = dataset.size;
                cell.generator_id = spec.id;
                cell.error = e.what();
            }
        }
    };

    const unsigned jobs = std::max(1U, std::min<unsigned>(setup.jobs, static_cast<unsigned>(result.cells.size())));
    if (jobs <= 1) {
        worker();
    } else {
        std::vector<std::thread> threads;
        for (unsigned j = 0; j < jobs; ++j) threads.emplace_back(worker);
        for (auto& t : threads) t.join();
    }

    result.failed_cells = static_cast<std::size_t>(
        std::count_if(result.cells.begin(), result.cells.end(), [](const CellResult& c) { return !c.ok; }));
    result.aggregates = aggregate(result.cells);
    return result;
}

std::vector<AggregateRow> aggregate(std::span<const CellResult> cells) {
    std::map<std::string, std::size_t> generator_order;
    for (const auto& c : cells) generator_order.emplace(c.generator_id, generator_order.size());

    std::map<std::tuple<Category, int, std::size_t>, AggregateRow> groups;
    for (const auto& c : cells) {
        if (!c.ok) continue;
        auto& row = groups[{c.category, c.size, generator_order.at(c.generator_id)}];
        row.category = c.category;
        row.size = c.size;
        row.generator_id = c.generator_id;
        ++row.cells;
        row.coverage += c.measures.coverage.value();
        if (c.measures.recall) {
            ++row.recall_defined;
            row.recall += c.measures.recall->value();
        }
        row.precision += c.measures.precision.value();
        row.efficiency_all += c.measures.efficiency_all.value();
        row.efficiency_first += c.measures.efficiency_first.value();
    }

    std::vector<AggregateRow> out;
    for (auto& [key, row] : groups) {
        const auto n = static_cast<double>(row.cells);
        row.coverage /= n;
        row.precision /= n;
        row.efficiency_all /= n;
        row.efficiency_first /= n;
        if (row.recall_defined > 0) row.recall /= static_cast<double>(row.recall_defined);
        out.push_back(row);
    }
    return out;
}

}  // namespace qgen
