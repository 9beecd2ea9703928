#include "commands.hpp"

#include <chrono>
#include <cstdio>
#include <fstream>
#include <map>
#include <ostream>
#include <sstream>
#include <thread>

#include "qgen/corpus.hpp"
#include "qgen/csv.hpp"
#include "qgen/experiment.hpp"
#include "qgen/noise.hpp"
#include "qgen/random.hpp"
#include "qgen/report.hpp"
#include "qgen/synthetic.hpp"
#include "qgen/warehouse.hpp"

namespace qgen::cli {

namespace fs = std::filesystem;

namespace {

/// Runs `write` against the file at `path`, or against `fallback` when no path is given.
template <class Write>
void emit(const std::optional<fs::path>& path, std::ostream& fallback, Write write) {
    if (!path) {
        write(fallback);
        return;
    }
    if (path->has_parent_path()) fs::create_directories(path->parent_path());
    std::ofstream file(*path, std::ios::binary);
    if (!file) throw Error("cannot write " + path->string());
    write(file);
    if (!file) throw Error("I/O error writing " + path->string());
}

std::string hash_of(const std::string& text) {
    char buf[17];
    std::snprintf(buf, sizeof buf, "%016llx", static_cast<unsigned long long>(fnv1a64(text)));
    return buf;
}

template <class Write>
std::string serialized_hash(Write write) {
    std::ostringstream os;
    write(os);
    return hash_of(os.str());
}

std::string join_ints(const std::vector<int>& values) {
    std::string out;
    for (int v : values) out += (out.empty() ? "" : ",") + std::to_string(v);
    return out;
}

std::string fixed(double v) { return format_fixed(v); }

Manifest make_manifest(const RunConfig& config, const Corpus& corpus, const EngineCapabilities& caps,
                       const std::vector<GeneratorSpec>& specs, std::size_t datasets) {
    Manifest m;
    m.add("format.warehouse", std::string(kWarehouseFormat));
    m.add("format.corpus", std::string(kCorpusFormat));
    m.add("corpus.size", std::to_string(corpus.size()));
    m.add("corpus.hash", serialized_hash([&](std::ostream& os) { write_corpus(os, corpus); }));
    m.add("caps.profile", caps.profile);
    m.add("caps.hash", serialized_hash([&](std::ostream& os) { write_capabilities(os, caps); }));
    for (const auto& spec : specs) {
        m.add("genspec." + spec.id + ".hash", serialized_hash([&](std::ostream& os) { write_genspec(os, spec); }));
    }
    const auto& n = config.noise;
    m.add("noise.duplicate_probability", fixed(n.duplicate_probability));
    m.add("noise.max_duplicates", std::to_string(n.max_duplicates));
    m.add("noise.title_typo_rate", fixed(n.title_typo_rate));
    m.add("noise.author_misspell_probability", fixed(n.author_misspell_probability));
    m.add("noise.year_shift_probability", fixed(n.year_shift_probability));
    m.add("noise.drop_cutoff_year", std::to_string(n.drop_cutoff_year));
    m.add("noise.drop_probability_old", fixed(n.drop_probability_old));
    m.add("noise.distractor_count", std::to_string(n.distractor_count));
    m.add("noise.seed", std::to_string(n.seed));
    m.add("match.author_threshold", fixed(config.match.author_threshold));
    m.add("match.title_threshold", fixed(config.match.title_threshold));
    m.add("match.year_threshold", fixed(config.match.year_threshold));
    m.add("sizes", join_ints(config.sizes));
    std::string categories;
    for (auto c : config.categories) categories += (categories.empty() ? "" : ",") + std::string(to_string(c));
    m.add("categories", categories);
    m.add("reps", std::to_string(config.reps));
    m.add("follow", to_string(config.follow));
    m.add("seed", std::to_string(config.seed));
    m.add("datasets", std::to_string(datasets));
    m.add("cells", std::to_string(datasets * specs.size()));
    return m;
}

void print_summary(const ExperimentResult& result, const std::vector<GeneratorSpec>& specs,
                   const std::vector<Category>& categories, std::ostream& out) {
    struct Acc {
        double coverage = 0.0, efficiency = 0.0;
        int n = 0;
    };
    std::map<std::pair<std::string, Category>, Acc> acc;
    for (const auto& c : result.cells) {
        if (!c.ok) continue;
        auto& a = acc[{c.generator_id, c.category}];
        a.coverage += c.measures.coverage.value();
        a.efficiency += c.measures.efficiency_all.value();
        ++a.n;
    }
    const auto table = [&](const char* title, auto pick) {
        out << title << '\n';
        char buf[64];
        std::snprintf(buf, sizeof buf, "%-10s", "generator");
        out << buf;
        for (auto cat : categories) {
            std::snprintf(buf, sizeof buf, "%10s", std::string(to_string(cat)).c_str());
            out << buf;
        }
        out << '\n';
        for (const auto& spec : specs) {
            std::snprintf(buf, sizeof buf, "%-10s", spec.id.c_str());
            out << buf;
            for (auto cat : categories) {
                const auto it = acc.find({spec.id, cat});
                if (it == acc.end() || it->second.n == 0) {
                    std::snprintf(buf, sizeof buf, "%10s", "-");
                } else {
                    std::snprintf(buf, sizeof buf, "%10.3f", pick(it->second) / it->second.n);
                }
                out << buf;
            }
            out << '\n';
        }
    };
    table("mean coverage per category", [](const Acc& a) { return a.coverage; });
    out << '\n';
    table("mean efficiency (matched inputs per request) per category", [](const Acc& a) { return a.efficiency; });
}

}  // namespace

RunConfig prepare_config(const fs::path& config_path, const Overrides& overrides) {
    auto config = load_run_config(config_path);
    if (overrides.seed) set_master_seed(config, *overrides.seed);
    if (overrides.out) config.out = *overrides.out;
    if (overrides.jobs) config.jobs = *overrides.jobs;
    validate(config);
    return config;
}

EngineCapabilities resolve_capabilities(const RunConfig& config) {
    if (config.caps == "builtin:scholar") return scholar_profile();
    return load_capabilities(config.caps);
}

std::vector<GeneratorSpec> resolve_genspecs(const RunConfig& config) {
    const auto catalog = table3_catalog();
    std::vector<GeneratorSpec> specs;
    for (const auto& g : config.genspecs) {
        if (g == "builtin:catalog") {
            specs.insert(specs.end(), catalog.begin(), catalog.end());
        } else if (g.rfind("builtin:", 0) == 0) {
            specs.push_back(catalog.at(static_cast<std::size_t>(std::stoi(g.substr(8)) - 1)));
        } else {
            specs.push_back(load_genspec(g));
        }
    }
    for (std::size_t i = 0; i < specs.size(); ++i) {
        for (std::size_t j = 0; j < i; ++j) {
            if (specs[i].id == specs[j].id) throw ConfigError("genspec", "generator id '" + specs[i].id + "' used twice");
        }
    }
    return specs;
}

int cmd_gen_corpus(std::size_t size, std::uint64_t seed, const std::optional<fs::path>& path, std::ostream& out,
                   std::ostream& log) {
    if (size == 0) {
        log << "error: --size must be at least 1\n";
        return kUsage;
    }
    const auto corpus = generate_corpus(size, seed);
    emit(path, out, [&](std::ostream& os) { write_corpus(os, corpus); });
    if (path) log << "wrote " << corpus.size() << " publications to " << path->string() << '\n';
    return kOk;
}

int cmd_gen_datasets(const fs::path& config_path, const Overrides& overrides, std::ostream& out, std::ostream& log) {
    auto o = overrides;
    const auto path = o.out;
    o.out.reset();
    const auto config = prepare_config(config_path, o);
    const auto corpus = load_corpus(config.corpus);
    const auto datasets = generate_datasets(corpus, config.sizes, config.categories, config.reps, config.seed);
    emit(path, out, [&](std::ostream& os) { write_datasets(os, datasets); });
    if (path) log << "wrote " << datasets.size() << " datasets to " << path->string() << '\n';
    return kOk;
}

int cmd_build_index(const fs::path& config_path, const Overrides& overrides, std::ostream& out, std::ostream& log) {
    auto o = overrides;
    const auto path = o.out;
    o.out.reset();
    const auto config = prepare_config(config_path, o);
    const auto corpus = load_corpus(config.corpus);
    const auto built = build_index(corpus, config.noise);
    emit(path, out, [&](std::ostream& os) { write_index(os, built); });
    if (path) {
        log << "wrote " << built.index.size() << " index entries (" << built.provenance.distractor_count()
            << " distractors) to " << path->string() << '\n';
    }
    return kOk;
}

int cmd_run(const fs::path& config_path, const Overrides& overrides, std::ostream& out, std::ostream& log) {
    auto config = prepare_config(config_path, overrides);
    const auto started = std::chrono::steady_clock::now();
    const auto corpus = load_corpus(config.corpus);
    const auto caps = resolve_capabilities(config);
    const auto specs = resolve_genspecs(config);

    std::vector<Dataset> datasets;
    std::size_t infeasible = 0;
    for (int size : config.sizes) {
        for (auto category : config.categories) {
            const int sizes[] = {size};
            const Category cats[] = {category};
            try {
                auto cell = generate_datasets(corpus, sizes, cats, config.reps, config.seed);
                datasets.insert(datasets.end(), cell.begin(), cell.end());
            } catch (const InfeasibleCell& e) {
                log << "warning: " << e.what() << '\n';
                ++infeasible;
            }
        }
    }

    const auto index = build_index(corpus, config.noise);
    ExperimentSetup setup;
    setup.corpus = &corpus;
    setup.datasets = datasets;
    setup.specs = specs;
    setup.caps = caps;
    setup.index = &index;
    setup.match = config.match;
    setup.follow = config.follow;
    setup.seed = config.seed;
    setup.jobs = config.jobs;
    const auto result = run_experiment(setup);

    const auto manifest = make_manifest(config, corpus, caps, specs, datasets.size());
    const bool written = write_warehouse(config.out, result, index.index, manifest);
    for (const auto& c : result.cells) {
        if (!c.ok) log << "cell " << c.dataset_id << " x " << c.generator_id << " failed: " << c.error << '\n';
    }

    print_summary(result, specs, config.categories, out);
    const double seconds = std::chrono::duration<double>(std::chrono::steady_clock::now() - started).count();
    log << (written ? "wrote warehouse " : "warehouse already up to date: ") << config.out.string() << " ("
        << result.cells.size() << " cells, " << result.failed_cells << " failed, " << infeasible
        << " infeasible dataset cells, " << format_fixed(seconds, 1) << " s)\n";

    const std::size_t ok = result.cells.size() - result.failed_cells;
    if (ok == 0) return kTotalFailure;
    if (result.failed_cells > 0 || infeasible > 0) return kPartialFailure;
    return kOk;
}

int cmd_report(const std::string& kind, const fs::path& warehouse, std::optional<int> size,
               const std::optional<fs::path>& path, std::ostream& out, std::ostream& log) {
    ReportKind parsed;
    try {
        parsed = parse_report_kind(kind);
    } catch (const Error& e) {
        log << "error: " << e.what() << '\n';
        return kUsage;
    }
    std::ostringstream buffer;
    write_report(parsed, warehouse, buffer, size);
    emit(path, out, [&](std::ostream& os) { os << buffer.str(); });
    return kOk;
}

}  // namespace qgen::cli
