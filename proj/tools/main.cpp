#include <iostream>
#include <thread>

#include "CLI11.hpp"
#include "commands.hpp"
#include "qgen/error.hpp"

int main(int argc, char** argv) {
    using namespace qgen::cli;

    CLI::App app{"qgen: query generators for entity search engines, evaluated on a simulated engine"};
    app.require_subcommand(1);

    std::string config;
    std::uint64_t seed = 0;
    std::string out;
    unsigned jobs = 0;
    std::size_t size = 0;
    std::string warehouse;
    std::string kind;
    int report_size = 0;

    auto* gen_corpus = app.add_subcommand("gen-corpus", "Write a synthetic bibliographic corpus");
    gen_corpus->add_option("--size", size, "Number of publications")->required();
    gen_corpus->add_option("--seed", seed, "Master seed");
    gen_corpus->add_option("--out", out, "Output file (default: stdout)");

    const auto add_config_options = [&](CLI::App* cmd, const char* out_help) {
        cmd->add_option("--config", config, "Run config (format=qf-run-1)")->required()->check(CLI::ExistingFile);
        cmd->add_option("--seed", seed, "Override the master seed");
        cmd->add_option("--out", out, out_help);
    };
    auto* gen_datasets = app.add_subcommand("gen-datasets", "Write the evaluation dataset manifest");
    add_config_options(gen_datasets, "Output file (default: stdout)");
    auto* build_index = app.add_subcommand("build-index", "Write the simulated engine index with provenance");
    add_config_options(build_index, "Output file (default: stdout)");
    auto* run = app.add_subcommand("run", "Run the dataset x generator grid into a results warehouse");
    add_config_options(run, "Warehouse directory (overrides the config)");
    run->add_option("--jobs", jobs, "Worker threads; 0 uses every hardware thread");

    auto* report = app.add_subcommand("report", "Emit a plot-ready CSV from a warehouse");
    report->add_option("kind", kind,
                       "coverage-by-category | coverage-recall-ratio | efficiency-by-category | nextlink-scatter")
        ->required();
    report->add_option("--warehouse", warehouse, "Warehouse directory")->required();
    report->add_option("--size", report_size, "Only datasets of this size");
    report->add_option("--out", out, "Output file (default: stdout)");

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        const int code = app.exit(e);
        return code == 0 ? kOk : kUsage;
    }

    Overrides overrides;
    if (!out.empty()) overrides.out = out;
    for (auto* cmd : {gen_datasets, build_index, run}) {
        if (cmd->parsed() && cmd->count("--seed") > 0) overrides.seed = seed;
    }
    if (run->parsed() && run->count("--jobs") > 0) {
        overrides.jobs = jobs == 0 ? std::max(1U, std::thread::hardware_concurrency()) : jobs;
    }

    try {
        if (gen_corpus->parsed()) {
            std::optional<std::filesystem::path> path;
            if (!out.empty()) path = out;
            return cmd_gen_corpus(size, seed, path, std::cout, std::cerr);
        }
        if (gen_datasets->parsed()) return cmd_gen_datasets(config, overrides, std::cout, std::cerr);
        if (build_index->parsed()) return cmd_build_index(config, overrides, std::cout, std::cerr);
        if (run->parsed()) return cmd_run(config, overrides, std::cout, std::cerr);
        if (report->parsed()) {
            std::optional<int> filter;
            if (report->count("--size") > 0) filter = report_size;
            return cmd_report(kind, warehouse, filter, overrides.out, std::cout, std::cerr);
        }
    } catch (const qgen::ConfigError& e) {
        std::cerr << "error: " << e.what() << '\n';
        return kUsage;
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << '\n';
        return kTotalFailure;
    }
    return kUsage;
}
