#include <benchmark/benchmark.h>

#include "qgen/capabilities.hpp"
#include "qgen/generators.hpp"
#include "qgen/pattern.hpp"
#include "qgen/synthetic.hpp"
#include "qgen/text.hpp"

namespace {

const qgen::Corpus& shared_corpus() {
    static const auto corpus = qgen::generate_corpus(5000, 7);
    return corpus;
}

void BM_TitleContext(benchmark::State& state) {
    for (auto _ : state) {
        qgen::TitleContext ctx(shared_corpus());
        benchmark::DoNotOptimize(ctx);
    }
}

void BM_GenPattern(benchmark::State& state) {
    const auto& corpus = shared_corpus();
    const qgen::TitleContext ctx(corpus);
    std::size_t i = 0;
    for (auto _ : state) {
        auto g = qgen::gen_pattern(corpus[i].title, ctx);
        benchmark::DoNotOptimize(g);
        i = (i + 97) % corpus.size();
    }
}

void BM_PartitionFrequent(benchmark::State& state) {
    const auto n = static_cast<std::size_t>(state.range(0));
    const auto input = shared_corpus().publications().subspan(0, n);
    const qgen::FrequentValuePartitioning params{{qgen::Attribute::Authors, qgen::Attribute::Title}, 2, 2};
    const auto& stopwords = qgen::stopword_list("default");
    for (auto _ : state) {
        auto parts = qgen::partition_frequent_value(input, params, stopwords);
        benchmark::DoNotOptimize(parts);
    }
}

void BM_BuildPlanCatalog(benchmark::State& state) {
    const auto& corpus = shared_corpus();
    const qgen::TitleContext ctx(corpus);
    const auto input = corpus.publications().subspan(0, 30);
    const auto caps = qgen::scholar_profile();
    const auto specs = qgen::table3_catalog();
    for (auto _ : state) {
        for (const auto& spec : specs) {
            auto plan = qgen::build_plan(spec, input, caps, &ctx);
            benchmark::DoNotOptimize(plan);
        }
    }
}

}  // namespace

BENCHMARK(BM_TitleContext)->Unit(benchmark::kMillisecond);
BENCHMARK(BM_GenPattern);
BENCHMARK(BM_PartitionFrequent)->Arg(30)->Arg(100)->Unit(benchmark::kMicrosecond);
BENCHMARK(BM_BuildPlanCatalog)->Unit(benchmark::kMicrosecond);
