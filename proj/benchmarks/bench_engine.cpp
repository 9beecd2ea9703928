#include <benchmark/benchmark.h>

#include "qgen/capabilities.hpp"
#include "qgen/engine.hpp"
#include "qgen/noise.hpp"
#include "qgen/query.hpp"
#include "qgen/synthetic.hpp"

namespace {

const qgen::SimulatedIndex& shared_index() {
    static const auto corpus = qgen::generate_corpus(5000, 7);
    static const auto built = qgen::build_index(corpus, qgen::NoiseProfile::defaults());
    return built;
}

void run_query(benchmark::State& state, const char* text) {
    const auto& built = shared_index();
    const auto caps = qgen::scholar_profile();
    const auto query = qgen::parse_query(text);
    for (auto _ : state) {
        auto page = qgen::execute(built.index, query, 1, caps);
        benchmark::DoNotOptimize(page);
    }
}

void BM_ExecuteKeywords(benchmark::State& state) { run_query(state, "intitle:(keywords data query)"); }
void BM_ExecutePhrase(benchmark::State& state) { run_query(state, "intitle:(phrase \"query processing\")"); }
void BM_ExecutePattern(benchmark::State& state) { run_query(state, "intitle:(pattern data * query)"); }
void BM_ExecuteOr(benchmark::State& state) {
    run_query(state, "intitle:(keywords mining) OR intitle:(keywords streams) OR intitle:(keywords graph)");
}

}  // namespace

BENCHMARK(BM_ExecuteKeywords);
BENCHMARK(BM_ExecutePhrase);
BENCHMARK(BM_ExecutePattern);
BENCHMARK(BM_ExecuteOr);
