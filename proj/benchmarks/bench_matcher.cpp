#include <benchmark/benchmark.h>

#include "qgen/matcher.hpp"
#include "qgen/synthetic.hpp"

namespace {

void BM_TitleSim(benchmark::State& state) {
    for (auto _ : state) {
        benchmark::DoNotOptimize(qgen::title_sim("The Hitchhiker's Guide to the Galaxy",
                                                 "Hitchhikers Guide to the Galaxy, 2nd edition"));
    }
}

void BM_AuthorSim(benchmark::State& state) {
    const std::vector<std::string> a{"Ann Smith", "B. Jones", "Carl Taylor", "D. Williams"};
    const std::vector<std::string> b{"A. Smith", "Carl Taylor", "Dana Williams", "E. Brown"};
    for (auto _ : state) benchmark::DoNotOptimize(qgen::author_sim(a, b));
}

// All-pairs match of an input set against a returned set of equal size.
void BM_MatchSets(benchmark::State& state) {
    const auto n = static_cast<std::size_t>(state.range(0));
    const auto corpus = qgen::generate_corpus(2 * n, 11);
    const auto pubs = corpus.publications();
    const auto s = qgen::make_profiles(pubs.subspan(0, n));
    const auto t = qgen::make_profiles(pubs.subspan(n, n));
    const qgen::MatchConfig config;
    for (auto _ : state) {
        auto m = qgen::match(s, t, config);
        benchmark::DoNotOptimize(m);
    }
}

}  // namespace

BENCHMARK(BM_TitleSim);
BENCHMARK(BM_AuthorSim);
BENCHMARK(BM_MatchSets)->RangeMultiplier(2)->Range(8, 128);
