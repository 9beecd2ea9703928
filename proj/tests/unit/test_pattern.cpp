#include <gtest/gtest.h>

#include <algorithm>
#include <random>
#include <set>

#include "fixtures.hpp"
#include "qgen/engine.hpp"
#include "qgen/pattern.hpp"
#include "qgen/synthetic.hpp"
#include "qgen/text.hpp"

using namespace qgen;

namespace {

Corpus titles(const std::vector<std::string>& ts) {
    std::vector<Publication> pubs;
    for (std::size_t i = 0; i < ts.size(); ++i) pubs.push_back({"t" + std::to_string(i), {"A"}, ts[i], 2000, "V"});
    return Corpus(pubs);
}

std::size_t literal_count(const std::vector<PatternItem>& p) {
    return static_cast<std::size_t>(std::count_if(p.begin(), p.end(), [](const auto& i) { return i.has_value(); }));
}

}  // namespace

TEST(Pattern, MomaExample) {
    const auto corpus = titles({"MOMA \xE2\x80\x93 A Mapping-based Object Matching System",
                                "A Mapping-based Query System", "Object Matching Revisited", "Mapping Object Graphs",
                                "A Matching System"});
    const TitleContext ctx(corpus);
    const auto p = gen_pattern(corpus[0].title, ctx);
    EXPECT_FALSE(p.ambiguous);
    EXPECT_EQ(p.value.kind, ValueKind::Pattern);
    EXPECT_EQ(p.value.pattern, (std::vector<PatternItem>{"moma"}));
}

TEST(Pattern, WildcardsBetweenLiterals) {
    // "moma" and "object" are the rarest tokens; only together do they single out the first title.
    const auto corpus = titles({"moma a mapping based object", "moma a mapping based graphs",
                                "object a mapping based store", "x a mapping based object y"});
    const TitleContext ctx(corpus);
    const auto p = gen_pattern(corpus[0].title, ctx);
    EXPECT_EQ(p.value.pattern,
              (std::vector<PatternItem>{"moma", std::nullopt, std::nullopt, std::nullopt, "object"}));
    EXPECT_EQ(ctx.count_matches(p.value.pattern), 1U);
}

TEST(Pattern, SingleToken) {
    const auto corpus = titles({"Don't", "Panic now"});
    const auto p = gen_pattern("Don't", TitleContext(corpus));
    EXPECT_EQ(p.value.pattern, (std::vector<PatternItem>{"don't"}));
    EXPECT_FALSE(p.ambiguous);
}

TEST(Pattern, DuplicateTitlesAreAmbiguous) {
    std::vector<Publication> pubs{{"a", {"A"}, "Same Title", 2000, "V"}, {"b", {"B"}, "Same Title here", 2001, "V"}};
    const TitleContext ctx{Corpus(pubs)};
    const auto p = gen_pattern("Same Title", ctx);
    EXPECT_TRUE(p.ambiguous);
    EXPECT_EQ(p.value.pattern, (std::vector<PatternItem>{"same", "title"}));
    EXPECT_THROW(gen_pattern("--", ctx), Error);
}

TEST(Pattern, TrimKeepsInnerWildcards) {
    const std::vector<PatternItem> in{std::nullopt, "a", std::nullopt, "b", std::nullopt};
    EXPECT_EQ(trim_pattern(in), (std::vector<PatternItem>{"a", std::nullopt, "b"}));
    EXPECT_TRUE(trim_pattern({std::nullopt}).empty());
}

TEST(Pattern, CountMatchesAgreesWithTermMatches) {
    const auto corpus = generate_corpus(500, 3);
    const TitleContext ctx(corpus);
    const auto caps = scholar_profile();
    std::mt19937_64 rng(4);
    for (int iter = 0; iter < 50; ++iter) {
        const auto& pub = corpus[rng() % corpus.size()];
        const auto p = gen_pattern(pub.title, ctx);
        std::set<std::string> distinct;
        for (const auto& other : corpus) {
            if (term_matches(other, *caps.find("intitle"), p.value)) distinct.insert(normalize_text(other.title));
        }
        EXPECT_EQ(ctx.count_matches(p.value.pattern), distinct.size());
    }
}

TEST(Pattern, UniqueAndGreedyMinimalOnSyntheticCorpus) {
    const auto corpus = generate_corpus(2000, 8);
    const TitleContext ctx(corpus);
    std::size_t minimal = 0;
    std::size_t checked = 0;
    for (std::size_t i = 0; i < corpus.size(); i += 10) {
        const auto p = gen_pattern(corpus[i].title, ctx);
        if (p.ambiguous) continue;
        ASSERT_EQ(ctx.count_matches(p.value.pattern), 1U) << corpus[i].title;
        ++checked;
        bool is_minimal = true;
        for (std::size_t k = 0; k < p.value.pattern.size() && is_minimal; ++k) {
            if (!p.value.pattern[k] || literal_count(p.value.pattern) == 1) continue;
            auto relaxed = p.value.pattern;
            relaxed[k] = std::nullopt;
            if (ctx.count_matches(trim_pattern(relaxed), 2) == 1) is_minimal = false;
        }
        if (is_minimal) ++minimal;
    }
    ASSERT_GT(checked, 150U);
    EXPECT_GE(static_cast<double>(minimal) / static_cast<double>(checked), 0.9);
}
