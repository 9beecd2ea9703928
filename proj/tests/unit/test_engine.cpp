#include <gtest/gtest.h>

#include <algorithm>
#include <random>
#include <map>
#include <set>

#include "fixtures.hpp"
#include "qgen/engine.hpp"

using namespace qgen;
using qgen::testing::predicate;
using qgen::testing::single;
using qgen::testing::table1;
using qgen::testing::term;

namespace {

EngineIndex index_of(std::vector<Publication> pubs) {
    const std::vector<double> popularity(pubs.size(), 0.0);
    return EngineIndex(std::move(pubs), popularity);
}

std::set<std::string> ids_of(const EngineIndex& index, const std::vector<RankedEntity>& ranked) {
    std::set<std::string> out;
    for (const auto& r : ranked) out.insert(index.entity(r.ref).id);
    return out;
}

std::vector<EntityRef> all_pages(const EngineIndex& index, const Query& q, const EngineCapabilities& caps) {
    std::vector<EntityRef> out;
    for (int page = 1;; ++page) {
        const auto p = execute(index, q, page, caps);
        out.insert(out.end(), p.entities.begin(), p.entities.end());
        if (!p.has_next) break;
    }
    return out;
}

/// Small random bibliography over a tiny vocabulary so terms collide often.
std::vector<Publication> random_pubs(std::mt19937_64& rng, std::size_t n) {
    const std::vector<std::string> words{"graph", "mining", "data", "query", "web", "the", "of", "42", "don't"};
    const std::vector<std::string> last{"Smith", "Jones", "Taylor", "Graph", "Data"};
    const std::vector<std::string> first{"Ann", "Bob", ""};
    std::vector<Publication> out;
    for (std::size_t i = 0; i < n; ++i) {
        Publication p;
        p.id = "p" + std::to_string(i);
        const auto na = 1 + rng() % 3;
        for (std::size_t a = 0; a < na; ++a) {
            const auto& f = first[rng() % first.size()];
            p.authors.push_back((f.empty() ? "" : f + " ") + last[rng() % last.size()]);
        }
        const auto nt = 1 + rng() % 5;
        for (std::size_t t = 0; t < nt; ++t) p.title += (t ? " " : "") + words[rng() % words.size()];
        p.year = 2000 + static_cast<int>(rng() % 4);
        p.venue = rng() % 2 ? "Data Journal" : "Web Conf 2001";
        out.push_back(p);
    }
    return out;
}

SearchValue random_value(std::mt19937_64& rng, ValueKind kind) {
    const std::vector<std::string> words{"graph", "mining", "data", "query", "web", "the", "42", "don't",
                                         "smith", "2001", "journal", "zzz"};
    const auto w = [&] { return words[rng() % words.size()]; };
    switch (kind) {
        case ValueKind::Value: return SearchValue::value(rng() % 3 ? w() : w() + " " + w());
        case ValueKind::Keywords: return SearchValue::keywords({w(), w()});
        case ValueKind::Phrase: return SearchValue::phrase(w() + " " + w());
        case ValueKind::Pattern:
            return SearchValue::make_pattern({w(), std::nullopt, w()});
    }
    return {};
}

EngineCapabilities test_caps(double soft_and = 1.0) {
    using enum ValueKind;
    EngineCapabilities caps;
    caps.profile = "test";
    caps.predicates = {
        {"intitle", PredicateScope::FieldScoped, Field::Title, {Value, Keywords, Phrase, Pattern}},
        {"author", PredicateScope::FieldScoped, Field::Authors, {Value, Keywords, Phrase, Pattern}},
        {"year", PredicateScope::FieldScoped, Field::Year, {Value}},
        {"venue", PredicateScope::FieldScoped, Field::Venue, {Value, Keywords, Phrase, Pattern}},
        {"free", PredicateScope::Free, Field::Title, {Value, Keywords, Phrase, Pattern}},
    };
    caps.supports_or = true;
    caps.max_disjuncts = 5;
    caps.page_size = 3;
    caps.max_pages = 1000;
    caps.soft_and_threshold = soft_and;
    return caps;
}

Term random_term(std::mt19937_64& rng, const EngineCapabilities& caps) {
    const auto& pred = caps.predicates[rng() % caps.predicates.size()];
    const auto kind = pred.kinds[rng() % pred.kinds.size()];
    return term(pred.name, random_value(rng, kind));
}

}  // namespace

TEST(TermMatches, WorkedExamples) {
    const auto caps = scholar_profile();
    const auto& intitle = predicate(caps, "intitle");
    Publication moma{"m", {"A B"}, "MOMA \xE2\x80\x93 A Mapping-based Object Matching System", 2000, "V"};
    EXPECT_TRUE(term_matches(moma, intitle,
                             SearchValue::make_pattern({"MOMA", std::nullopt, std::nullopt, std::nullopt, "Object"})));
    EXPECT_FALSE(term_matches(moma, intitle, SearchValue::make_pattern({"MOMA", std::nullopt, "Object"})));

    const auto pubs = table1();
    EXPECT_TRUE(term_matches(pubs[1], intitle, SearchValue::keywords({"don't", "panic"})));
    EXPECT_FALSE(term_matches(pubs[0], intitle, SearchValue::phrase("question 43")));
    EXPECT_TRUE(term_matches(pubs[0], intitle, SearchValue::phrase("Question to")));
}

TEST(TermMatches, FieldScoping) {
    const auto caps = scholar_profile();
    const auto pubs = table1();
    EXPECT_FALSE(term_matches(pubs[0], predicate(caps, "intitle"), SearchValue::keywords({"smith"})));
    EXPECT_TRUE(term_matches(pubs[0], predicate(caps, "free"), SearchValue::keywords({"smith", "question"})));
    EXPECT_TRUE(term_matches(pubs[0], predicate(caps, "year"), SearchValue::value("2001")));
    EXPECT_TRUE(term_matches(pubs[0], predicate(caps, "year"), SearchValue::value(" 02001 ")));
    EXPECT_FALSE(term_matches(pubs[0], predicate(caps, "year"), SearchValue::value("2002")));
    EXPECT_TRUE(term_matches(pubs[1], predicate(caps, "author"), SearchValue::value("Smith")));
    EXPECT_FALSE(term_matches(pubs[1], predicate(caps, "author"), SearchValue::value("Williams Smith")));
    EXPECT_TRUE(term_matches(pubs[2], predicate(caps, "free"), SearchValue::value("taylor")));
}

TEST(Execute, AuthorSmithOnTable1) {
    const auto index = index_of(table1());
    const auto caps = scholar_profile();
    const auto q = single(term("author", SearchValue::value("smith")));
    const auto first = execute(index, q, 1, caps);
    std::set<std::string> ids;
    for (auto r : first.entities) ids.insert(index.entity(r).id);
    EXPECT_EQ(ids, (std::set<std::string>{"s1", "s2"}));
    EXPECT_FALSE(first.has_next);
    EXPECT_EQ(execute(index, q, 1, caps).entities, first.entities);
    EXPECT_TRUE(execute(index, q, 2, caps).entities.empty());
}

TEST(Execute, Pagination519) {
    std::vector<Publication> pubs;
    for (int i = 0; i < 600; ++i) {
        pubs.push_back({"e" + std::to_string(i), {i < 519 ? "Smith" : "Jones"}, "Title " + std::to_string(i),
                        2000, "V"});
    }
    const auto index = index_of(pubs);
    const auto caps = scholar_profile();
    const auto q = single(term("author", SearchValue::value("smith")));
    for (int page = 1; page <= 5; ++page) {
        const auto p = execute(index, q, page, caps);
        EXPECT_EQ(p.entities.size(), 100U);
        EXPECT_TRUE(p.has_next);
    }
    const auto last = execute(index, q, 6, caps);
    EXPECT_EQ(last.entities.size(), 19U);
    EXPECT_FALSE(last.has_next);
    EXPECT_TRUE(execute(index, q, 7, caps).entities.empty());
    EXPECT_THROW(execute(index, q, 0, caps), Error);
}

TEST(Execute, MaxPagesCapsResults) {
    std::vector<Publication> pubs;
    for (int i = 0; i < 50; ++i) pubs.push_back({"e" + std::to_string(i), {"Smith"}, "T", 2000, "V"});
    const auto index = index_of(pubs);
    auto caps = test_caps();
    caps.max_pages = 2;
    const auto q = single(term("author", SearchValue::value("smith")));
    EXPECT_FALSE(execute(index, q, 2, caps).has_next);
    EXPECT_TRUE(execute(index, q, 3, caps).entities.empty());
}

TEST(Execute, RejectsInvalidQuery) {
    const auto index = index_of(table1());
    EXPECT_THROW(execute(index, single(term("publisher", SearchValue::value("x"))), 1, scholar_profile()),
                 RejectedQuery);
}

TEST(Execute, StaticRankBreaksTies) {
    auto pubs = table1();
    const std::vector<double> popularity{0.1, 0.9, 0.5};
    const EngineIndex index(pubs, popularity);
    const auto q = single(term("author", SearchValue::value("smith")));
    const auto page = execute(index, q, 1, scholar_profile());
    ASSERT_EQ(page.entities.size(), 2U);
    EXPECT_EQ(index.entity(page.entities[0]).id, "s2");
}

TEST(EngineProperties, StrictAndAgreesWithReferenceMatcher) {
    std::mt19937_64 rng(17);
    const auto caps = test_caps();
    for (int round = 0; round < 20; ++round) {
        const auto pubs = random_pubs(rng, 40);
        const auto index = index_of(pubs);
        for (int iter = 0; iter < 100; ++iter) {
            BasicQuery b;
            const auto nt = 1 + rng() % 2;
            for (std::size_t i = 0; i < nt; ++i) b.terms.push_back(random_term(rng, caps));
            const Query q{{b}};
            std::set<std::string> expected;
            for (const auto& p : pubs) {
                const bool all = std::all_of(b.terms.begin(), b.terms.end(), [&](const Term& t) {
                    return term_matches(p, *caps.find(t.predicate), t.value);
                });
                if (all) expected.insert(p.id);
            }
            ASSERT_EQ(ids_of(index, rank_matches(index, q, caps)), expected) << to_string(q);
        }
    }
}

TEST(EngineProperties, SoftAndHalf) {
    std::mt19937_64 rng(23);
    const auto caps = test_caps(0.5);
    const auto pubs = random_pubs(rng, 60);
    const auto index = index_of(pubs);
    for (int iter = 0; iter < 300; ++iter) {
        BasicQuery b;
        const auto nt = 1 + rng() % 4;
        for (std::size_t i = 0; i < nt; ++i) b.terms.push_back(random_term(rng, caps));
        std::map<std::string, double> expected;
        for (const auto& p : pubs) {
            const auto hits = std::count_if(b.terms.begin(), b.terms.end(), [&](const Term& t) {
                return term_matches(p, *caps.find(t.predicate), t.value);
            });
            const double score = static_cast<double>(hits) / static_cast<double>(nt);
            if (hits > 0 && 2 * hits >= static_cast<long>(nt)) expected[p.id] = score;
        }
        const auto ranked = rank_matches(index, Query{{b}}, caps);
        std::map<std::string, double> got;
        for (const auto& r : ranked) got[index.entity(r.ref).id] = r.score;
        ASSERT_EQ(got.size(), expected.size());
        for (const auto& [id, score] : expected) EXPECT_DOUBLE_EQ(got.at(id), score);
        for (std::size_t i = 1; i < ranked.size(); ++i) EXPECT_GE(ranked[i - 1].score, ranked[i].score);
    }
}

TEST(EngineProperties, OrIsUnionAndPagesPartition) {
    std::mt19937_64 rng(29);
    const auto caps = test_caps();
    const auto pubs = random_pubs(rng, 80);
    const auto index = index_of(pubs);
    for (int iter = 0; iter < 200; ++iter) {
        const BasicQuery b1{{random_term(rng, caps)}};
        const BasicQuery b2{{random_term(rng, caps)}};
        const auto r1 = all_pages(index, Query{{b1}}, caps);
        const auto r2 = all_pages(index, Query{{b2}}, caps);
        const auto both = all_pages(index, Query{{b1, b2}}, caps);

        std::set<EntityRef> expected(r1.begin(), r1.end());
        expected.insert(r2.begin(), r2.end());
        const std::set<EntityRef> got(both.begin(), both.end());
        ASSERT_EQ(got, expected);
        ASSERT_EQ(both.size(), got.size()) << "duplicate across pages";

        const auto ranked = rank_matches(index, Query{{b1, b2}}, caps);
        ASSERT_EQ(both.size(), ranked.size());
        for (std::size_t i = 0; i < both.size(); ++i) ASSERT_EQ(both[i], ranked[i].ref);
    }
}

TEST(EngineProperties, RelaxingThresholdNeverShrinksResults) {
    std::mt19937_64 rng(31);
    const auto pubs = random_pubs(rng, 60);
    const auto index = index_of(pubs);
    for (int iter = 0; iter < 200; ++iter) {
        BasicQuery b;
        const auto nt = 2 + rng() % 3;
        const auto caps = test_caps();
        for (std::size_t i = 0; i < nt; ++i) b.terms.push_back(random_term(rng, caps));
        std::set<std::string> previous;
        for (double theta : {1.0, 0.75, 0.5, 0.25}) {
            const auto got = ids_of(index, rank_matches(index, Query{{b}}, test_caps(theta)));
            EXPECT_TRUE(std::includes(got.begin(), got.end(), previous.begin(), previous.end()));
            previous = got;
        }
    }
}
