#include <gtest/gtest.h>

#include <fstream>
#include <sstream>

#include "fixtures.hpp"
#include "qgen/random.hpp"
#include "qgen/run_config.hpp"

using namespace qgen;
using qgen::testing::TempDir;

namespace {

RunConfig parse(const std::string& body, const std::filesystem::path& base = "/base") {
    std::istringstream in("format=qf-run-1\n" + body);
    return read_run_config(in, base);
}

std::string field_of(const std::string& body, const std::filesystem::path& base = "/base") {
    try {
        validate(parse(body, base));
    } catch (const ConfigError& e) {
        return e.field();
    }
    return "";
}

}  // namespace

TEST(RunConfig, ParsesFields) {
    const auto c = parse(
        "corpus=data/c.qf\ncaps=builtin:scholar\ngenspec=builtin:1\ngenspec=g/2.genspec\nseed=42\n"
        "sizes=5,30\ncategories=author|random\nreps=2\nfollow=first-page-only\nnoise.profile=zero\n"
        "noise.distractor_count=7\nmatch.title_threshold=0.7\nout=/abs/wh\njobs=2\n");
    EXPECT_EQ(c.corpus, std::filesystem::path("/base/data/c.qf"));
    EXPECT_EQ(c.genspecs, (std::vector<std::string>{"builtin:1", "/base/g/2.genspec"}));
    EXPECT_EQ(c.seed, 42U);
    EXPECT_EQ(c.sizes, (std::vector<int>{5, 30}));
    EXPECT_EQ(c.categories, (std::vector<Category>{Category::Author, Category::Random}));
    EXPECT_EQ(c.reps, 2);
    EXPECT_EQ(c.follow.kind, FollowPolicy::Kind::FirstPageOnly);
    EXPECT_EQ(c.noise.duplicate_probability, 0.0);
    EXPECT_EQ(c.noise.distractor_count, 7);
    EXPECT_EQ(c.noise.seed, split_seed(42, "index"));
    EXPECT_DOUBLE_EQ(c.match.title_threshold, 0.7);
    EXPECT_EQ(c.out, std::filesystem::path("/abs/wh"));
    EXPECT_EQ(c.jobs, 2U);
}

TEST(RunConfig, MasterSeedOverride) {
    auto c = parse("seed=1\n");
    set_master_seed(c, 9);
    EXPECT_EQ(c.noise.seed, split_seed(9, "index"));
    auto pinned = parse("seed=1\nnoise.seed=5\n");
    set_master_seed(pinned, 9);
    EXPECT_EQ(pinned.noise.seed, 5U);
}

TEST(RunConfig, ErrorsNameTheField) {
    try {
        parse("colour=blue\n");
        FAIL();
    } catch (const ConfigError& e) {
        EXPECT_EQ(e.field(), "colour");
    }
    try {
        parse("seed=-3\n");
        FAIL();
    } catch (const ConfigError& e) {
        EXPECT_EQ(e.field(), "seed");
    }
    EXPECT_THROW(parse("follow=sometimes\n"), ConfigError);
    EXPECT_THROW(parse("categories=colour\n"), ConfigError);
}

TEST(RunConfig, ValidationNamesTheField) {
    TempDir dir("cfg");
    std::ofstream(dir / "c.qf") << "format=qf-corpus-1\n";
    EXPECT_EQ(field_of("genspec=builtin:1\n", dir.path()), "corpus");
    EXPECT_EQ(field_of("corpus=missing.qf\ngenspec=builtin:1\n", dir.path()), "corpus");
    EXPECT_EQ(field_of("corpus=c.qf\n", dir.path()), "genspec");
    EXPECT_EQ(field_of("corpus=c.qf\ngenspec=builtin:11\n", dir.path()), "genspec");
    EXPECT_EQ(field_of("corpus=c.qf\ngenspec=builtin:1\ncaps=nothere.caps\n", dir.path()), "caps");
    EXPECT_EQ(field_of("corpus=c.qf\ngenspec=builtin:1\nreps=0\n", dir.path()), "reps");
    EXPECT_EQ(field_of("corpus=c.qf\ngenspec=builtin:1\n", dir.path()), "");
}

TEST(RunConfig, ShippedConfigsParse) {
    const std::filesystem::path configs = std::string(QGEN_SOURCE_DIR) + "/configs";
    const auto grid = load_run_config(configs / "paper-grid.run");
    EXPECT_EQ(grid.genspecs.size(), 10U);
    EXPECT_EQ(grid.sizes, (std::vector<int>{5, 30, 100}));
    EXPECT_EQ(grid.reps, 5);
    const auto zero = load_run_config(configs / "zero-noise.run");
    EXPECT_EQ(zero.noise.duplicate_probability, 0.0);
    EXPECT_EQ(zero.noise.distractor_count, 0);
}
