#include <gtest/gtest.h>

#include <sstream>

#include "qgen/error.hpp"
#include "qgen/record_format.hpp"

using namespace qgen;

TEST(RecordFormat, EscapeRoundTrip) {
    for (std::string v : {"plain", "tab\there", "pipe|bar", "back\\slash", "new\nline", ""}) {
        EXPECT_EQ(unescape_value(escape_value(v)), v);
    }
}

TEST(RecordFormat, ListsKeepEscapedPipes) {
    EXPECT_EQ(split_list(join_list({"a|b", "c"})), (std::vector<std::string>{"a|b", "c"}));
}

TEST(RecordFormat, WriteThenRead) {
    std::ostringstream out;
    RecordWriter w(out, "qf-test-1");
    w.field("id", "x1").list("authors", {"A B", "C|D"}).field("year", 1999LL);
    w.end_record();
    std::istringstream in("# comment\n\n" + out.str());
    const auto file = read_records(in, "qf-test-1", "mem");
    ASSERT_EQ(file.records.size(), 1U);
    const auto& r = file.records[0];
    EXPECT_EQ(r.first_key(), "id");
    EXPECT_EQ(r.get("id"), "x1");
    EXPECT_EQ(r.get_list("authors"), (std::vector<std::string>{"A B", "C|D"}));
    EXPECT_EQ(r.get_int("year"), 1999);
}

TEST(RecordFormat, WrongHeaderNamesLine) {
    std::istringstream in("format=other\n");
    try {
        read_records(in, "qf-test-1", "mem");
        FAIL();
    } catch (const ParseError& e) {
        EXPECT_EQ(e.line(), 1U);
    }
}

TEST(RecordFormat, MissingKeyNamesLine) {
    std::istringstream in("format=qf-test-1\nid=a\nid=b\tyear=x\n");
    const auto file = read_records(in, "qf-test-1", "mem");
    try {
        file.records[0].get("year");
        FAIL();
    } catch (const ParseError& e) {
        EXPECT_EQ(e.line(), 2U);
    }
    EXPECT_THROW(file.records[1].get_int("year"), ParseError);
}
