#include <gtest/gtest.h>

#include "degenum/io.hpp"

using namespace degenum;

TEST(Io, DegreesOnePerLine) {
  auto d = io::parse_degrees("# comment\n2\n\n2\n 2 \n2\n");
  EXPECT_EQ(d, DegreeSequence({2, 2, 2, 2}));
}

TEST(Io, DegreesJsonArray) {
  auto d = io::parse_degrees("[3, 2, 2, 2, 1]\n");
  EXPECT_EQ(d, DegreeSequence({3, 2, 2, 2, 1}));
}

TEST(Io, DegreeErrorsCarryLineNumbers) {
  try {
    io::parse_degrees("2\n2\nx\n2\n", "d.txt");
    FAIL() << "expected ParseError";
  } catch (const io::ParseError& e) {
    EXPECT_EQ(e.line(), 3);
    EXPECT_NE(std::string(e.what()).find("d.txt:3"), std::string::npos);
  }
  try {
    io::parse_degrees("# header\n2\n2\n2\n9\n", "d.txt");
    FAIL() << "expected ParseError";
  } catch (const io::ParseError& e) {
    EXPECT_EQ(e.line(), 5);
  }
  EXPECT_THROW(io::parse_degrees("1\n1\n1\n"), io::ParseError);  // odd sum
  EXPECT_THROW(io::parse_degrees(""), io::ParseError);
  EXPECT_THROW(io::parse_degrees("[1, 2,"), io::ParseError);
}

TEST(Io, EdgeList) {
  auto x = io::parse_edge_list("1 2\n# c\n3\t4\n2,3\n", 4);
  EXPECT_EQ(x.edge_count(), 3);
  EXPECT_TRUE(x.has_edge(0, 1));
  EXPECT_TRUE(x.has_edge(2, 3));
  EXPECT_TRUE(x.has_edge(1, 2));
}

TEST(Io, EdgeListErrors) {
  auto line_of = [](const char* text) {
    try {
      io::parse_edge_list(text, 4, "x.txt");
    } catch (const io::ParseError& e) {
      return e.line();
    }
    return -1;
  };
  EXPECT_EQ(line_of("1 2\n1 5\n"), 2);
  EXPECT_EQ(line_of("1 2\n\n3 3\n"), 3);
  EXPECT_EQ(line_of("1 2\n2 1\n"), 2);
  EXPECT_EQ(line_of("1 2\nfoo\n"), 2);
}

TEST(Io, RoundTrip) {
  DegreeSequence d({3, 2, 2, 2, 1});
  EXPECT_EQ(io::parse_degrees(io::format_degrees(d)), d);
  ForbiddenGraph x(5, {{0, 4}, {1, 2}, {3, 2}});
  EXPECT_EQ(io::parse_edge_list(io::format_edge_list(x), 5), x);
}
