#include <gtest/gtest.h>

#include <set>
#include <sstream>

#include "oracles.hpp"
#include "qw/complexity.hpp"
#include "qw/descriptor.hpp"
#include "qw/quasiperiod.hpp"
#include "qw/rauzy.hpp"

using namespace qw;

TEST(Rauzy, FibonacciOrderOne) {
  auto g = build_rauzy(make_stream("fibonacci"), 1, 256);
  EXPECT_EQ(g.vertices(), (std::vector<Word>{Word{0}, Word{1}}));
  std::set<std::pair<Word, Word>> edges;
  for (const auto &e : g.edges())
    edges.insert({g.vertex(e.from), g.vertex(e.to)});
  EXPECT_EQ(edges, (std::set<std::pair<Word, Word>>{{Word{0}, Word{0}}, {Word{0}, Word{1}}, {Word{1}, Word{0}}}));
  auto s = special_factors(g);
  EXPECT_EQ(s.left, (std::vector<Word>{Word{0}}));
  EXPECT_EQ(s.right, (std::vector<Word>{Word{0}}));
  auto shape = eight_shape(g, Word{0});
  EXPECT_TRUE(shape.eight);
  EXPECT_EQ(shape.short_loop, 1u);
  EXPECT_EQ(shape.long_loop, 2u);
}

TEST(Rauzy, MatchesOracleAndComplexity) {
  for (const char *name : {"fibonacci", "sturmian-21", "tower", "random:4"}) {
    WordStream x = make_stream(name);
    Word text = x.prefix(4096);
    FactorIndex idx(text);
    for (std::size_t n = 1; n <= 9; ++n) {
      auto g = rauzy_from_index(idx, n);
      auto ref = oracle::rauzy(text, n);
      ASSERT_EQ(g.vertex_count(), ref.size());
      std::map<Word, std::set<Word>> got;
      for (const auto &v : g.vertices())
        got[v];
      for (const auto &e : g.edges())
        got[g.vertex(e.from)].insert(g.vertex(e.to));
      EXPECT_EQ(got, ref) << name << " n=" << n;
      EXPECT_EQ(g.edge_count(), idx.distinct(n + 1));
    }
  }
}

TEST(Rauzy, UnsaturatedHorizonIsRefused) {
  EXPECT_THROW(build_rauzy(make_stream("fibonacci"), 10, 22), HorizonError);
  EXPECT_THROW(build_rauzy(make_stream("fibonacci"), 10, 12), HorizonError);
  EXPECT_NO_THROW(build_rauzy_saturated(make_stream("fibonacci"), 10, 16, 1 << 16));
}

TEST(Rauzy, EightShapeOnlyAtBursts) {
  WordStream x = make_stream("fibonacci");
  FactorIndex idx(x.prefix(1 << 14));
  std::vector<std::size_t> eights;
  for (std::size_t n = 1; n <= 40; ++n) {
    auto g = rauzy_from_index(idx, n);
    auto s = special_factors(g);
    ASSERT_EQ(s.left.size(), 1u);
    ASSERT_EQ(s.right.size(), 1u);
    if (eight_shape(g, s.left.front()).eight)
      eights.push_back(n);
  }
  EXPECT_EQ(eights, (std::vector<std::size_t>{1, 3, 6, 11, 19, 32}));
  EXPECT_THROW(eight_shape(rauzy_from_index(idx, 2), Word{1, 1}), DomainError);
}

TEST(Deconnect, FibonacciG3Without010) {
  auto g = build_rauzy(make_stream("fibonacci"), 3, 512);
  auto r = deconnect_check(g, {Word{0, 1, 0}}, 1);
  EXPECT_TRUE(r.acyclic);
  EXPECT_EQ(r.longest_path, 1u);
  EXPECT_TRUE(r.ok);
  auto full = deconnect_check(g, {}, 1);
  EXPECT_FALSE(full.acyclic);
}

TEST(Deconnect, QuasiperiodsAgreeWithPathOracle) {
  for (const char *name : {"fibonacci", "sturmian-21", "periodic:aab"}) {
    WordStream x = make_stream(name);
    Word text = x.prefix(1 << 13);
    FactorIndex idx(text);
    for (const auto &q : quasiperiods_up_to(x, 2000, 25)) {
      auto g = rauzy_from_index(idx, q.size());
      auto r = deconnect_check(g, {q}, 1);
      long ref = oracle::longest_path(oracle::rauzy(text, q.size()), {q});
      ASSERT_EQ(r.acyclic, ref >= 0);
      if (r.acyclic) {
        EXPECT_EQ(static_cast<long>(r.longest_path), ref);
      }
      EXPECT_TRUE(r.ok) << name << " l(q)=" << q.size();
    }
  }
}

TEST(Rauzy, DotMarksSpecialAndRemovedVertices) {
  auto g = build_rauzy(make_stream("fibonacci"), 2, 256);
  std::ostringstream os;
  write_dot(os, g, Alphabet::digits(2), {Word{0, 1}});
  std::string dot = os.str();
  EXPECT_EQ(dot.rfind("digraph G2 {", 0), 0u);
  EXPECT_NE(dot.find("label=\"01\""), std::string::npos);
  EXPECT_NE(dot.find("style=\"filled,dashed\""), std::string::npos);
  EXPECT_NE(dot.find("fillcolor="), std::string::npos);
}
