#include <gtest/gtest.h>

#include <random>
#include <vector>

#include "oracles.hpp"
#include "qw/descriptor.hpp"
#include "qw/quasiperiod.hpp"

using namespace qw;

namespace {

Word ab(std::string_view s) { return parse_word(s, Alphabet::letters(2)); }

std::vector<std::size_t> lengths(const std::vector<Word> &ws) {
  std::vector<std::size_t> out;
  for (const auto &w : ws)
    out.push_back(w.size());
  return out;
}

} // namespace

TEST(Cover, ExampleOneIsCoveredByAba) {
  auto r = check_cover(ab("aba"), make_stream("paper-example-1"), 13);
  EXPECT_TRUE(r.covered());
  EXPECT_EQ(r.verdict, CoverVerdict::covered);
}

TEST(Cover, GapIsReported) {
  Word text = ab("abaaabaab");
  auto r = check_cover(ab("aba"), text.span(), 7);
  EXPECT_EQ(r.verdict, CoverVerdict::gap);
  EXPECT_EQ(r.positions, (std::vector<std::size_t>{0, 4}));
  EXPECT_EQ(r.gap_from, 0u);
  EXPECT_EQ(r.gap_to, 4u);
  EXPECT_EQ(r.first_uncovered, 3u);
}

TEST(Cover, MissingInitialOccurrence) {
  auto r = check_cover(ab("ba"), make_stream("periodic:ab"), 10);
  EXPECT_EQ(r.verdict, CoverVerdict::missing_initial);
  EXPECT_EQ(r.first_uncovered, 0u);
}

TEST(Cover, HorizonVerdictAgreesWithOracle) {
  std::mt19937_64 rng(99);
  for (int trial = 0; trial < 2000; ++trial) {
    Word v = oracle::random_covered_word(rng, 20 + rng() % 60, 2);
    std::size_t len = 1 + rng() % 10;
    std::size_t n = len + rng() % (v.size() - len - 9);
    Word q = v.prefix(len);
    Word text = v.prefix(n + len - 1);
    ASSERT_EQ(check_cover(q, text.span(), n).covered(), oracle::covers_up_to(q, text, n));
  }
}

TEST(Cover, AllCoversOfAbababa) {
  EXPECT_EQ(lengths(all_covers(ab("abababa"))), (std::vector<std::size_t>{3, 5, 7}));
  EXPECT_EQ(shortest_cover_linear(ab("abababa")), ab("aba"));
}

TEST(Cover, ShortestCoverArrayMatchesOracleOnEveryPrefix) {
  std::mt19937_64 rng(4);
  for (int trial = 0; trial < 300; ++trial) {
    Word v = oracle::random_covered_word(rng, 1 + rng() % 80, 1 + rng() % 3);
    auto cover = shortest_cover_array(v.span());
    for (std::size_t i = 1; i <= v.size(); ++i)
      ASSERT_EQ(cover[i], oracle::all_cover_lengths(v.prefix(i)).front());
  }
}

TEST(Cover, AllCoversMatchesOracle) {
  std::mt19937_64 rng(8);
  for (int trial = 0; trial < 400; ++trial) {
    Word v = oracle::random_covered_word(rng, 1 + rng() % 60, 2);
    ASSERT_EQ(lengths(all_covers(v)), oracle::all_cover_lengths(v));
  }
}

TEST(Quasiperiods, FibonacciLadder) {
  auto qps = quasiperiods_up_to(make_stream("fibonacci"), 10000, 50);
  std::vector<std::size_t> expected;
  for (std::size_t l = 1; l <= 50; ++l)
    if (l != 1 && l != 2 && l != 4 && l != 7 && l != 12 && l != 20 && l != 33)
      expected.push_back(l);
  EXPECT_EQ(lengths(qps), expected);
  EXPECT_EQ(qps.front(), (Word{0, 1, 0}));
}

TEST(Quasiperiods, MaskAgreesWithOracle) {
  std::mt19937_64 rng(12);
  for (int trial = 0; trial < 200; ++trial) {
    Word v = oracle::random_covered_word(rng, 200, 2);
    std::size_t n = 100 + rng() % 50, maxlen = 40;
    auto mask = quasiperiod_mask(v.span(), n, maxlen);
    for (std::size_t len = 1; len <= maxlen; ++len)
      ASSERT_EQ(mask[len], oracle::covers_up_to(v.prefix(len), v.prefix(n + len - 1), n)) << len;
  }
}

TEST(Quasiperiods, ExampleOneHasAba) {
  auto qps = quasiperiods_up_to(make_stream("paper-example-1"), 41, 10);
  ASSERT_FALSE(qps.empty());
  EXPECT_EQ(qps.front(), ab("aba"));
}

TEST(Quasiperiods, PeriodicAba) {
  auto qps = quasiperiods_up_to(make_stream("periodic:aba"), 30, 10);
  EXPECT_EQ(lengths(qps), (std::vector<std::size_t>{3, 4, 5, 6, 7, 8, 9, 10}));
}

TEST(Multiscale, FibonacciWitnessesFive) {
  auto w = multiscale_witness(make_stream("fibonacci"), 100000, 5, 50);
  EXPECT_TRUE(w.witnessed);
  EXPECT_EQ(lengths(w.witnesses), (std::vector<std::size_t>{3, 5, 6, 8, 9}));
}

TEST(Multiscale, RandomWordIsNotMultiscale) {
  EXPECT_FALSE(multiscale_witness(make_stream("random:3"), 10000, 2, 200).witnessed);
}

TEST(Recurrence, GapBoundedByTwiceTheQuasiperiod) {
  WordStream x = make_stream("fibonacci-ab");
  auto r = uniform_recurrence_check(x, ab("b"), 10000, ab("aba"));
  EXPECT_EQ(r.max_gap, 3u);
  EXPECT_EQ(r.bound, 6u);
  EXPECT_TRUE(r.within_bound);
  for (const auto &q : quasiperiods_up_to(x, 10000, 30))
    for (const auto &u : oracle::factors(q, 3))
      EXPECT_TRUE(uniform_recurrence_check(x, u, 10000, q).within_bound);
}

TEST(Recurrence, AbsentFactorIsADomainError) {
  EXPECT_THROW(uniform_recurrence_check(make_stream("fibonacci"), Word{1, 1}, 1000), DomainError);
}
