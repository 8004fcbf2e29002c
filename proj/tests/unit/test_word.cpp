#include <gtest/gtest.h>

#include <cstdio>
#include <fstream>
#include <random>
#include <set>
#include <string>
#include <thread>
#include <vector>

#include "oracles.hpp"
#include "qw/descriptor.hpp"
#include "qw/factor_index.hpp"
#include "qw/match.hpp"
#include "qw/stream.hpp"
#include "qw/word.hpp"

using namespace qw;

TEST(Alphabet, DisplayMapMustBeInjective) {
  EXPECT_THROW(Alphabet(2, "aa"), DomainError);
  EXPECT_THROW(Alphabet(3, "ab"), DomainError);
  EXPECT_THROW(Alphabet(0), DomainError);
  Alphabet a(3, "xyz");
  EXPECT_EQ(a.letter('y'), 1u);
  EXPECT_EQ(a.symbol(2), 'z');
  EXPECT_THROW(a.letter('q'), DomainError);
}

TEST(Alphabet, BitsPerLetter) {
  EXPECT_EQ(Alphabet(1).bits_per_letter(), 1u);
  EXPECT_EQ(Alphabet(2).bits_per_letter(), 1u);
  EXPECT_EQ(Alphabet(3).bits_per_letter(), 2u);
  EXPECT_EQ(Alphabet(4).bits_per_letter(), 2u);
  EXPECT_EQ(Alphabet(5).bits_per_letter(), 3u);
}

TEST(Word, ParseAndRenderRoundTrip) {
  Alphabet ab = Alphabet::letters(2);
  Word w = parse_word("abaab", ab);
  EXPECT_EQ(w, (Word{0, 1, 0, 0, 1}));
  EXPECT_EQ(render(w, ab), "abaab");
  EXPECT_EQ(render(Word{3, 12}, Alphabet(13)), "3,12");
  EXPECT_EQ(render_numeric(Word{1, 0, 2}, 3), "102");
  EXPECT_EQ(render_numeric(Word{11, 0}, 12), "11,0");
}

TEST(Word, InferredAlphabet) {
  EXPECT_EQ(infer_alphabet("0120").size(), 3u);
  EXPECT_EQ(infer_alphabet("aabcaa").size(), 3u);
  EXPECT_EQ(parse_word("aabcaa"), (Word{0, 0, 1, 2, 0, 0}));
}

TEST(Word, FactorIsInclusive) {
  Word w{0, 1, 2, 3, 4};
  EXPECT_EQ(w.factor(1, 3), (Word{1, 2, 3}));
  EXPECT_EQ(w.factor(2, 2), (Word{2}));
  EXPECT_THROW(w.factor(3, 5), DomainError);
}

TEST(Match, OccurrencesOfAbaInAbaababa) {
  Word u = parse_word("aba", Alphabet::letters(2));
  Word v = parse_word("abaababa", Alphabet::letters(2));
  EXPECT_EQ(occurrences(u, v).positions, (std::vector<std::size_t>{0, 3, 5}));
  EXPECT_EQ(count(u, v), 3u);
}

TEST(Match, AgreesWithNaiveScan) {
  std::mt19937_64 rng(7);
  for (int trial = 0; trial < 500; ++trial) {
    Word v = oracle::random_word(rng, rng() % 200, 2 + rng() % 2);
    Word u = oracle::random_word(rng, 1 + rng() % 5, 2);
    ASSERT_EQ(occurrences(u, v).positions, oracle::occurrences(u, v));
  }
}

TEST(Match, ZArrayMatchesDefinition) {
  std::mt19937_64 rng(11);
  for (int trial = 0; trial < 200; ++trial) {
    Word v = oracle::random_word(rng, 1 + rng() % 60, 2);
    auto z = z_array(v.span());
    for (std::size_t j = 1; j < v.size(); ++j) {
      std::size_t l = 0;
      while (j + l < v.size() && v[l] == v[j + l])
        ++l;
      ASSERT_EQ(z[j], l);
    }
  }
}

TEST(Stream, FibonacciPrefixAsFixedPointOfIntegration) {
  WordStream fib = make_stream("fibonacci");
  EXPECT_EQ(render(fib.prefix(14), fib.alphabet()), "01001010010010");
  Word ref = oracle::substitution_prefix({Word{0, 1, 0}, Word{0, 1}}, 0, 5000);
  EXPECT_EQ(fib.prefix(5000), ref);
}

TEST(Stream, PrefixCoherence) {
  for (const auto &name : corpus::names()) {
    WordStream x = make_stream(name);
    EXPECT_TRUE(prefix_coherent(x, 50, 500)) << name;
    Word big = x.prefix(700);
    EXPECT_EQ(x.prefix(123), big.prefix(123)) << name;
    EXPECT_EQ(x.factor(40, 30), big.slice(40, 30)) << name;
  }
}

TEST(Stream, BudgetIsEnforced) {
  WordStream x = make_stream("fibonacci");
  x.set_budget(1000);
  EXPECT_NO_THROW(x.prefix(1000));
  EXPECT_THROW(x.prefix(1001), ResourceError);
}

TEST(Stream, ConcurrentReadersSeeTheSamePrefix) {
  WordStream x = make_stream("sturmian-21");
  std::vector<Word> seen(4);
  std::vector<std::thread> threads;
  for (std::size_t t = 0; t < seen.size(); ++t)
    threads.emplace_back([&, t] { seen[t] = x.prefix(10000 + 1000 * t).prefix(10000); });
  for (auto &th : threads)
    th.join();
  for (const auto &s : seen)
    EXPECT_EQ(s, seen.front());
}

TEST(Stream, RandomStreamIsSeeded) {
  EXPECT_EQ(random_stream(5, 3).prefix(300), random_stream(5, 3).prefix(300));
  EXPECT_NE(random_stream(5, 3).prefix(300), random_stream(6, 3).prefix(300));
  Word w = random_stream(1, 4).prefix(1000);
  EXPECT_TRUE(fits(w, Alphabet(4)));
}

TEST(Stream, FileBackedStreamEndsWithResourceError) {
  std::string path = ::testing::TempDir() + "qw_word_file.txt";
  {
    std::ofstream f(path);
    f << "abba\nab\n";
  }
  WordStream x = make_stream("file:" + path + ":ab");
  EXPECT_EQ(x.prefix(6), (Word{0, 1, 1, 0, 0, 1}));
  EXPECT_THROW(x.prefix(7), ResourceError);
  std::remove(path.c_str());
}

TEST(Stream, OutOfAlphabetLettersRejected) {
  EXPECT_THROW(ultimately_periodic(Word{}, Word{0, 2}, Alphabet(2), "bad").prefix(5), DomainError);
}

TEST(FactorIndex, CountsMatchBruteForce) {
  std::mt19937_64 rng(3);
  for (int trial = 0; trial < 60; ++trial) {
    Word v = oracle::random_word(rng, 1 + rng() % 300, 1 + rng() % 3);
    FactorIndex idx(v);
    std::size_t n_max = std::min<std::size_t>(v.size(), 12);
    auto counts = idx.distinct_counts(n_max);
    ASSERT_EQ(counts[0], 1u);
    for (std::size_t n = 1; n <= n_max; ++n) {
      auto ref = oracle::factors(v, n);
      ASSERT_EQ(counts[n], ref.size());
      auto got = idx.factors(n);
      ASSERT_EQ(std::set<Word>(got.begin(), got.end()), ref);
    }
  }
}

TEST(FactorIndex, LanguageOfFibonacci) {
  auto l2 = language(make_stream("fibonacci"), 2, 100);
  EXPECT_EQ(l2, (std::set<Word>{Word{0, 0}, Word{0, 1}, Word{1, 0}}));
  EXPECT_THROW(language(make_stream("fibonacci"), 5, 4), HorizonError);
}

TEST(Descriptor, ShorthandAndJsonAgree) {
  auto a = make_stream("sturmian:2,1").prefix(500);
  auto b = stream_from_descriptor(json{{"kind", "sturmian"}, {"cf", {2, 1}}}).prefix(500);
  EXPECT_EQ(a, b);
  EXPECT_EQ(make_stream("sturmian-21").prefix(500), a);
  EXPECT_EQ(make_stream(R"({"kind":"periodic","word":"aba"})").prefix(9),
            parse_word("abaabaaba", Alphabet::letters(2)));
  EXPECT_EQ(make_stream("word:1:0").prefix(4), (Word{1, 0, 0, 0}));
  EXPECT_EQ(make_stream("integrate:010:non-recurrent").prefix(8), (Word{0, 1, 0, 1, 0, 0, 1, 0}));
}

TEST(Descriptor, SubstitutionKind) {
  auto x = stream_from_descriptor(
      json{{"kind", "substitution"}, {"alphabet", "ab"}, {"images", {"ab", "a"}}, {"start", "a"}});
  EXPECT_EQ(render(x.prefix(13), x.alphabet()), "abaababaabaab");
}

TEST(Descriptor, UnknownGeneratorsAreDomainErrors) {
  EXPECT_THROW(make_stream("no-such-word"), DomainError);
  EXPECT_THROW(make_stream("sturmian:1,x"), DomainError);
  EXPECT_THROW(make_stream("{not json"), DomainError);
  EXPECT_THROW(stream_from_descriptor(json{{"kind", "warp"}}), DomainError);
}
