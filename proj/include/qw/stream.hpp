#pragma once

// Lazily materialized infinite words.
//
// A WordStream is a cheap shared handle over a memoized prefix and the rule
// that extends it. Extension is append-only and serialized by a mutex, so
// prefix(m) is always a prefix of prefix(n) for m <= n.

#include <cstddef>
#include <cstdint>
#include <fstream>
#include <iterator>
#include <memory>
#include <mutex>
#include <random>
#include <span>
#include <string>
#include <utility>
#include <vector>

#include "qw/error.hpp"
#include "qw/word.hpp"

namespace qw {

/// Rule producing the letters of an infinite word.
class Source {
public:
  virtual ~Source() = default;
  /// Appends letters to `cache` until it holds at least `target` letters.
  /// `cache` only ever contains letters this source produced earlier.
  virtual void extend(std::vector<Letter> &cache, std::size_t target) = 0;
};

class WordStream {
public:
  static constexpr std::size_t default_budget = std::size_t{1} << 28;

  WordStream(std::unique_ptr<Source> source, Alphabet alphabet, std::string name)
      : state_(std::make_shared<State>()) {
    state_->source = std::move(source);
    state_->alphabet = std::move(alphabet);
    state_->name = std::move(name);
  }

  const Alphabet &alphabet() const noexcept { return state_->alphabet; }
  const std::string &name() const noexcept { return state_->name; }

  /// Largest prefix this stream is allowed to materialize.
  void set_budget(std::size_t letters) {
    std::lock_guard lock(state_->mutex);
    state_->budget = letters;
  }
  std::size_t budget() const {
    std::lock_guard lock(state_->mutex);
    return state_->budget;
  }

  /// x_0 ... x_{n-1}.
  Word prefix(std::size_t n) const {
    std::lock_guard lock(state_->mutex);
    ensure(n);
    return Word(std::span<const Letter>(state_->cache).first(n));
  }

  /// x_pos ... x_{pos+len-1}.
  Word factor(std::size_t pos, std::size_t len) const {
    std::lock_guard lock(state_->mutex);
    ensure(pos + len);
    return Word(std::span<const Letter>(state_->cache).subspan(pos, len));
  }

  Letter at(std::size_t i) const {
    std::lock_guard lock(state_->mutex);
    ensure(i + 1);
    return state_->cache[i];
  }

  /// Length of the prefix materialized so far.
  std::size_t materialized() const {
    std::lock_guard lock(state_->mutex);
    return state_->cache.size();
  }

private:
  struct State {
    std::mutex mutex;
    std::vector<Letter> cache;
    std::unique_ptr<Source> source;
    Alphabet alphabet;
    std::string name;
    std::size_t budget = default_budget;
  };

  void ensure(std::size_t n) const {
    auto &s = *state_;
    if (n <= s.cache.size())
      return;
    if (n > s.budget)
      throw ResourceError("stream '" + s.name + "': prefix of length " + std::to_string(n) +
                          " exceeds the budget of " + std::to_string(s.budget) + " letters");
    std::size_t old = s.cache.size();
    s.source->extend(s.cache, n);
    if (s.cache.size() < n)
      throw ResourceError("stream '" + s.name + "' could not produce " + std::to_string(n) + " letters");
    for (std::size_t i = old; i < s.cache.size(); ++i)
      if (!s.alphabet.contains(s.cache[i]))
        throw DomainError("stream '" + s.name + "' produced a letter outside its alphabet");
  }

  std::shared_ptr<State> state_;
};

// ---------------------------------------------------------------------------
// Sources

/// head . period^omega
class UltimatelyPeriodicSource final : public Source {
public:
  UltimatelyPeriodicSource(Word head, Word period) : head_(std::move(head)), period_(std::move(period)) {
    if (period_.empty())
      throw DomainError("periodic part must be nonempty");
  }

  void extend(std::vector<Letter> &cache, std::size_t target) override {
    while (cache.size() < target) {
      std::size_t i = cache.size();
      cache.push_back(i < head_.size() ? head_[i] : period_[(i - head_.size()) % period_.size()]);
    }
  }

private:
  Word head_, period_;
};

/// Fixed point of a letter-to-word substitution, starting at a given letter.
class FixedPointSource final : public Source {
public:
  FixedPointSource(std::vector<Word> images, Letter start) : images_(std::move(images)) {
    if (start >= images_.size())
      throw DomainError("fixed point start letter has no image");
    const Word &seed = images_[start];
    if (seed.size() < 2 || seed[0] != start)
      throw DomainError("substitution has no infinite fixed point starting at letter " + std::to_string(start));
    seed_ = seed;
  }

  void extend(std::vector<Letter> &cache, std::size_t target) override {
    if (cache.empty()) {
      cache.assign(seed_.begin(), seed_.end());
      read_ = 1;
    }
    while (cache.size() < target) {
      if (read_ >= cache.size())
        throw ResourceError("substitution fixed point is finite");
      Letter l = cache[read_++];
      if (l >= images_.size())
        throw DomainError("substitution has no image for letter " + std::to_string(l));
      const Word &img = images_[l];
      cache.insert(cache.end(), img.begin(), img.end());
    }
  }

private:
  std::vector<Word> images_;
  Word seed_;
  std::size_t read_ = 0;
};

/// Letters read from a text file through a display map. Finite, so reading
/// past the end is a resource error.
class FileSource final : public Source {
public:
  FileSource(const std::string &path, const Alphabet &alphabet) {
    std::ifstream in(path, std::ios::binary);
    if (!in)
      throw DomainError("cannot open word file '" + path + "'");
    std::string text((std::istreambuf_iterator<char>(in)), std::istreambuf_iterator<char>());
    word_ = parse_word(text, alphabet);
  }

  void extend(std::vector<Letter> &cache, std::size_t target) override {
    if (target > word_.size())
      throw ResourceError("word file holds only " + std::to_string(word_.size()) + " letters");
    cache.assign(word_.begin(), word_.begin() + static_cast<std::ptrdiff_t>(target));
  }

private:
  Word word_;
};

/// Uniform i.i.d. letters from a seeded 64-bit Mersenne twister. Letters are
/// drawn by modular reduction so output is identical across standard libraries.
class RandomSource final : public Source {
public:
  RandomSource(std::uint64_t seed, std::size_t alphabet_size) : rng_(seed), k_(alphabet_size) {
    if (k_ == 0)
      throw DomainError("random stream needs a nonempty alphabet");
  }

  void extend(std::vector<Letter> &cache, std::size_t target) override {
    while (cache.size() < target)
      cache.push_back(static_cast<Letter>(rng_() % k_));
  }

private:
  std::mt19937_64 rng_;
  std::size_t k_;
};

// ---------------------------------------------------------------------------
// Constructors

inline WordStream periodic(const Word &q, Alphabet alphabet, std::string name = "periodic") {
  return WordStream(std::make_unique<UltimatelyPeriodicSource>(Word{}, q), std::move(alphabet), std::move(name));
}

inline WordStream periodic(std::string_view q) {
  Alphabet a = infer_alphabet(q);
  return periodic(parse_word(q, a), a, "periodic:" + std::string(q));
}

inline WordStream ultimately_periodic(const Word &head, const Word &period, Alphabet alphabet,
                                      std::string name = "ultimately-periodic") {
  return WordStream(std::make_unique<UltimatelyPeriodicSource>(head, period), std::move(alphabet),
                    std::move(name));
}

inline WordStream fixed_point(std::vector<Word> images, Letter start, Alphabet alphabet,
                              std::string name = "fixed-point") {
  return WordStream(std::make_unique<FixedPointSource>(std::move(images), start), std::move(alphabet),
                    std::move(name));
}

inline WordStream file_stream(const std::string &path, Alphabet alphabet) {
  auto src = std::make_unique<FileSource>(path, alphabet);
  return WordStream(std::move(src), std::move(alphabet), "file:" + path);
}

inline WordStream random_stream(std::uint64_t seed, std::size_t alphabet_size) {
  return WordStream(std::make_unique<RandomSource>(seed, alphabet_size), Alphabet::digits(alphabet_size),
                    "random:" + std::to_string(seed) + ":" + std::to_string(alphabet_size));
}

/// True iff prefix(m) is a prefix of prefix(n).
inline bool prefix_coherent(const WordStream &x, std::size_t m, std::size_t n) {
  Word longer = x.prefix(n);
  Word shorter = x.prefix(m);
  return longer.has_prefix(shorter);
}

} // namespace qw
