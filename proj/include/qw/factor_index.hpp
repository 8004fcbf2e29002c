#pragma once

// Suffix array + LCP index over a finite word, used to enumerate factor
// languages L_n exactly (no hashing) for every n at once.

#include <algorithm>
#include <cstddef>
#include <numeric>
#include <set>
#include <vector>

#include "qw/error.hpp"
#include "qw/stream.hpp"
#include "qw/word.hpp"

namespace qw {

/// Partition of the start positions of a text by their length-n factor.
struct FactorClasses {
  static constexpr std::size_t none = static_cast<std::size_t>(-1);

  std::size_t order = 0;
  /// class_of[p] is the class of text[p..p+n-1], or `none` when it does not fit.
  std::vector<std::size_t> class_of;
  /// One start position per class; classes are numbered in lexicographic order.
  std::vector<std::size_t> representative;

  std::size_t size() const noexcept { return representative.size(); }
};

class FactorIndex {
public:
  explicit FactorIndex(Word text) : text_(std::move(text)) {
    build_suffix_array();
    build_lcp();
  }

  const Word &text() const noexcept { return text_; }
  std::size_t size() const noexcept { return text_.size(); }
  const std::vector<std::size_t> &suffix_array() const noexcept { return sa_; }
  /// lcp[i] = longest common prefix of suffixes sa[i-1] and sa[i]; lcp[0] = 0.
  const std::vector<std::size_t> &lcp() const noexcept { return lcp_; }

  /// counts[n] = number of distinct factors of length n, for n in [0, n_max].
  std::vector<std::size_t> distinct_counts(std::size_t n_max) const {
    std::vector<long long> diff(n_max + 2, 0);
    const std::size_t n = size();
    for (std::size_t i = 0; i < n; ++i) {
      std::size_t len = n - sa_[i];
      std::size_t lo = lcp_[i] + 1;
      std::size_t hi = std::min(len, n_max);
      if (lo <= hi) {
        ++diff[lo];
        --diff[hi + 1];
      }
    }
    std::vector<std::size_t> counts(n_max + 1, 0);
    counts[0] = 1;
    long long run = 0;
    for (std::size_t k = 1; k <= n_max; ++k) {
      run += diff[k];
      counts[k] = static_cast<std::size_t>(run);
    }
    return counts;
  }

  std::size_t distinct(std::size_t n) const { return distinct_counts(n)[n]; }

  FactorClasses classes(std::size_t n) const {
    if (n == 0)
      throw DomainError("factor length must be positive");
    FactorClasses out;
    out.order = n;
    out.class_of.assign(size(), FactorClasses::none);
    std::size_t current = FactorClasses::none;
    for (std::size_t i = 0; i < size(); ++i) {
      std::size_t p = sa_[i];
      if (size() - p < n)
        continue;
      if (current == FactorClasses::none || lcp_[i] < n) {
        current = out.representative.size();
        out.representative.push_back(p);
      }
      out.class_of[p] = current;
    }
    return out;
  }

  /// Distinct factors of length n in lexicographic order.
  std::vector<Word> factors(std::size_t n) const {
    auto cls = classes(n);
    std::vector<Word> out;
    out.reserve(cls.size());
    for (std::size_t p : cls.representative)
      out.push_back(text_.slice(p, n));
    return out;
  }

private:
  void build_suffix_array() {
    const std::size_t n = size();
    sa_.resize(n);
    if (n == 0)
      return;
    // Compress letters to dense ranks.
    std::vector<Letter> letters(text_.begin(), text_.end());
    std::sort(letters.begin(), letters.end());
    letters.erase(std::unique(letters.begin(), letters.end()), letters.end());
    std::vector<std::size_t> rank(n), tmp(n);
    for (std::size_t i = 0; i < n; ++i)
      rank[i] = static_cast<std::size_t>(std::lower_bound(letters.begin(), letters.end(), text_[i]) -
                                         letters.begin());
    std::iota(sa_.begin(), sa_.end(), std::size_t{0});
    std::stable_sort(sa_.begin(), sa_.end(), [&](std::size_t a, std::size_t b) { return rank[a] < rank[b]; });
    std::size_t classes = letters.size();
    std::vector<std::size_t> cnt(std::max(n, classes) + 1);

    for (std::size_t k = 1; classes < n; k <<= 1) {
      // Order by second key: suffixes without a second half first.
      std::size_t p = 0;
      for (std::size_t i = n - std::min(k, n); i < n; ++i)
        tmp[p++] = i;
      for (std::size_t i = 0; i < n; ++i)
        if (sa_[i] >= k)
          tmp[p++] = sa_[i] - k;
      // Stable counting sort by first key.
      std::fill(cnt.begin(), cnt.end(), 0);
      for (std::size_t i = 0; i < n; ++i)
        ++cnt[rank[i]];
      for (std::size_t i = 1; i < cnt.size(); ++i)
        cnt[i] += cnt[i - 1];
      for (std::size_t i = n; i-- > 0;)
        sa_[--cnt[rank[tmp[i]]]] = tmp[i];
      // Re-rank.
      auto second = [&](std::size_t i) { return i + k < n ? rank[i + k] + 1 : 0; };
      tmp[sa_[0]] = 0;
      classes = 1;
      for (std::size_t i = 1; i < n; ++i) {
        std::size_t a = sa_[i - 1], b = sa_[i];
        bool same = rank[a] == rank[b] && second(a) == second(b);
        tmp[b] = same ? classes - 1 : classes++;
      }
      rank.swap(tmp);
    }
  }

  // Kasai et al.
  void build_lcp() {
    const std::size_t n = size();
    lcp_.assign(n, 0);
    std::vector<std::size_t> inv(n);
    for (std::size_t i = 0; i < n; ++i)
      inv[sa_[i]] = i;
    std::size_t h = 0;
    for (std::size_t p = 0; p < n; ++p) {
      if (inv[p] == 0) {
        h = 0;
        continue;
      }
      std::size_t q = sa_[inv[p] - 1];
      while (p + h < n && q + h < n && text_[p + h] == text_[q + h])
        ++h;
      lcp_[inv[p]] = h;
      if (h > 0)
        --h;
    }
  }

  Word text_;
  std::vector<std::size_t> sa_;
  std::vector<std::size_t> lcp_;
};

/// L_n of the prefix of length `horizon`.
inline std::set<Word> language(const WordStream &x, std::size_t n, std::size_t horizon) {
  if (n == 0)
    throw DomainError("factor length must be positive");
  if (horizon < n)
    throw HorizonError("horizon " + std::to_string(horizon) + " is shorter than the factor length " +
                       std::to_string(n));
  auto factors = FactorIndex(x.prefix(horizon)).factors(n);
  return {factors.begin(), factors.end()};
}

} // namespace qw
