#pragma once

// Exact occurrence search with a failure-function (Knuth-Morris-Pratt) matcher.

#include <algorithm>
#include <cstddef>
#include <span>
#include <vector>

#include "qw/error.hpp"
#include "qw/word.hpp"

namespace qw {

/// border[i] is the length of the longest proper border of pattern[0..i].
inline std::vector<std::size_t> border_array(std::span<const Letter> pattern) {
  std::vector<std::size_t> border(pattern.size(), 0);
  std::size_t k = 0;
  for (std::size_t i = 1; i < pattern.size(); ++i) {
    while (k > 0 && pattern[i] != pattern[k])
      k = border[k - 1];
    if (pattern[i] == pattern[k])
      ++k;
    border[i] = k;
  }
  return border;
}

/// z[i] is the length of the longest common prefix of text and text[i..];
/// z[0] = text.size().
inline std::vector<std::size_t> z_array(std::span<const Letter> text) {
  const std::size_t n = text.size();
  std::vector<std::size_t> z(n, 0);
  if (n == 0)
    return z;
  z[0] = n;
  for (std::size_t i = 1, l = 0, r = 0; i < n; ++i) {
    if (i < r)
      z[i] = std::min(r - i, z[i - l]);
    while (i + z[i] < n && text[z[i]] == text[i + z[i]])
      ++z[i];
    if (i + z[i] > r) {
      l = i;
      r = i + z[i];
    }
  }
  return z;
}

/// Streaming matcher: feed text letters one at a time, get told when the
/// pattern ends at the current letter.
class Matcher {
public:
  explicit Matcher(Word pattern) : pattern_(std::move(pattern)), border_(border_array(pattern_.span())) {
    if (pattern_.empty())
      throw DomainError("cannot search for the empty word");
  }

  const Word &pattern() const noexcept { return pattern_; }

  /// Advances by one text letter; true when an occurrence ends here.
  bool feed(Letter c) noexcept {
    if (state_ == pattern_.size())
      state_ = border_[state_ - 1];
    while (state_ > 0 && pattern_[state_] != c)
      state_ = border_[state_ - 1];
    if (pattern_[state_] == c)
      ++state_;
    return state_ == pattern_.size();
  }

  void reset() noexcept { state_ = 0; }

private:
  Word pattern_;
  std::vector<std::size_t> border_;
  std::size_t state_ = 0;
};

/// Start positions of a factor inside a scanned prefix.
struct OccurrenceList {
  Word factor;
  std::vector<std::size_t> positions;
  std::size_t horizon = 0;

  std::size_t count() const noexcept { return positions.size(); }
  bool empty() const noexcept { return positions.empty(); }
};

inline std::vector<std::size_t> occurrence_positions(const Word &u, std::span<const Letter> v) {
  Matcher m(u);
  std::vector<std::size_t> out;
  for (std::size_t i = 0; i < v.size(); ++i)
    if (m.feed(v[i]))
      out.push_back(i + 1 - u.size());
  return out;
}

/// All start positions of u in v, strictly increasing and exhaustive.
inline OccurrenceList occurrences(const Word &u, const Word &v) {
  return OccurrenceList{u, occurrence_positions(u, v.span()), v.size()};
}

/// #(u, v): number of (possibly overlapping) occurrences of u in v.
inline std::size_t count(const Word &u, std::span<const Letter> v) {
  Matcher m(u);
  std::size_t n = 0;
  for (Letter c : v)
    n += m.feed(c) ? 1 : 0;
  return n;
}

inline std::size_t count(const Word &u, const Word &v) { return count(u, v.span()); }

} // namespace qw
