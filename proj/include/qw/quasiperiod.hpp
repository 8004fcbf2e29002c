#pragma once

// Cover detection for finite words and for infinite words at a finite
// horizon, quasiperiod enumeration, and multi-scale witnessing.
//
// Horizon semantics: q covers the infinite word x up to N iff q occurs at 0,
// consecutive occurrences are at most l(q) apart, and some occurrence o has
// o + l(q) >= N. Occurrences are searched in x_{0 -> N+l(q)-2}, i.e. every
// start position below N, so occurrences straddling the boundary count.

#include <algorithm>
#include <cstddef>
#include <iterator>
#include <optional>
#include <set>
#include <span>
#include <string>
#include <vector>

#include "qw/error.hpp"
#include "qw/match.hpp"
#include "qw/stream.hpp"
#include "qw/word.hpp"

namespace qw {

enum class CoverVerdict { covered, gap, missing_initial };

inline const char *to_string(CoverVerdict v) noexcept {
  switch (v) {
  case CoverVerdict::covered:
    return "covered";
  case CoverVerdict::gap:
    return "gap";
  case CoverVerdict::missing_initial:
    return "missing-initial-occurrence";
  }
  return "?";
}

struct CoverageReport {
  static constexpr std::size_t none = static_cast<std::size_t>(-1);

  Word quasiperiod;
  std::size_t horizon = 0;
  std::vector<std::size_t> positions;
  CoverVerdict verdict = CoverVerdict::missing_initial;
  /// For a gap: the occurrence before the gap and the one after it (`none`
  /// when the gap runs into the horizon boundary).
  std::size_t gap_from = none;
  std::size_t gap_to = none;
  /// First position of [0, horizon) not covered by an occurrence.
  std::size_t first_uncovered = none;

  bool covered() const noexcept { return verdict == CoverVerdict::covered; }
  /// Largest distance between consecutive occurrences (0 with fewer than two).
  std::size_t max_jump() const noexcept {
    std::size_t m = 0;
    for (std::size_t i = 1; i < positions.size(); ++i)
      m = std::max(m, positions[i] - positions[i - 1]);
    return m;
  }
};

namespace detail {

// Classifies an occurrence list against the horizon rule.
inline void classify(CoverageReport &r) {
  const std::size_t len = r.quasiperiod.size();
  const auto &pos = r.positions;
  if (pos.empty() || pos.front() != 0) {
    r.verdict = CoverVerdict::missing_initial;
    r.first_uncovered = 0;
    return;
  }
  for (std::size_t i = 1; i < pos.size(); ++i) {
    if (pos[i] - pos[i - 1] > len) {
      r.verdict = CoverVerdict::gap;
      r.gap_from = pos[i - 1];
      r.gap_to = pos[i];
      r.first_uncovered = pos[i - 1] + len;
      return;
    }
  }
  if (pos.back() + len < r.horizon) {
    r.verdict = CoverVerdict::gap;
    r.gap_from = pos.back();
    r.first_uncovered = pos.back() + len;
    return;
  }
  r.verdict = CoverVerdict::covered;
}

} // namespace detail

/// Checks q against `text`, which must hold at least horizon + l(q) - 1
/// letters of the word. Occurrences starting at or beyond the horizon are ignored.
inline CoverageReport check_cover(const Word &q, std::span<const Letter> text, std::size_t horizon) {
  if (q.empty() || q.size() > horizon)
    throw DomainError("quasiperiod length must lie in [1, horizon]");
  if (text.size() < horizon + q.size() - 1)
    throw HorizonError("text is shorter than horizon + l(q) - 1");
  CoverageReport r;
  r.quasiperiod = q;
  r.horizon = horizon;
  r.positions = occurrence_positions(q, text.first(horizon + q.size() - 1));
  detail::classify(r);
  return r;
}

inline CoverageReport check_cover(const Word &q, const WordStream &x, std::size_t horizon) {
  if (q.empty() || q.size() > horizon)
    throw DomainError("quasiperiod length must lie in [1, horizon]");
  Word text = x.prefix(horizon + q.size() - 1);
  return check_cover(q, text.span(), horizon);
}

/// Classical cover of a finite word: q occurs at 0, jumps are at most l(q),
/// and the last occurrence ends flush with v.
inline bool is_cover(const Word &q, const Word &v) {
  if (q.empty() || q.size() > v.size() || !v.has_prefix(q))
    return false;
  Matcher m(q);
  std::size_t last = 0;
  for (std::size_t i = 0; i < v.size(); ++i) {
    if (m.feed(v[i])) {
      std::size_t start = i + 1 - q.size();
      if (start - last > q.size())
        return false;
      last = start;
    }
  }
  return last + q.size() == v.size();
}

/// q covers v as a prefix of some longer word: occurrences start at 0 with
/// jumps at most l(q), and the uncovered tail of v (if any) is a prefix of
/// q placed at most l(q) after the last full occurrence.
inline bool covers_as_prefix(const Word &q, const Word &v) {
  if (q.empty() || !v.has_prefix(q))
    return false;
  auto pos = occurrence_positions(q, v.span());
  for (std::size_t i = 1; i < pos.size(); ++i)
    if (pos[i] - pos[i - 1] > q.size())
      return false;
  const std::size_t last = pos.back();
  if (last + q.size() == v.size())
    return true;
  for (std::size_t j = last + 1; j <= last + q.size(); ++j) {
    if (j + q.size() <= v.size())
      continue; // would be a full occurrence, and it is not one
    if (j >= v.size())
      return true; // nothing left to cover
    std::size_t tail = v.size() - j;
    if (std::equal(v.begin() + static_cast<std::ptrdiff_t>(j), v.end(), q.begin()) && tail < q.size())
      return true;
  }
  return false;
}

/// Every cover of v, shortest first; always ends with v itself. Candidates
/// are restricted to borders of v.
inline std::vector<Word> all_covers(const Word &v) {
  if (v.empty())
    throw DomainError("all_covers needs a nonempty word");
  auto border = border_array(v.span());
  std::vector<Word> out;
  out.push_back(v);
  for (std::size_t b = border.back(); b > 0; b = border[b - 1]) {
    Word q = v.prefix(b);
    if (is_cover(q, v))
      out.push_back(std::move(q));
  }
  std::reverse(out.begin(), out.end());
  return out;
}

/// cover[i] is the length of the shortest cover of v[0..i-1] (cover[0] = 0).
/// Linear time: a prefix inherits the shortest cover of its longest border
/// when the new occurrence of that cover, ending at i, touches the region
/// already covered by it.
inline std::vector<std::size_t> shortest_cover_array(std::span<const Letter> v) {
  const std::size_t n = v.size();
  auto border = border_array(v);
  std::vector<std::size_t> cover(n + 1, 0), reach(n + 1, 0);
  for (std::size_t i = 1; i <= n; ++i) {
    cover[i] = i;
    reach[i] = i;
    std::size_t b = border[i - 1];
    if (b > 0) {
      std::size_t c = cover[b];
      if (i - reach[c] <= c) {
        cover[i] = c;
        reach[c] = i;
      }
    }
  }
  return cover;
}

inline Word shortest_cover_linear(const Word &v) {
  if (v.empty())
    throw DomainError("shortest_cover_linear needs a nonempty word");
  return v.prefix(shortest_cover_array(v.span()).back());
}

/// covered[L] (1 <= L <= maxlen) tells whether the prefix of length L covers
/// text up to `horizon`. Single sweep over decreasing L using the Z-array:
/// the prefix of length L occurs at j iff z[j] >= L, so occurrence sets only
/// grow as L decreases and the widest jump is maintained incrementally.
inline std::vector<bool> quasiperiod_mask(std::span<const Letter> text, std::size_t horizon, std::size_t maxlen) {
  maxlen = std::min(maxlen, horizon);
  if (text.size() < horizon + maxlen - 1)
    throw HorizonError("text is shorter than horizon + maxlen - 1");
  std::vector<bool> covered(maxlen + 1, false);
  if (maxlen == 0)
    return covered;
  auto z = z_array(text.first(horizon + maxlen - 1));
  // bucket[L] = start positions j in [1, horizon) whose longest prefix match is exactly L (capped at maxlen)
  std::vector<std::vector<std::size_t>> bucket(maxlen + 1);
  for (std::size_t j = 1; j < horizon; ++j) {
    std::size_t m = std::min(z[j], maxlen);
    if (m > 0)
      bucket[m].push_back(j);
  }
  std::set<std::size_t> occ{0};
  std::multiset<std::size_t> jumps;
  for (std::size_t len = maxlen; len >= 1; --len) {
    for (std::size_t j : bucket[len]) {
      auto it = occ.insert(j).first;
      auto prev = std::prev(it);
      auto next = std::next(it);
      if (next != occ.end()) {
        jumps.erase(jumps.find(*next - *prev));
        jumps.insert(*next - j);
      }
      jumps.insert(j - *prev);
    }
    std::size_t widest = jumps.empty() ? 0 : *jumps.rbegin();
    covered[len] = widest <= len && *occ.rbegin() + len >= horizon;
  }
  return covered;
}

/// Prefixes of x of length <= maxlen that cover x up to N, shortest first.
inline std::vector<Word> quasiperiods_up_to(const WordStream &x, std::size_t horizon, std::size_t maxlen) {
  if (horizon == 0)
    throw DomainError("horizon must be positive");
  maxlen = std::min(maxlen, horizon);
  if (maxlen == 0)
    return {};
  Word text = x.prefix(horizon + maxlen - 1);
  auto mask = quasiperiod_mask(text.span(), horizon, maxlen);
  std::vector<Word> out;
  for (std::size_t len = 1; len <= maxlen; ++len)
    if (mask[len])
      out.push_back(text.prefix(len));
  return out;
}

struct MultiscaleWitness {
  bool witnessed = false;
  std::size_t horizon = 0;
  std::size_t required = 0;
  /// Quasiperiods of distinct lengths, shortest first (at most `required`).
  std::vector<Word> witnesses;
};

/// Finite evidence that x has at least k quasiperiods (of distinct lengths)
/// at horizon N. Candidate lengths are searched up to maxlen (default N).
inline MultiscaleWitness multiscale_witness(const WordStream &x, std::size_t horizon, std::size_t k,
                                            std::optional<std::size_t> maxlen = std::nullopt) {
  MultiscaleWitness w;
  w.horizon = horizon;
  w.required = k;
  auto qps = quasiperiods_up_to(x, horizon, maxlen.value_or(horizon));
  for (auto &q : qps) {
    if (w.witnesses.size() == k)
      break;
    w.witnesses.push_back(std::move(q));
  }
  w.witnessed = w.witnesses.size() >= k;
  return w;
}

struct RecurrenceReport {
  Word factor;
  std::size_t horizon = 0;
  std::size_t occurrences = 0;
  /// Largest distance between consecutive occurrences in the horizon.
  std::size_t max_gap = 0;
  /// 2 l(q) when a quasiperiod q containing the factor was supplied.
  std::optional<std::size_t> bound;
  bool within_bound = true;
};

/// Largest gap between consecutive occurrences of u in x_{0 -> N-1}. When a
/// quasiperiod q of x that contains u is given, the gap is checked against
/// 2 l(q): every factor of length 2 l(q) contains q, hence u.
inline RecurrenceReport uniform_recurrence_check(const WordStream &x, const Word &u, std::size_t horizon,
                                                 const std::optional<Word> &quasiperiod = std::nullopt) {
  Word text = x.prefix(horizon);
  auto pos = occurrence_positions(u, text.span());
  if (pos.empty())
    throw DomainError("factor does not occur within the horizon");
  RecurrenceReport r;
  r.factor = u;
  r.horizon = horizon;
  r.occurrences = pos.size();
  for (std::size_t i = 1; i < pos.size(); ++i)
    r.max_gap = std::max(r.max_gap, pos[i] - pos[i - 1]);
  if (quasiperiod) {
    if (count(u, *quasiperiod) == 0)
      throw DomainError("the supplied quasiperiod does not contain the factor");
    r.bound = 2 * quasiperiod->size();
    r.within_bound = r.max_gap <= *r.bound;
  }
  return r;
}

} // namespace qw
