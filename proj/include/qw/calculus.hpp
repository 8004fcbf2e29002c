#pragma once

// Derivation and integration of infinite words, and the tower construction
// of a multi-scale quasiperiodic word with prescribed high complexity.

#include <algorithm>
#include <cstddef>
#include <functional>
#include <map>
#include <memory>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "qw/error.hpp"
#include "qw/match.hpp"
#include "qw/quasiperiod.hpp"
#include "qw/stream.hpp"
#include "qw/word.hpp"

namespace qw {

/// sigma_w: letter i -> the first l(w) - i letters of w, for i < l(w).
class Substitution {
public:
  explicit Substitution(Word base) : base_(std::move(base)) {
    if (base_.empty())
      throw DomainError("integration base word must be nonempty");
  }

  const Word &base() const noexcept { return base_; }
  /// Letters 0 .. domain_size()-1 have nonempty images.
  std::size_t domain_size() const noexcept { return base_.size(); }

  Word image(Letter i) const {
    if (i >= base_.size())
      throw DomainError("letter " + std::to_string(i) + " is outside the domain of sigma_w (l(w) = " +
                        std::to_string(base_.size()) + ")");
    return base_.prefix(base_.size() - i);
  }

  std::size_t image_length(Letter i) const {
    if (i >= base_.size())
      throw DomainError("letter " + std::to_string(i) + " is outside the domain of sigma_w");
    return base_.size() - i;
  }

  Word apply(const Word &x) const {
    Word out;
    for (Letter l : x)
      out += image(l);
    return out;
  }

private:
  Word base_;
};

/// Finite integration sigma_w(x).
inline Word integrate(const Word &w, const Word &x) { return Substitution(w).apply(x); }

/// Streams sigma_w(x_0) sigma_w(x_1) ...
class IntegrationSource final : public Source {
public:
  IntegrationSource(Word w, WordStream inner) : sigma_(std::move(w)), inner_(std::move(inner)) {}

  void extend(std::vector<Letter> &cache, std::size_t target) override {
    const Word &w = sigma_.base();
    while (cache.size() < target) {
      Letter l = inner_.at(read_++);
      std::size_t len = sigma_.image_length(l);
      cache.insert(cache.end(), w.begin(), w.begin() + static_cast<std::ptrdiff_t>(len));
    }
  }

private:
  Substitution sigma_;
  WordStream inner_;
  std::size_t read_ = 0;
};

/// The stream integral of x along w. `w_alphabet` is the alphabet of w and of
/// the result. Every letter of x's alphabet must be < l(w).
inline WordStream integrate(const Word &w, const Alphabet &w_alphabet, const WordStream &x) {
  if (w.empty())
    throw DomainError("integration base word must be nonempty");
  if (x.alphabet().size() > w.size())
    throw DomainError("alphabet of x has " + std::to_string(x.alphabet().size()) +
                      " letters; integration along a word of length " + std::to_string(w.size()) +
                      " accepts at most that many");
  if (!fits(w, w_alphabet))
    throw DomainError("integration base word does not fit its alphabet");
  std::string name = "integrate(" + render(w, w_alphabet) + ", " + x.name() + ")";
  return WordStream(std::make_unique<IntegrationSource>(w, x), w_alphabet, std::move(name));
}

/// True iff w is a prefix of sigma_w(n) w for every letter n of the alphabet.
/// Under this condition every integral along w has w as a quasiperiod.
inline bool prefix_condition(const Word &w, std::size_t alphabet_size) {
  Substitution sigma(w);
  if (alphabet_size > w.size())
    throw DomainError("alphabet has letters outside the domain of sigma_w");
  for (Letter n = 0; n < alphabet_size; ++n)
    if (!(sigma.image(n) + w).has_prefix(w))
      return false;
  return true;
}

/// Result of a derivation at a finite horizon.
struct Derivative {
  /// Letters over {0, ..., l(q)-1}: overlap between consecutive occurrences.
  Word word;
  std::size_t horizon = 0;
  /// Input letters fully accounted for: end of the last occurrence used.
  std::size_t consumed = 0;
  std::vector<std::size_t> occurrences;
};

namespace detail {

inline Derivative derivative_from(const Word &q, std::vector<std::size_t> positions, std::size_t horizon) {
  Derivative d;
  d.horizon = horizon;
  while (!positions.empty() && positions.back() + q.size() > horizon)
    positions.pop_back();
  for (std::size_t k = 0; k + 1 < positions.size(); ++k)
    d.word.push_back(static_cast<Letter>(q.size() - (positions[k + 1] - positions[k])));
  d.consumed = positions.empty() ? 0 : positions.back() + q.size();
  d.occurrences = std::move(positions);
  return d;
}

} // namespace detail

/// Derivative of x along a quasiperiod q, from the occurrences lying fully in
/// x_{0 -> horizon-1}. The trailing partial window is dropped.
inline Derivative derive(const WordStream &x, const Word &q, std::size_t horizon) {
  if (q.empty())
    throw DomainError("cannot derive along the empty word");
  if (horizon < 2 * q.size())
    throw HorizonError("derivation needs a horizon of at least 2 l(q)");
  auto report = check_cover(q, x, horizon);
  if (!report.covered())
    throw CoverageError("not a quasiperiod within the horizon", report.first_uncovered);
  return detail::derivative_from(q, std::move(report.positions), horizon);
}

/// Derivative of a finite word that q covers as a prefix (see covers_as_prefix).
inline Derivative derive(const Word &v, const Word &q) {
  if (q.empty())
    throw DomainError("cannot derive along the empty word");
  if (!covers_as_prefix(q, v)) {
    CoverageReport r;
    r.quasiperiod = q;
    r.horizon = v.size();
    r.positions = occurrence_positions(q, v.span());
    detail::classify(r);
    throw CoverageError("not a quasiperiod of the finite word",
                        r.first_uncovered == CoverageReport::none ? v.size() : r.first_uncovered);
  }
  return detail::derivative_from(q, occurrence_positions(q, v.span()), v.size());
}

// ---------------------------------------------------------------------------
// High-complexity tower

/// All words of length 2m with m zeros and m ones, in lexicographic order.
inline std::vector<Word> balanced_words(std::size_t m) {
  std::vector<Letter> letters(2 * m, 1);
  std::fill(letters.begin(), letters.begin() + static_cast<std::ptrdiff_t>(m), 0);
  std::vector<Word> out;
  do
    out.emplace_back(letters);
  while (std::next_permutation(letters.begin(), letters.end()));
  return out;
}

/// 0 . b_1 0 . b_2 0 ... over the balanced words b_i of length 2m: begins and
/// ends with 0 and contains every balanced word of length 2m as a factor.
inline Word balanced_witness(std::size_t m) {
  if (m == 0)
    throw DomainError("balanced witness needs m >= 1");
  Word w{0};
  for (const auto &b : balanced_words(m)) {
    w += b;
    w.push_back(0);
  }
  return w;
}

/// phi given as an explicit table, with an optional value for lengths not listed.
class PhiTable {
public:
  PhiTable() = default;
  PhiTable(std::map<std::size_t, std::size_t> table, std::optional<std::size_t> fallback = std::nullopt)
      : table_(std::move(table)), fallback_(fallback) {}

  std::size_t operator()(std::size_t length) const {
    if (auto it = table_.find(length); it != table_.end())
      return it->second;
    if (fallback_)
      return *fallback_;
    throw DomainError("phi is not defined at length " + std::to_string(length));
  }

  const std::map<std::size_t, std::size_t> &table() const noexcept { return table_; }
  std::optional<std::size_t> fallback() const noexcept { return fallback_; }

private:
  std::map<std::size_t, std::size_t> table_;
  std::optional<std::size_t> fallback_;
};

using Phi = std::function<std::size_t(std::size_t)>;

namespace detail {

inline Word next_tower_level(const Word &u, const Phi &phi, std::size_t budget) {
  std::size_t m = phi(u.size());
  if (m == 0)
    throw DomainError("phi must be positive");
  // l(u_{n+1}) = #0(w) l(u) + #1(w) (l(u) - 1) with #1(w) = m C(2m, m), #0(w) = #1(w) + C(2m, m) + 1.
  double binom = 1;
  for (std::size_t i = 1; i <= m; ++i)
    binom = binom * static_cast<double>(m + i) / static_cast<double>(i);
  double ones = static_cast<double>(m) * binom;
  double size = (ones + binom + 1) * static_cast<double>(u.size()) + ones * static_cast<double>(u.size() - 1);
  if (size > static_cast<double>(budget))
    throw ResourceError("tower level would have about " + std::to_string(static_cast<long long>(size)) +
                        " letters, over the budget of " + std::to_string(budget));
  return integrate(u, balanced_witness(m));
}

} // namespace detail

/// Streams the limit of the tower u_0 = 010, u_{n+1} = sigma_{u_n}(w_{phi(l(u_n))}).
class TowerSource final : public Source {
public:
  TowerSource(Phi phi, std::size_t budget) : phi_(std::move(phi)), budget_(budget), top_{0, 1, 0} {}

  void extend(std::vector<Letter> &cache, std::size_t target) override {
    while (top_.size() < target)
      top_ = detail::next_tower_level(top_, phi_, budget_);
    cache.assign(top_.begin(), top_.end());
  }

private:
  Phi phi_;
  std::size_t budget_;
  Word top_;
};

struct Tower {
  /// u_0, ..., u_depth; each a prefix of the next.
  std::vector<Word> levels;
  /// phi(l(u_n)) used to build u_{n+1}.
  std::vector<std::size_t> phi_values;
  /// The infinite word with every u_n as a prefix; levels past `depth` are
  /// generated on demand with the same phi.
  WordStream stream;
};

inline Tower high_complexity_word(Phi phi, std::size_t depth,
                                  std::size_t budget = WordStream::default_budget) {
  if (depth < 1)
    throw DomainError("tower depth must be at least 1");
  std::vector<Word> levels{Word{0, 1, 0}};
  std::vector<std::size_t> phis;
  for (std::size_t n = 0; n < depth; ++n) {
    phis.push_back(phi(levels.back().size()));
    levels.push_back(detail::next_tower_level(levels.back(), phi, budget));
  }
  WordStream stream(std::make_unique<TowerSource>(phi, budget), Alphabet::digits(2), "tower");
  stream.set_budget(budget);
  return Tower{std::move(levels), std::move(phis), std::move(stream)};
}

} // namespace qw
