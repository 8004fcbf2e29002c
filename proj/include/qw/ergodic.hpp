#pragma once

// Empirical invariant measures: mu_q from periodic approximants q^omega,
// Birkhoff frequencies along a prefix, and the two-sided frequency bounds
// that tie them together on multi-scale quasiperiodic words.

#include <algorithm>
#include <cstddef>
#include <cstdint>
#include <ostream>
#include <string>
#include <vector>

#include "qw/complexity.hpp"
#include "qw/error.hpp"
#include "qw/match.hpp"
#include "qw/stream.hpp"
#include "qw/word.hpp"

namespace qw {

inline double to_double(const Rational &r) {
  return static_cast<double>(r.numerator()) / static_cast<double>(r.denominator());
}

/// mu_q([u]): occurrences of u in q^omega starting in one period, over l(q).
inline Rational mu_q(const Word &u, const Word &q) {
  if (q.empty())
    throw DomainError("mu_q needs a nonempty q");
  if (u.empty())
    return Rational(1);
  Word window;
  window.reserve(q.size() + u.size() - 1);
  for (std::size_t i = 0; i < q.size() + u.size() - 1; ++i)
    window.push_back(q[i % q.size()]);
  return Rational(static_cast<std::int64_t>(count(u, window)), static_cast<std::int64_t>(q.size()));
}

/// (1/n) #(u, x_{0 -> n-1})
inline Rational birkhoff(const Word &u, const WordStream &x, std::size_t n) {
  if (u.empty())
    throw DomainError("birkhoff needs a nonempty factor");
  if (n < u.size())
    throw HorizonError("birkhoff needs n >= l(u)");
  Word text = x.prefix(n);
  return Rational(static_cast<std::int64_t>(count(u, text)), static_cast<std::int64_t>(n));
}

/// Largest minus smallest of (1/n) #(u, x_{j -> j+n-1}) over the given offsets j.
inline Rational birkhoff_spread(const Word &u, const WordStream &x, std::size_t n,
                                const std::vector<std::size_t> &offsets) {
  if (offsets.empty())
    throw DomainError("birkhoff_spread needs at least one offset");
  if (n < u.size())
    throw HorizonError("birkhoff_spread needs n >= l(u)");
  std::size_t furthest = *std::max_element(offsets.begin(), offsets.end());
  Word text = x.prefix(furthest + n);
  std::size_t lo = static_cast<std::size_t>(-1), hi = 0;
  for (std::size_t j : offsets) {
    std::size_t c = count(u, text.span().subspan(j, n));
    lo = std::min(lo, c);
    hi = std::max(hi, c);
  }
  return Rational(static_cast<std::int64_t>(hi - lo), static_cast<std::int64_t>(n));
}

struct SandwichRow {
  Word factor;
  Word quasiperiod;
  Rational mu;        // mu_q([u])
  Rational frequency; // birkhoff(u, x, n)
  Rational lower;     // #(u, q) / (2 l(q))
  Rational slack;     // l(u) l(q) / n
  bool lower_ok = false;
  bool upper_ok = false;

  bool passed() const noexcept { return lower_ok && upper_ok; }
};

/// Per quasiperiod q: #(u,q)/(2 l(q)) <= freq + slack and
/// mu_q([u]) <= 2 freq + l(u)/l(q) + slack, with slack = l(u) l(q) / n.
inline std::vector<SandwichRow> sandwich_report(const Word &u, const WordStream &x,
                                                const std::vector<Word> &quasiperiods, std::size_t n) {
  if (quasiperiods.empty())
    throw DomainError("sandwich_report needs at least one quasiperiod");
  Rational freq = birkhoff(u, x, n);
  std::vector<SandwichRow> rows;
  for (const auto &q : quasiperiods) {
    SandwichRow r;
    r.factor = u;
    r.quasiperiod = q;
    r.mu = mu_q(u, q);
    r.frequency = freq;
    const auto lu = static_cast<std::int64_t>(u.size());
    const auto lq = static_cast<std::int64_t>(q.size());
    r.lower = Rational(static_cast<std::int64_t>(count(u, q)), 2 * lq);
    r.slack = Rational(lu * lq, static_cast<std::int64_t>(n));
    r.lower_ok = r.lower <= freq + r.slack;
    r.upper_ok = r.mu <= 2 * freq + Rational(lu, lq) + r.slack;
    rows.push_back(std::move(r));
  }
  return rows;
}

inline std::string to_string(const Rational &r) {
  return std::to_string(r.numerator()) + "/" + std::to_string(r.denominator());
}

/// CSV with columns u, q, mu_q, birkhoff, lower_bound, check_passed.
inline void write_sandwich_csv(std::ostream &os, const std::vector<SandwichRow> &rows, const Alphabet &alphabet) {
  auto field = [&](const Word &w) {
    std::string s = render(w, alphabet);
    return s.find(',') == std::string::npos ? s : '"' + s + '"';
  };
  os << "u,q,mu_q,birkhoff,lower_bound,check_passed\n";
  for (const auto &r : rows)
    os << field(r.factor) << ',' << field(r.quasiperiod) << ',' << to_string(r.mu) << ','
       << to_string(r.frequency) << ',' << to_string(r.lower) << ',' << (r.passed() ? "true" : "false") << '\n';
}

} // namespace qw
