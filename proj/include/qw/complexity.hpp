#pragma once

// Factor complexity p_n with saturation flags, entropy estimates, complexity
// equivalence at finite scale, and the quadratic bound at quasiperiod lengths.

#include <boost/rational.hpp>

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <cstddef>
#include <cstdint>
#include <ostream>
#include <optional>
#include <string>
#include <vector>

#include "qw/error.hpp"
#include "qw/factor_index.hpp"
#include "qw/stream.hpp"
#include "qw/word.hpp"

namespace qw {

using Rational = boost::rational<std::int64_t>;

struct ComplexityProfile {
  std::size_t horizon = 0;
  /// values[n] = p_n on the prefix of length `horizon` (values[0] = 1).
  std::vector<std::size_t> values;
  /// saturated[n]: p_n unchanged when the horizon is doubled. Unsaturated
  /// values are lower bounds for the subshift.
  std::vector<bool> saturated;

  std::size_t n_max() const noexcept { return values.empty() ? 0 : values.size() - 1; }
  std::size_t p(std::size_t n) const { return values.at(n); }
  bool all_saturated() const noexcept {
    for (std::size_t n = 1; n < saturated.size(); ++n)
      if (!saturated[n])
        return false;
    return true;
  }
};

inline ComplexityProfile profile(const WordStream &x, std::size_t n_max, std::size_t horizon) {
  if (n_max == 0)
    throw DomainError("profile needs n_max >= 1");
  if (horizon < 2 * n_max)
    throw HorizonError("profile needs horizon >= 2 n_max");
  ComplexityProfile out;
  out.horizon = horizon;
  out.values = FactorIndex(x.prefix(horizon)).distinct_counts(n_max);
  out.saturated.assign(n_max + 1, false);
  std::vector<std::size_t> doubled;
  try {
    doubled = FactorIndex(x.prefix(2 * horizon)).distinct_counts(n_max);
  } catch (const ResourceError &) {
    return out; // no evidence of saturation beyond a finite source
  }
  for (std::size_t n = 0; n <= n_max; ++n)
    out.saturated[n] = doubled[n] == out.values[n];
  return out;
}

/// Smallest horizon (start, 2 start, 4 start, ...) at which p_1..p_{n_max}
/// are all saturated. Throws HorizonError past `max_horizon`.
inline std::size_t saturating_horizon(const WordStream &x, std::size_t n_max, std::size_t start,
                                      std::size_t max_horizon) {
  std::size_t h = std::max(start, 2 * n_max);
  auto counts = FactorIndex(x.prefix(h)).distinct_counts(n_max);
  while (2 * h <= max_horizon) {
    auto next = FactorIndex(x.prefix(2 * h)).distinct_counts(n_max);
    if (next == counts)
      return h;
    h *= 2;
    counts = std::move(next);
  }
  throw HorizonError("factor counts up to n = " + std::to_string(n_max) + " did not saturate below horizon " +
                     std::to_string(max_horizon));
}

struct QuadraticBoundRow {
  std::size_t length = 0;
  std::size_t complexity = 0;
  /// p_{l(q)} / l(q)^2
  Rational ratio;
  bool within = true;
};

/// For each quasiperiod q, p_{l(q)} / l(q)^2, which never exceeds 1.
inline std::vector<QuadraticBoundRow> quadratic_bound_report(const WordStream &x, const std::vector<Word> &quasiperiods,
                                                             std::size_t horizon) {
  std::size_t longest = 0;
  for (const auto &q : quasiperiods)
    longest = std::max(longest, q.size());
  if (longest == 0)
    return {};
  if (horizon < longest)
    throw HorizonError("horizon shorter than the longest quasiperiod");
  auto counts = FactorIndex(x.prefix(horizon)).distinct_counts(longest);
  std::vector<QuadraticBoundRow> rows;
  for (const auto &q : quasiperiods) {
    QuadraticBoundRow r;
    r.length = q.size();
    r.complexity = counts[q.size()];
    auto sq = static_cast<std::int64_t>(q.size() * q.size());
    r.ratio = Rational(static_cast<std::int64_t>(r.complexity), sq);
    r.within = r.complexity <= q.size() * q.size();
    rows.push_back(r);
  }
  return rows;
}

enum class LogBase { natural, bits };

struct EntropyPoint {
  std::size_t n = 0;
  double value = 0; // log(p_n) / n
};

inline std::vector<EntropyPoint> entropy_estimate(const ComplexityProfile &prof, LogBase base = LogBase::natural) {
  std::vector<EntropyPoint> out;
  for (std::size_t n = 1; n <= prof.n_max(); ++n) {
    double l = base == LogBase::natural ? std::log(static_cast<double>(prof.values[n]))
                                        : std::log2(static_cast<double>(prof.values[n]));
    out.push_back({n, l / static_cast<double>(n)});
  }
  return out;
}

struct EquivalenceResult {
  bool equivalent = true;
  /// First n where an inequality fails, when one does.
  std::optional<std::size_t> first_violation;
};

/// Finite-scale check of p_n(x) <= K p_{Kn}(y) and p_n(y) <= K p_{Kn}(x) for 1 <= n <= n_max.
inline EquivalenceResult complexity_equivalent(const WordStream &x, const WordStream &y, std::size_t K,
                                               std::size_t n_max, std::size_t horizon) {
  if (K < 1)
    throw DomainError("K must be at least 1");
  if (horizon < 2 * K * n_max)
    throw HorizonError("complexity equivalence needs horizon >= 2 K n_max");
  auto px = FactorIndex(x.prefix(horizon)).distinct_counts(K * n_max);
  auto py = FactorIndex(y.prefix(horizon)).distinct_counts(K * n_max);
  EquivalenceResult r;
  for (std::size_t n = 1; n <= n_max; ++n) {
    if (px[n] > K * py[K * n] || py[n] > K * px[K * n]) {
      r.equivalent = false;
      r.first_violation = n;
      break;
    }
  }
  return r;
}

/// CSV with columns n, p_n, saturated, log p_n / n.
inline void write_profile_csv(std::ostream &os, const ComplexityProfile &prof, LogBase base = LogBase::natural) {
  auto entropy = entropy_estimate(prof, base);
  os << "n,p_n,saturated," << (base == LogBase::natural ? "log_p_n_over_n" : "log2_p_n_over_n") << '\n';
  char buf[64];
  for (const auto &e : entropy) {
    std::snprintf(buf, sizeof buf, "%.9g", e.value);
    os << e.n << ',' << prof.values[e.n] << ',' << (prof.saturated[e.n] ? "true" : "false") << ',' << buf << '\n';
  }
}

} // namespace qw
