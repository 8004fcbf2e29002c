#pragma once

// Characteristic Sturmian words from continued-fraction partial quotients,
// burst detection on their Rauzy graphs, and verification that the
// left-special prefixes at bursts are quasiperiods.

#include <algorithm>
#include <cstddef>
#include <memory>
#include <optional>
#include <set>
#include <string>
#include <utility>
#include <vector>

#include "qw/complexity.hpp"
#include "qw/error.hpp"
#include "qw/factor_index.hpp"
#include "qw/quasiperiod.hpp"
#include "qw/rauzy.hpp"
#include "qw/stream.hpp"
#include "qw/word.hpp"

namespace qw {

/// Partial quotients d_1, d_2, ... of the slope; the list repeats forever.
struct SturmianSpec {
  std::vector<std::size_t> partial_quotients;

  std::size_t quotient(std::size_t k) const { return partial_quotients[(k - 1) % partial_quotients.size()]; }

  void validate() const {
    if (partial_quotients.empty())
      throw DomainError("Sturmian spec needs at least one partial quotient");
    for (auto d : partial_quotients)
      if (d < 1)
        throw DomainError("partial quotients must be positive");
  }

  std::string to_string() const {
    std::string s;
    for (std::size_t i = 0; i < partial_quotients.size(); ++i)
      s += (i ? "," : "") + std::to_string(partial_quotients[i]);
    return s;
  }
};

/// Standard words s_{-1} = 1, s_0 = 0, s_k = s_{k-1}^{d_k} s_{k-2}; each s_k
/// (k >= 1) is a prefix of the next, and their limit is the characteristic word.
class SturmianSource final : public Source {
public:
  explicit SturmianSource(SturmianSpec spec) : spec_(std::move(spec)), prev_{1}, cur_{0} { spec_.validate(); }

  void extend(std::vector<Letter> &cache, std::size_t target) override {
    while (cur_.size() < target || k_ == 0) {
      ++k_;
      Word next = repeat(cur_, spec_.quotient(k_)) + prev_;
      prev_ = std::move(cur_);
      cur_ = std::move(next);
    }
    cache.assign(cur_.begin(), cur_.end());
  }

private:
  SturmianSpec spec_;
  Word prev_, cur_;
  std::size_t k_ = 0;
};

inline WordStream characteristic_word(const SturmianSpec &spec) {
  spec.validate();
  return WordStream(std::make_unique<SturmianSource>(spec), Alphabet::digits(2), "sturmian:" + spec.to_string());
}

struct Burst {
  std::size_t order = 0;
  Word center; // the left-special factor l_n
  std::size_t short_loop = 0;
  std::size_t long_loop = 0;
};

/// Orders n <= n_max whose Rauzy graph is eight-shaped around its unique
/// left-special vertex. All graphs come from one horizon at which p_1 ..
/// p_{n_max+1} are saturated; that horizon is written to `horizon_used`.
inline std::vector<Burst> bursts(const WordStream &x, std::size_t n_max, std::size_t max_horizon = std::size_t{1} << 24,
                                 std::size_t *horizon_used = nullptr) {
  std::size_t h = saturating_horizon(x, n_max + 1, 64, max_horizon);
  if (horizon_used)
    *horizon_used = h;
  FactorIndex index(x.prefix(h));
  std::vector<Burst> out;
  for (std::size_t n = 1; n <= n_max; ++n) {
    RauzyGraph g = rauzy_from_index(index, n);
    auto special = special_factors(g);
    if (special.left.size() != 1)
      continue;
    auto shape = eight_shape(g, special.left.front());
    if (shape.eight)
      out.push_back({n, special.left.front(), shape.short_loop, shape.long_loop});
  }
  return out;
}

struct BurstCheck {
  Burst burst;
  /// Both loops nonempty and the longer one at most n: the condition under
  /// which every length-n path from l_n returns to l_n.
  bool eligible = false;
  bool covered = false;
  /// l_n is a prefix of x (it must be, for a characteristic word).
  bool prefix_of_x = false;
};

struct SturmianReport {
  std::size_t graph_horizon = 0;
  std::size_t cover_horizon = 0;
  std::vector<BurstCheck> checks;
  /// Distinct lengths of covered left-special prefixes at eligible bursts.
  std::vector<std::size_t> quasiperiod_lengths;
  /// Smallest burst order from which every burst is eligible and covered.
  std::optional<std::size_t> stable_from;
  /// Every eligible burst yields a quasiperiod.
  bool ok = false;

  std::size_t exceptions() const noexcept {
    return static_cast<std::size_t>(
        std::count_if(checks.begin(), checks.end(), [](const BurstCheck &c) { return !c.eligible; }));
  }
};

inline SturmianReport verify_sturmian_quasiperiods(const WordStream &x, std::size_t n_max,
                                                   std::size_t cover_horizon = 0,
                                                   std::size_t max_horizon = std::size_t{1} << 24) {
  SturmianReport rep;
  auto found = bursts(x, n_max, max_horizon, &rep.graph_horizon);
  rep.cover_horizon = cover_horizon ? cover_horizon : std::max(2 * rep.graph_horizon, 16 * n_max);
  rep.ok = true;
  std::set<std::size_t> lengths;
  for (auto &b : found) {
    BurstCheck c;
    c.eligible = b.short_loop >= 1 && b.long_loop <= b.order;
    c.prefix_of_x = x.prefix(b.order) == b.center;
    c.covered = c.prefix_of_x && check_cover(b.center, x, rep.cover_horizon).covered();
    if (c.eligible) {
      if (c.covered)
        lengths.insert(b.order);
      else
        rep.ok = false;
    }
    c.burst = std::move(b);
    rep.checks.push_back(std::move(c));
  }
  rep.quasiperiod_lengths.assign(lengths.begin(), lengths.end());
  for (std::size_t i = rep.checks.size(); i-- > 0;) {
    if (!rep.checks[i].eligible || !rep.checks[i].covered)
      break;
    rep.stable_from = rep.checks[i].burst.order;
  }
  return rep;
}

} // namespace qw
