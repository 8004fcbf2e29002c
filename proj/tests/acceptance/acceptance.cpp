// Acceptance gate: one PASS/FAIL line per criterion; exit status 1 if any fails.

#include <algorithm>
#include <chrono>
#include <cmath>
#include <cstdio>
#include <functional>
#include <map>
#include <random>
#include <set>
#include <sstream>
#include <string>
#include <vector>

#include "oracles.hpp"
#include "qw/qw.hpp"

using namespace qw;
using Clock = std::chrono::steady_clock;

namespace {

struct Outcome {
  bool pass = false;
  std::string detail;
};

double seconds_since(Clock::time_point t0) { return std::chrono::duration<double>(Clock::now() - t0).count(); }

std::string fmt(const char *f, double v) {
  char buf[96];
  std::snprintf(buf, sizeof buf, f, v);
  return buf;
}

Word a_b_a(std::size_t k) { return repeat(Word{0}, k) + Word{1} + repeat(Word{0}, k); }

// 1. Derivative of the introductory example along aba.
Outcome derivation_example() {
  WordStream x = named_stream("paper-example-1");
  Word q = parse_word("aba", x.alphabet());
  x.prefix(64); // materialize outside the timed region
  auto t0 = Clock::now();
  auto d = derive(x, q, 41);
  double dt = seconds_since(t0);
  std::string got = render_numeric(d.word, 3);
  bool ok = got.rfind("100011101100010", 0) == 0 && dt < 1e-3;
  return {ok, "derivative " + got + ", " + fmt("%.1f us", dt * 1e6)};
}

// 2. Integration of 01121010201... along aabcaa.
Outcome integration_example() {
  WordStream y = named_stream("paper-example-2-integral");
  const auto &printed = corpus::paper_example_2_integral;
  std::string got = render(y.prefix(printed.size()), y.alphabet());
  return {got == printed, std::to_string(printed.size()) + " letters compared"};
}

// 3. derive(integrate(w, x), w) = x for w = a^k b a^k.
Outcome round_trip() {
  auto t0 = Clock::now();
  std::mt19937_64 rng(20240601);
  std::size_t failures = 0;
  for (int trial = 0; trial < 1000; ++trial) {
    std::size_t k = rng() % 6;
    Word w = a_b_a(k);
    WordStream x = random_stream(rng(), k + 1);
    WordStream y = integrate(w, Alphabet::letters(2), x);
    auto d = derive(y, w, 10000);
    if (d.word.empty() || d.word != x.prefix(d.word.size()))
      ++failures;
  }
  double dt = seconds_since(t0);
  return {failures == 0 && dt < 10.0, std::to_string(failures) + " failures in 1000, " + fmt("%.2f s", dt)};
}

// 4. Linear shortest cover against the brute-force cover oracle.
Outcome cover_oracle() {
  std::size_t mismatches = 0, cases = 0;
  for (std::size_t len = 1; len <= 12; ++len)
    for (std::size_t bits = 0; bits < (std::size_t{1} << len); ++bits) {
      Word v;
      for (std::size_t i = 0; i < len; ++i)
        v.push_back(static_cast<Letter>((bits >> i) & 1));
      mismatches += shortest_cover_linear(v).size() != oracle::all_cover_lengths(v).front() ||
                    shortest_cover_linear(v).size() != oracle::shortest_cover_length(v);
      ++cases;
    }
  std::mt19937_64 rng(4242);
  for (int trial = 0; trial < 10000; ++trial) {
    std::size_t len = 1 + rng() % 10000;
    std::size_t k = 2 + rng() % 3;
    // Half the words have a planted short cover so that both branches are exercised.
    Word v = trial % 2 ? oracle::random_covered_word(rng, len, k) : oracle::random_word(rng, len, k);
    mismatches += shortest_cover_linear(v).size() != oracle::shortest_cover_length(v);
    ++cases;
  }
  return {mismatches == 0, std::to_string(mismatches) + " mismatches in " + std::to_string(cases)};
}

// 5. p_{l(q)} <= l(q)^2 for every witnessed quasiperiod.
Outcome quadratic_bound() {
  std::size_t checked = 0, violations = 0;
  for (const char *name : {"fibonacci", "tower", "periodic:aba", "periodic:aab", "periodic:abaab", "sturmian-21"}) {
    WordStream x = make_stream(name);
    auto qps = quasiperiods_up_to(x, 20000, 100);
    for (const auto &r : quadratic_bound_report(x, qps, 40000)) {
      ++checked;
      violations += !r.within;
    }
  }
  return {violations == 0 && checked > 0,
          std::to_string(violations) + " violations over " + std::to_string(checked) + " quasiperiods"};
}

// 6. Sturmian complexity n + 1.
Outcome sturmian_complexity() {
  std::string detail;
  bool ok = true;
  for (auto cf : {std::vector<std::size_t>{1}, std::vector<std::size_t>{2, 1}}) {
    WordStream x = characteristic_word(SturmianSpec{cf});
    std::size_t h = saturating_horizon(x, 100, 256, 1 << 22);
    auto prof = profile(x, 100, h);
    for (std::size_t n = 1; n <= 100; ++n)
      ok = ok && prof.p(n) == n + 1 && prof.saturated[n];
    detail += "(" + SturmianSpec{cf}.to_string() + ") horizon " + std::to_string(h) + "; ";
  }
  return {ok, detail + "p_n = n+1 for n <= 100"};
}

// 7. Bursts of Sturmian words yield quasiperiods.
Outcome sturmian_quasiperiods() {
  bool ok = true;
  std::string detail;
  for (auto cf : {std::vector<std::size_t>{1}, std::vector<std::size_t>{2, 1}}) {
    auto rep = verify_sturmian_quasiperiods(characteristic_word(SturmianSpec{cf}), 200);
    // A burst is checked when both loops fit in n letters; unchecked ones may
    // only precede the first checked one, and every checked one must cover.
    bool covered = true, early_only = true, seen_checked = false;
    std::size_t checked = 0;
    for (std::size_t i = 1; i < rep.checks.size(); ++i) {
      const auto &c = rep.checks[i];
      if (c.eligible) {
        seen_checked = true;
        ++checked;
        covered = covered && c.covered;
      } else {
        early_only = early_only && !seen_checked;
      }
    }
    ok = ok && rep.ok && covered && early_only && checked > 0 && rep.quasiperiod_lengths.size() >= 5;
    detail += "(" + SturmianSpec{cf}.to_string() + ") " + std::to_string(rep.checks.size()) + " bursts, " +
              std::to_string(checked) + " checked past the first, " + std::to_string(rep.exceptions()) +
              " small-n exceptions, " + std::to_string(rep.quasiperiod_lengths.size()) + " lengths; ";
  }
  return {ok, detail};
}

// 8. G_{l(q)} minus q is acyclic with paths of at most l(q) edges.
Outcome deconnectability() {
  std::size_t checked = 0, violations = 0;
  std::string first_bad;
  for (const char *name : {"fibonacci", "sturmian-21", "tower", "paper-example-1", "paper-example-2-integral",
                           "periodic:aba", "periodic:aab"}) {
    WordStream x = make_stream(name);
    auto qps = quasiperiods_up_to(x, 20000, 100);
    std::size_t longest = qps.empty() ? 1 : qps.back().size();
    std::size_t h = saturating_horizon(x, longest + 1, 1024, 1 << 22);
    FactorIndex idx(x.prefix(h));
    for (const auto &q : qps) {
      auto r = deconnect_check(rauzy_from_index(idx, q.size()), {q}, 1);
      ++checked;
      if (!r.ok) {
        ++violations;
        if (first_bad.empty())
          first_bad = std::string(", first: ") + name + " l(q)=" + std::to_string(q.size());
      }
    }
  }
  return {violations == 0 && checked > 0,
          std::to_string(violations) + " violations over " + std::to_string(checked) + " quasiperiods" + first_bad};
}

// 9. Frequency sandwich on Fibonacci and the Cauchy check on letter 1.
Outcome ergodic_sandwich() {
  WordStream x = named_stream("fibonacci");
  const std::size_t n = 1'000'000;
  auto qps = quasiperiods_up_to(x, n, 50);
  std::size_t rows = 0, violations = 0;
  for (std::size_t len = 1; len <= 3; ++len)
    for (const auto &u : language(x, len, n))
      for (const auto &r : sandwich_report(u, x, qps, n)) {
        ++rows;
        violations += !r.passed();
      }
  double f1 = to_double(birkhoff(Word{1}, x, n));
  double f2 = to_double(birkhoff(Word{1}, x, 2 * n));
  bool cauchy = std::abs(f1 - f2) <= 1e-5;
  return {violations == 0 && rows > 0 && cauchy, std::to_string(violations) + " violations over " +
                                                     std::to_string(rows) + " rows; |f(1e6) - f(2e6)| = " +
                                                     fmt("%.2e", std::abs(f1 - f2))};
}

// 10. First tower level with phi(3) = 2.
Outcome tower() {
  auto t0 = Clock::now();
  Tower t = high_complexity_word(PhiTable(std::map<std::size_t, std::size_t>{{3, 2}}), 1);
  std::size_t p12 = FactorIndex(t.levels[1]).distinct(12);
  bool covered = is_cover(t.levels[0], t.levels[1]);
  double dt = seconds_since(t0);
  return {p12 >= 4 && covered && dt < 1.0, "l(u_1) = " + std::to_string(t.levels[1].size()) + ", p_12 = " +
                                               std::to_string(p12) + ", 010 covers u_1: " +
                                               (covered ? "yes" : "no") + ", " + fmt("%.1f ms", dt * 1e3)};
}

// 11. qpzip: round trip, token bound, rate bound.
Outcome qpzip() {
  std::size_t runs = 0, failures = 0;
  for (const auto &name : corpus::names()) {
    WordStream x = make_stream(name);
    Word text = x.prefix(50000);
    auto qps = quasiperiods_up_to(x, text.size(), 400);
    for (const auto &q : qps) {
      if (4 * q.size() > text.size())
        continue;
      auto enc = encode(text, q, x.alphabet().size());
      std::stringstream ss;
      write_container(ss, enc);
      bool ok = decode(read_container(ss)) == text &&
                enc.tokens.size() * q.size() <= 4 * text.size() + 2 * q.size();
      ++runs;
      failures += !ok;
    }
  }
  WordStream fib = named_stream("fibonacci");
  const std::size_t n = 1'000'000;
  Word text = fib.prefix(n);
  auto qps = quasiperiods_up_to(fib, n, 2000);
  auto cost = bit_cost(encode(text, qps.back(), 2));
  bool rate_ok = cost.within_bound;
  return {failures == 0 && runs > 0 && rate_ok,
          std::to_string(failures) + " failures over " + std::to_string(runs) + " runs; Fibonacci l(q) = " +
              std::to_string(qps.back().size()) + " rate " + fmt("%.5f", cost.rate) + " <= bound " +
              fmt("%.5f", cost.bound)};
}

// 12. log(p_n)/n along the quasiperiod lengths of Fibonacci.
Outcome entropy_trend() {
  WordStream x = named_stream("fibonacci");
  auto qps = quasiperiods_up_to(x, 100000, 200);
  std::size_t longest = qps.back().size();
  auto prof = profile(x, longest, saturating_horizon(x, longest, 1024, 1 << 22));
  auto e = entropy_estimate(prof);
  bool ok = prof.all_saturated();
  double prev = INFINITY;
  for (const auto &q : qps) {
    std::size_t n = q.size();
    double v = e[n - 1].value;
    ok = ok && v < prev && v <= 2.0 * std::log(static_cast<double>(n + 1)) / static_cast<double>(n);
    prev = v;
  }
  return {ok, std::to_string(qps.size()) + " quasiperiod lengths up to " + std::to_string(longest)};
}

} // namespace

int main() {
  std::vector<std::pair<std::string, std::function<Outcome()>>> criteria{
      {"1 derivation example", derivation_example},
      {"2 integration example", integration_example},
      {"3 derive/integrate round trip", round_trip},
      {"4 linear cover vs oracle", cover_oracle},
      {"5 quadratic complexity bound", quadratic_bound},
      {"6 Sturmian complexity", sturmian_complexity},
      {"7 Sturmian burst quasiperiods", sturmian_quasiperiods},
      {"8 1-deconnectability", deconnectability},
      {"9 ergodic sandwich", ergodic_sandwich},
      {"10 tower construction", tower},
      {"11 qpzip", qpzip},
      {"12 entropy trend", entropy_trend},
  };
  int failed = 0;
  for (auto &[name, run] : criteria) {
    Outcome o;
    try {
      o = run();
    } catch (const std::exception &e) {
      o = {false, std::string("exception: ") + e.what()};
    }
    failed += !o.pass;
    std::printf("%s  %-32s %s\n", o.pass ? "PASS" : "FAIL", name.c_str(), o.detail.c_str());
    std::fflush(stdout);
  }
  std::printf("%d of %zu criteria failed\n", failed, criteria.size());
  return failed ? 1 : 0;
}
