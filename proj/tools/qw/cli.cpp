#include "cli.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <filesystem>
#include <fstream>
#include <functional>
#include <map>
#include <optional>
#include <sstream>
#include <string>
#include <vector>

#include <CLI11.hpp>
#include <nlohmann/json.hpp>

#include "qw/qw.hpp"

namespace qw::cli {
namespace {

using ojson = nlohmann::ordered_json;

struct Globals {
  std::string format;
  std::optional<std::size_t> horizon;
  std::string out;
  std::uint64_t seed = 0;
  std::size_t budget = WordStream::default_budget;
};

/// A failed check; `body` is the report that is still written out.
class InvariantFailure : public Error {
public:
  explicit InvariantFailure(const std::string &what, std::string body = {}) : Error(what), body_(std::move(body)) {}
  const std::string &body() const noexcept { return body_; }

private:
  std::string body_;
};

/// Writes next to the target and renames, so readers never see a partial file.
void write_atomic(const std::string &path, const std::string &content) {
  namespace fs = std::filesystem;
  fs::path target(path);
  fs::path tmp = target;
  tmp += ".tmp";
  {
    std::ofstream f(tmp, std::ios::binary | std::ios::trunc);
    if (!f)
      throw DomainError("cannot write '" + tmp.string() + "'");
    f.write(content.data(), static_cast<std::streamsize>(content.size()));
    if (!f)
      throw ResourceError("write to '" + tmp.string() + "' failed");
  }
  fs::rename(tmp, target);
}

void emit(const Globals &g, const std::string &content, std::ostream &out) {
  if (g.out.empty())
    out << content;
  else
    write_atomic(g.out, content);
}

WordStream load(const Globals &g, const std::string &spec) {
  WordStream x = spec == "random" ? make_stream("random:" + std::to_string(g.seed)) : make_stream(spec);
  x.set_budget(g.budget);
  return x;
}

std::string format_or(const Globals &g, const std::string &fallback, std::initializer_list<const char *> allowed) {
  std::string f = g.format.empty() ? fallback : g.format;
  for (const char *a : allowed)
    if (f == a)
      return f;
  throw DomainError("format '" + f + "' is not available for this command");
}

std::string json_text(const ojson &j) { return j.dump(2) + "\n"; }

std::vector<std::size_t> parse_list(const std::string &s) {
  std::vector<std::size_t> v;
  std::stringstream ss(s);
  std::string item;
  while (std::getline(ss, item, ',')) {
    try {
      std::size_t used = 0;
      v.push_back(std::stoull(item, &used));
      if (used != item.size())
        throw DomainError("not a number: '" + item + "'");
    } catch (const std::logic_error &) {
      throw DomainError("not a number: '" + item + "'");
    }
  }
  if (v.empty())
    throw DomainError("empty list");
  return v;
}

/// Letters of a derivative (or any word over {0..k-1}) as digits for k <= 10.
std::string render_over(const Word &w, std::size_t k) { return render_numeric(w, k); }

/// Longest quasiperiod with 4 l(q) <= n among lengths up to max_len.
std::optional<Word> longest_quasiperiod(const WordStream &x, std::size_t n, std::size_t max_len) {
  auto qps = quasiperiods_up_to(x, n, std::min(max_len, n / 4));
  if (qps.empty())
    return std::nullopt;
  return qps.back();
}

// ---------------------------------------------------------------------------

struct Generate {
  std::string word;
  std::size_t horizon = 100;

  std::string operator()(const Globals &g) const {
    WordStream x = load(g, word);
    std::size_t n = g.horizon.value_or(horizon);
    Word p = x.prefix(n);
    auto f = format_or(g, "text", {"text", "json", "csv"});
    if (f == "json")
      return json_text(ojson{{"word", x.name()}, {"horizon", n}, {"prefix", render(p, x.alphabet())}});
    if (f == "csv") {
      std::string s = "position,letter\n";
      for (std::size_t i = 0; i < p.size(); ++i)
        s += std::to_string(i) + "," + std::to_string(p[i]) + "\n";
      return s;
    }
    return render(p, x.alphabet()) + "\n";
  }
};

struct Derive {
  std::string word, q;

  std::string operator()(const Globals &g) const {
    WordStream x = load(g, word);
    Word qw_ = parse_word(q, x.alphabet());
    std::size_t n = g.horizon.value_or(std::max<std::size_t>(1000, 2 * qw_.size()));
    auto d = derive(x, qw_, n);
    auto f = format_or(g, "text", {"text", "json"});
    std::string letters = render_over(d.word, qw_.size());
    if (f == "json") {
      return json_text(ojson{{"word", x.name()},
                             {"quasiperiod", q},
                             {"horizon", d.horizon},
                             {"consumed", d.consumed},
                             {"derivative", letters},
                             {"occurrences", d.occurrences}});
    }
    return letters + "\n";
  }
};

struct Integrate {
  std::string w, word, display;
  std::size_t horizon = 100;

  std::string operator()(const Globals &g) const {
    Alphabet a = display.empty() ? infer_alphabet(w) : Alphabet(display.size(), display);
    Word base = parse_word(w, a);
    WordStream y = integrate(base, a, load(g, word));
    y.set_budget(g.budget);
    std::size_t n = g.horizon.value_or(horizon);
    Word p = y.prefix(n);
    auto f = format_or(g, "text", {"text", "json"});
    if (f == "json")
      return json_text(ojson{{"w", w}, {"word", word}, {"horizon", n}, {"integral", render(p, a)}});
    return render(p, a) + "\n";
  }
};

struct TowerCmd {
  std::string phi = "3=2";
  std::size_t default_phi = 1;
  std::size_t depth = 1;

  std::string operator()(const Globals &g) const {
    std::map<std::size_t, std::size_t> table;
    std::stringstream ss(phi);
    std::string entry;
    while (std::getline(ss, entry, ',')) {
      auto eq = entry.find('=');
      if (eq == std::string::npos)
        throw DomainError("expected --phi <length>=<value>,...");
      table[parse_list(entry.substr(0, eq)).at(0)] = parse_list(entry.substr(eq + 1)).at(0);
    }
    PhiTable table_phi(table, default_phi ? std::optional<std::size_t>(default_phi) : std::nullopt);
    Tower t = high_complexity_word(table_phi, depth, g.budget);
    ojson levels = ojson::array();
    bool all_ok = true;
    for (std::size_t n = 0; n < t.levels.size(); ++n) {
      ojson lv{{"level", n}, {"length", t.levels[n].size()}};
      if (n > 0) {
        const Word &prev = t.levels[n - 1];
        std::size_t m = t.phi_values[n - 1];
        std::size_t N = 2 * m * prev.size();
        bool covered = is_cover(prev, t.levels[n]);
        lv["phi"] = m;
        lv["covered_by_previous"] = covered;
        lv["complexity_length"] = N;
        std::optional<std::size_t> p;
        if (N <= t.levels[n].size())
          p = FactorIndex(t.levels[n]).distinct(N);
        lv["complexity"] = p ? ojson(*p) : ojson(nullptr);
        double lower = std::ldexp(1.0, static_cast<int>(std::min<std::size_t>(m, 1000)));
        bool bound_ok = p && static_cast<double>(*p) >= lower;
        lv["complexity_lower_bound"] = lower;
        lv["complexity_ok"] = bound_ok;
        all_ok = all_ok && covered && bound_ok;
      }
      if (t.levels[n].size() <= 4096)
        lv["word"] = render(t.levels[n], Alphabet::digits(2));
      levels.push_back(std::move(lv));
    }
    auto f = format_or(g, "json", {"json", "text"});
    std::string body;
    if (f == "json") {
      body = json_text(ojson{{"phi", phi}, {"default_phi", default_phi}, {"depth", depth}, {"ok", all_ok}, {"levels", levels}});
    } else {
      for (const auto &lv : levels) {
        body += "u_" + lv["level"].dump() + " length " + lv["length"].dump();
        if (lv.contains("phi"))
          body += " phi " + lv["phi"].dump() + " covered " + lv["covered_by_previous"].dump() + " p_" +
                  lv["complexity_length"].dump() + " " + lv["complexity"].dump();
        body += "\n";
      }
    }
    if (!all_ok) {
      throw InvariantFailure("tower level check failed", body);
    }
    return body;
  }
};

struct QpScan {
  std::string word;
  std::size_t horizon = 1000;
  std::size_t max_qp = 50;

  std::string operator()(const Globals &g) const {
    WordStream x = load(g, word);
    std::size_t n = g.horizon.value_or(horizon);
    auto qps = quasiperiods_up_to(x, n, max_qp);
    auto f = format_or(g, "json", {"json", "text", "csv"});
    if (f == "text" || f == "csv") {
      std::string s = f == "csv" ? "length,quasiperiod\n" : "";
      for (const auto &q : qps)
        s += f == "csv" ? std::to_string(q.size()) + ",\"" + render(q, x.alphabet()) + "\"\n"
                        : render(q, x.alphabet()) + "\n";
      return s;
    }
    ojson list = ojson::array();
    for (const auto &q : qps)
      list.push_back({{"length", q.size()}, {"word", render(q, x.alphabet())}});
    return json_text(ojson{{"word", x.name()}, {"horizon", n}, {"max_qp", max_qp}, {"quasiperiods", list}});
  }
};

struct QpCheck {
  std::string word, q;
  std::size_t horizon = 1000;

  std::string operator()(const Globals &g) const {
    WordStream x = load(g, word);
    Word qw_ = parse_word(q, x.alphabet());
    auto r = check_cover(qw_, x, g.horizon.value_or(horizon));
    ojson j{{"word", x.name()}, {"quasiperiod", q}, {"horizon", r.horizon}, {"verdict", to_string(r.verdict)}};
    if (!r.covered())
      j["first_uncovered"] = r.first_uncovered;
    auto f = format_or(g, "json", {"json", "text"});
    std::string body = f == "json" ? json_text(j) : std::string(to_string(r.verdict)) + "\n";
    if (!r.covered()) {
      throw InvariantFailure(q + " is not a quasiperiod up to the horizon", body);
    }
    return body;
  }
};

struct Complexity {
  std::string word;
  std::size_t n_max = 20;
  std::size_t max_horizon = std::size_t{1} << 22;

  std::string operator()(const Globals &g) const {
    WordStream x = load(g, word);
    std::size_t h;
    if (g.horizon) {
      h = *g.horizon;
    } else {
      try {
        h = saturating_horizon(x, n_max, 64, max_horizon);
      } catch (const HorizonError &) {
        h = max_horizon / 2;
      } catch (const ResourceError &) {
        h = std::max<std::size_t>(2 * n_max, x.materialized() / 2);
      }
    }
    auto prof = profile(x, n_max, h);
    auto f = format_or(g, "csv", {"csv", "json"});
    if (f == "csv") {
      std::ostringstream os;
      write_profile_csv(os, prof);
      return os.str();
    }
    ojson rows = ojson::array();
    for (const auto &e : entropy_estimate(prof))
      rows.push_back({{"n", e.n}, {"p", prof.values[e.n]}, {"saturated", static_cast<bool>(prof.saturated[e.n])},
                      {"log_p_over_n", e.value}});
    return json_text(ojson{{"word", x.name()}, {"horizon", prof.horizon}, {"profile", rows}});
  }
};

struct Freq {
  std::string word;
  std::vector<std::string> factors;
  std::size_t max_len = 3;
  std::size_t max_qp = 50;
  std::size_t n = 1'000'000;

  std::string operator()(const Globals &g) const {
    WordStream x = load(g, word);
    std::size_t horizon = g.horizon.value_or(n);
    std::vector<Word> us;
    for (const auto &u : factors)
      us.push_back(parse_word(u, x.alphabet()));
    if (us.empty()) {
      FactorIndex idx(x.prefix(horizon));
      for (std::size_t len = 1; len <= max_len; ++len)
        for (auto &u : idx.factors(len))
          us.push_back(std::move(u));
    }
    auto qps = quasiperiods_up_to(x, horizon, max_qp);
    if (qps.empty())
      throw InvariantFailure("no quasiperiod of length <= " + std::to_string(max_qp) + " up to the horizon");
    std::vector<SandwichRow> rows;
    for (const auto &u : us) {
      auto r = sandwich_report(u, x, qps, horizon);
      rows.insert(rows.end(), r.begin(), r.end());
    }
    bool ok = std::all_of(rows.begin(), rows.end(), [](const SandwichRow &r) { return r.passed(); });
    auto f = format_or(g, "csv", {"csv", "json"});
    std::string body;
    if (f == "csv") {
      std::ostringstream os;
      write_sandwich_csv(os, rows, x.alphabet());
      body = os.str();
    } else {
      ojson list = ojson::array();
      for (const auto &r : rows)
        list.push_back({{"u", render(r.factor, x.alphabet())},
                        {"q", render(r.quasiperiod, x.alphabet())},
                        {"mu_q", to_string(r.mu)},
                        {"birkhoff", to_string(r.frequency)},
                        {"lower_bound", to_string(r.lower)},
                        {"slack", to_string(r.slack)},
                        {"check_passed", r.passed()}});
      body = json_text(ojson{{"word", x.name()}, {"n", horizon}, {"ok", ok}, {"rows", list}});
    }
    if (!ok) {
      throw InvariantFailure("frequency sandwich violated", body);
    }
    return body;
  }
};

struct Rauzy {
  std::string word;
  std::size_t order = 3;
  std::vector<std::string> removed;
  std::size_t k_prime = 1;
  std::size_t max_horizon = std::size_t{1} << 22;

  std::string operator()(const Globals &g) const {
    WordStream x = load(g, word);
    RauzyGraph graph = g.horizon ? build_rauzy(x, order, *g.horizon) : build_rauzy_saturated(x, order, 64, max_horizon);
    std::vector<Word> gone;
    for (const auto &r : removed)
      gone.push_back(parse_word(r, x.alphabet()));
    auto f = format_or(g, "dot", {"dot", "json", "text"});
    if (f == "dot") {
      std::ostringstream os;
      write_dot(os, graph, x.alphabet(), gone);
      return os.str();
    }
    auto special = special_factors(graph);
    ojson j{{"word", x.name()},
            {"order", graph.order()},
            {"horizon", graph.horizon()},
            {"vertices", graph.vertex_count()},
            {"edges", graph.edge_count()}};
    ojson left = ojson::array(), right = ojson::array();
    for (const auto &w : special.left)
      left.push_back(render(w, x.alphabet()));
    for (const auto &w : special.right)
      right.push_back(render(w, x.alphabet()));
    j["left_special"] = left;
    j["right_special"] = right;
    if (special.left.size() == 1) {
      auto shape = eight_shape(graph, special.left.front());
      j["eight_shaped"] = shape.eight;
      if (shape.eight)
        j["loops"] = {shape.short_loop, shape.long_loop};
    }
    if (!gone.empty()) {
      auto d = deconnect_check(graph, gone, k_prime);
      j["deconnect"] = {{"ok", d.ok}, {"acyclic", d.acyclic}, {"longest_path", d.longest_path}, {"limit", d.limit}};
    }
    if (f == "json")
      return json_text(j);
    return "order " + std::to_string(graph.order()) + ": " + std::to_string(graph.vertex_count()) + " vertices, " +
           std::to_string(graph.edge_count()) + " edges, " + std::to_string(special.left.size()) +
           " left special, " + std::to_string(special.right.size()) + " right special\n";
  }
};

struct Sturmian {
  std::string cf = "1";
  std::size_t n_max = 200;
  bool verify = false;
  std::size_t max_horizon = std::size_t{1} << 24;

  std::string operator()(const Globals &g) const {
    SturmianSpec spec{parse_list(cf)};
    WordStream x = characteristic_word(spec);
    x.set_budget(g.budget);
    format_or(g, "json", {"json"});
    if (!verify) {
      std::size_t h = 0;
      auto found = bursts(x, n_max, max_horizon, &h);
      ojson list = ojson::array();
      for (const auto &b : found)
        list.push_back({{"order", b.order}, {"short_loop", b.short_loop}, {"long_loop", b.long_loop}});
      return json_text(ojson{{"cf", spec.to_string()}, {"n_max", n_max}, {"graph_horizon", h}, {"bursts", list}});
    }
    auto rep = verify_sturmian_quasiperiods(x, n_max, g.horizon.value_or(0), max_horizon);
    ojson checks = ojson::array();
    for (const auto &c : rep.checks)
      checks.push_back({{"order", c.burst.order},
                        {"short_loop", c.burst.short_loop},
                        {"long_loop", c.burst.long_loop},
                        {"eligible", c.eligible},
                        {"prefix_of_x", c.prefix_of_x},
                        {"covered", c.covered}});
    ojson j{{"cf", spec.to_string()},
            {"n_max", n_max},
            {"graph_horizon", rep.graph_horizon},
            {"cover_horizon", rep.cover_horizon},
            {"ok", rep.ok},
            {"quasiperiod_lengths", rep.quasiperiod_lengths},
            {"stable_from", rep.stable_from ? ojson(*rep.stable_from) : ojson(nullptr)},
            {"exceptions", rep.exceptions()},
            {"bursts", checks}};
    std::string body = json_text(j);
    if (!rep.ok) {
      throw InvariantFailure("an eligible burst did not yield a quasiperiod", body);
    }
    return body;
  }
};

struct QpzipCmd {
  std::string word, q, in;
  std::size_t horizon = 100'000;
  std::size_t max_qp = 1000;

  std::pair<Word, Alphabet> text(const Globals &g) const {
    WordStream x = load(g, word);
    return {x.prefix(g.horizon.value_or(horizon)), x.alphabet()};
  }

  Word pick(const Globals &g, const Word &t, const Alphabet &a) const {
    if (!q.empty())
      return parse_word(q, a);
    auto best = longest_quasiperiod(load(g, word), t.size(), max_qp);
    if (!best)
      throw InvariantFailure("no quasiperiod found to encode with");
    return *best;
  }

  std::string encode_cmd(const Globals &g) const {
    auto [t, a] = text(g);
    auto enc = encode(t, pick(g, t, a), a.size());
    std::ostringstream os(std::ios::binary);
    write_container(os, enc);
    return os.str();
  }

  std::string decode_cmd(const Globals &g) const {
    std::ifstream f(in, std::ios::binary);
    if (!f)
      throw DomainError("cannot open container '" + in + "'");
    auto enc = read_container(f);
    Word w = decode(enc);
    auto fmt = format_or(g, "text", {"text", "json"});
    std::string letters = render_over(w, enc.alphabet_size);
    if (fmt == "json")
      return json_text(ojson{{"length", w.size()}, {"alphabet_size", enc.alphabet_size}, {"word", letters}});
    return letters + "\n";
  }

  std::string cost_cmd(const Globals &g) const {
    auto [t, a] = text(g);
    auto enc = encode(t, pick(g, t, a), a.size());
    auto c = bit_cost(enc);
    bool roundtrip = decode(enc) == t;
    bool token_bound = enc.tokens.size() * enc.quasiperiod.size() <= 4 * enc.length + 2 * enc.quasiperiod.size();
    format_or(g, "json", {"json"});
    std::string body = json_text(ojson{{"word", word},
                                       {"n", enc.length},
                                       {"quasiperiod_length", enc.quasiperiod.size()},
                                       {"tokens", enc.tokens.size()},
                                       {"token_bound_ok", token_bound},
                                       {"bits", c.bits},
                                       {"rate", c.rate},
                                       {"bound", c.bound},
                                       {"within_bound", c.within_bound},
                                       {"roundtrip", roundtrip}});
    if (!roundtrip || !token_bound) {
      throw InvariantFailure("qpzip round trip or token bound failed", body);
    }
    return body;
  }
};

// ---------------------------------------------------------------------------

/// Small, fast battery of invariant checks over the built-in corpus.
std::string verify_all(const Globals &g, bool &all_ok) {
  std::vector<std::pair<std::string, std::function<bool()>>> checks;
  checks.emplace_back("derive paper-example-1 along aba", [] {
    auto d = derive(named_stream("paper-example-1"), parse_word("aba"), 41);
    return render_numeric(d.word, 3) == corpus::paper_example_1_derivative;
  });
  checks.emplace_back("integrate paper-example-2 along aabcaa", [] {
    auto y = named_stream("paper-example-2-integral");
    return render(y.prefix(corpus::paper_example_2_integral.size()), y.alphabet()) == corpus::paper_example_2_integral;
  });
  checks.emplace_back("derive inverts integrate on seeded random words", [] {
    for (std::uint64_t seed = 0; seed < 50; ++seed) {
      std::size_t k = seed % 6;
      Word w = repeat(Word{0}, k) + Word{1} + repeat(Word{0}, k);
      WordStream x = random_stream(seed, k + 1);
      WordStream y = integrate(w, Alphabet::letters(2), x);
      auto d = derive(y, w, 2000);
      if (d.word != x.prefix(d.word.size()))
        return false;
    }
    return true;
  });
  checks.emplace_back("linear shortest cover matches the border chain", [] {
    for (std::size_t len = 1; len <= 10; ++len)
      for (std::size_t bits = 0; bits < (std::size_t{1} << len); ++bits) {
        Word v;
        for (std::size_t i = 0; i < len; ++i)
          v.push_back(static_cast<Letter>((bits >> i) & 1));
        if (shortest_cover_linear(v) != all_covers(v).front())
          return false;
      }
    return true;
  });
  checks.emplace_back("Sturmian complexity n + 1", [] {
    for (auto cf : {std::vector<std::size_t>{1}, std::vector<std::size_t>{2, 1}}) {
      auto prof = profile(characteristic_word(SturmianSpec{cf}), 30, 1024);
      for (std::size_t n = 1; n <= 30; ++n)
        if (prof.p(n) != n + 1 || !prof.saturated[n])
          return false;
    }
    return true;
  });
  checks.emplace_back("tower level 1 covered by 010 with p_12 >= 4", [] {
    Tower t = high_complexity_word(PhiTable({{3, 2}}, 1), 1);
    return is_cover(t.levels[0], t.levels[1]) && FactorIndex(t.levels[1]).distinct(12) >= 4;
  });
  checks.emplace_back("quadratic bound on Fibonacci quasiperiods", [] {
    auto x = named_stream("fibonacci");
    auto qps = quasiperiods_up_to(x, 4096, 100);
    auto rows = quadratic_bound_report(x, qps, 8192);
    return !rows.empty() && std::all_of(rows.begin(), rows.end(), [](auto &r) { return r.within; });
  });
  checks.emplace_back("qpzip round trip on the corpus", [] {
    for (const auto &name : {"fibonacci", "sturmian-21", "tower", "paper-example-2-integral"}) {
      auto x = named_stream(name);
      Word t = x.prefix(20000);
      auto q = longest_quasiperiod(x, t.size(), 500);
      if (!q)
        return false;
      auto enc = encode(t, *q, x.alphabet().size());
      std::stringstream ss;
      write_container(ss, enc);
      if (decode(read_container(ss)) != t)
        return false;
    }
    return true;
  });
  std::string body;
  all_ok = true;
  for (auto &[name, fn] : checks) {
    bool ok = false;
    try {
      ok = fn();
    } catch (const Error &) {
      ok = false;
    }
    all_ok = all_ok && ok;
    body += std::string(ok ? "PASS " : "FAIL ") + name + "\n";
  }
  (void)g;
  return body;
}

} // namespace

int run(const std::vector<std::string> &args, std::ostream &out, std::ostream &err) {
  CLI::App app{"Quasiperiodic word toolkit", "qw"};
  app.require_subcommand(1);
  Globals g;
  std::size_t horizon_raw = 0;
  app.add_option("--format", g.format, "Output format")->check(CLI::IsMember({"csv", "json", "dot", "text"}));
  auto *hopt = app.add_option("--horizon", horizon_raw, "Prefix length analysed")->check(CLI::PositiveNumber);
  app.add_option("--out", g.out, "Write output to this file instead of stdout");
  app.add_option("--seed", g.seed, "Seed used by the 'random' word spec");
  app.add_option("--budget", g.budget, "Largest prefix any stream may materialize")->check(CLI::PositiveNumber);

  std::function<std::string()> action;
  auto sub = [&](const char *name, const char *help) {
    auto *s = app.add_subcommand(name, help);
    s->fallthrough();
    return s;
  };

  Generate gen;
  auto *s_gen = sub("generate", "Print a prefix of a word");
  s_gen->add_option("--word", gen.word, "Word spec")->required();
  s_gen->callback([&] { action = [&] { return gen(g); }; });

  Derive der;
  auto *s_der = sub("derive", "Derivative of a word along a quasiperiod");
  s_der->add_option("--word", der.word, "Word spec")->required();
  s_der->add_option("--q", der.q, "Quasiperiod")->required();
  s_der->callback([&] { action = [&] { return der(g); }; });

  Integrate integ;
  auto *s_int = sub("integrate", "Integral of a word along w");
  s_int->add_option("--w", integ.w, "Base word w")->required();
  s_int->add_option("--word", integ.word, "Word spec of the integrand")->required();
  s_int->add_option("--alphabet", integ.display, "Display symbols for the letters of w");
  s_int->callback([&] { action = [&] { return integ(g); }; });

  TowerCmd tow;
  auto *s_tow = sub("tower", "Build the high-complexity tower");
  s_tow->add_option("--phi", tow.phi, "Table length=value,...");
  s_tow->add_option("--default-phi", tow.default_phi, "phi at lengths missing from the table (0: none)");
  s_tow->add_option("--depth", tow.depth, "Number of levels above u_0")->check(CLI::PositiveNumber);
  s_tow->callback([&] { action = [&] { return tow(g); }; });

  auto *s_qp = sub("qp", "Quasiperiod analyses");
  s_qp->require_subcommand(1);
  QpScan scan;
  auto *s_scan = s_qp->add_subcommand("scan", "All quasiperiods up to a length");
  s_scan->fallthrough();
  s_scan->add_option("--word", scan.word, "Word spec")->required();
  s_scan->add_option("--max-qp", scan.max_qp, "Longest candidate")->check(CLI::PositiveNumber);
  s_scan->callback([&] { action = [&] { return scan(g); }; });
  QpCheck qcheck;
  auto *s_check = s_qp->add_subcommand("check", "Coverage verdict for one candidate");
  s_check->fallthrough();
  s_check->add_option("--word", qcheck.word, "Word spec")->required();
  s_check->add_option("--q", qcheck.q, "Candidate quasiperiod")->required();
  s_check->callback([&] { action = [&] { return qcheck(g); }; });

  Complexity cx;
  auto *s_cx = sub("complexity", "Factor complexity profile");
  s_cx->add_option("--word", cx.word, "Word spec")->required();
  s_cx->add_option("--n-max", cx.n_max, "Largest factor length")->check(CLI::PositiveNumber);
  s_cx->add_option("--max-horizon", cx.max_horizon, "Cap for the saturation search");
  s_cx->callback([&] { action = [&] { return cx(g); }; });

  Freq fq;
  auto *s_fq = sub("freq", "Frequencies against periodic approximants");
  s_fq->add_option("--word", fq.word, "Word spec")->required();
  s_fq->add_option("--u", fq.factors, "Factor (repeatable); default: all factors up to --max-len");
  s_fq->add_option("--max-len", fq.max_len, "Longest default factor")->check(CLI::PositiveNumber);
  s_fq->add_option("--max-qp", fq.max_qp, "Longest quasiperiod used")->check(CLI::PositiveNumber);
  s_fq->callback([&] { action = [&] { return fq(g); }; });

  Rauzy rz;
  auto *s_rz = sub("rauzy", "Rauzy graph of one order");
  s_rz->add_option("--word", rz.word, "Word spec")->required();
  s_rz->add_option("--n", rz.order, "Order")->required()->check(CLI::PositiveNumber);
  s_rz->add_option("--remove", rz.removed, "Vertex removed in the deconnect check (repeatable)");
  s_rz->add_option("--k", rz.k_prime, "Path length factor for the deconnect check");
  s_rz->add_option("--max-horizon", rz.max_horizon, "Cap for the saturation search");
  s_rz->callback([&] { action = [&] { return rz(g); }; });

  Sturmian st;
  auto *s_st = sub("sturmian", "Sturmian bursts and their quasiperiods");
  s_st->add_option("--cf", st.cf, "Partial quotients, repeated periodically");
  s_st->add_option("--n-max", st.n_max, "Largest Rauzy order")->check(CLI::PositiveNumber);
  s_st->add_flag("--verify-qp", st.verify, "Check that eligible bursts give quasiperiods");
  s_st->add_option("--max-horizon", st.max_horizon, "Cap for the saturation search");
  s_st->callback([&] { action = [&] { return st(g); }; });

  QpzipCmd zip;
  auto *s_zip = sub("qpzip", "Quasiperiod-based compression");
  s_zip->require_subcommand(1);
  auto *s_enc = s_zip->add_subcommand("encode", "Write a container");
  s_enc->fallthrough();
  s_enc->add_option("--word", zip.word, "Word spec")->required();
  s_enc->add_option("--q", zip.q, "Quasiperiod (default: longest found)");
  s_enc->add_option("--max-qp", zip.max_qp, "Longest quasiperiod searched");
  s_enc->callback([&] { action = [&] { return zip.encode_cmd(g); }; });
  auto *s_dec = s_zip->add_subcommand("decode", "Read a container");
  s_dec->fallthrough();
  s_dec->add_option("--in", zip.in, "Container path")->required();
  s_dec->callback([&] { action = [&] { return zip.decode_cmd(g); }; });
  auto *s_cost = s_zip->add_subcommand("cost", "Bit cost against the rate bound");
  s_cost->fallthrough();
  s_cost->add_option("--word", zip.word, "Word spec")->required();
  s_cost->add_option("--q", zip.q, "Quasiperiod (default: longest found)");
  s_cost->add_option("--max-qp", zip.max_qp, "Longest quasiperiod searched");
  s_cost->callback([&] { action = [&] { return zip.cost_cmd(g); }; });

  bool verify_ok = true;
  auto *s_all = sub("verify-all", "Run the invariant battery");
  s_all->callback([&] { action = [&] { return verify_all(g, verify_ok); }; });

  std::vector<std::string> rev(args.rbegin(), args.rend() - (args.empty() ? 0 : 1));
  try {
    app.parse(rev);
  } catch (const CLI::ParseError &e) {
    int code = app.exit(e, out, err);
    return code == 0 ? ok : usage;
  }
  if (*hopt)
    g.horizon = horizon_raw;

  try {
    std::string body = action();
    emit(g, body, out);
    if (!verify_ok) {
      err << "qw: invariant check failed\n";
      return invariant_failure;
    }
    return ok;
  } catch (const ResourceError &e) {
    err << "qw: resource budget exceeded: " << e.what() << "\n";
    return resource;
  } catch (const CoverageError &e) {
    err << "qw: " << e.what() << "\n";
    return invariant_failure;
  } catch (const IntegrityError &e) {
    err << "qw: " << e.what() << "\n";
    return invariant_failure;
  } catch (const InvariantFailure &e) {
    if (!e.body().empty())
      emit(g, e.body(), out);
    err << "qw: " << e.what() << "\n";
    return invariant_failure;
  } catch (const Error &e) {
    err << "qw: " << e.what() << "\n";
    return usage;
  } catch (const std::filesystem::filesystem_error &e) {
    err << "qw: " << e.what() << "\n";
    return usage;
  }
}

} // namespace qw::cli
