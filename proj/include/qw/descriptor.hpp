#pragma once

// Stream construction from generator descriptors.
//
// A descriptor is a JSON object {"kind": ..., parameters...}. The command
// line also accepts a compact shorthand that maps onto the same objects:
//
//   fibonacci | fibonacci-ab | sturmian-21 | tower | paper-example-1 | ...
//   periodic:<word>            {"kind":"periodic","word":...}
//   word:<head>:<period>       {"kind":"ultimately-periodic","head":...,"period":...}
//   fixed-point:<w>            {"kind":"fixed-point","w":...}
//   sturmian:<d1,d2,...>       {"kind":"sturmian","cf":[...]}
//   random:<seed>[:<k>]        {"kind":"random","seed":...,"alphabet":k}
//   file:<path>[:<symbols>]    {"kind":"file","path":...,"alphabet":symbols}
//   integrate:<w>:<inner>      {"kind":"integrate","w":...,"of":<inner>}
//   tower[:<len>=<phi>,...]    {"kind":"tower","phi":{...},"default_phi":1}

#include <cstddef>
#include <cstdint>
#include <fstream>
#include <iterator>
#include <map>
#include <optional>
#include <memory>
#include <string>
#include <string_view>
#include <vector>

#include <nlohmann/json.hpp>

#include "qw/calculus.hpp"
#include "qw/error.hpp"
#include "qw/stream.hpp"
#include "qw/sturmian.hpp"
#include "qw/word.hpp"

namespace qw {

using json = nlohmann::json;

namespace corpus {

/// The quasiperiodic word of the introductory example, extended periodically by aba.
inline constexpr std::string_view paper_example_1 = "ababaabaabaababababaabababaabaabaababaaba";
/// Derivative of paper_example_1 along aba.
inline constexpr std::string_view paper_example_1_derivative = "100011101100010";
/// The integration example: x = 01121010201... integrated along aabcaa.
inline constexpr std::string_view paper_example_2 = "01121010201";
inline constexpr std::string_view paper_example_2_base = "aabcaa";
inline constexpr std::string_view paper_example_2_integral =
    "aabcaaaabcaaabcaaabcaabcaaabcaaaabcaaabcaaaabcaabcaaaabcaaabcaa";

/// Every built-in name accepted by named().
inline const std::vector<std::string> &names() {
  static const std::vector<std::string> n{"paper-example-1", "paper-example-2", "paper-example-2-integral",
                                          "fibonacci",       "fibonacci-ab",    "sturmian-21",
                                          "tower",           "non-recurrent",   "non-recurrent-aba"};
  return n;
}

} // namespace corpus

namespace detail {

inline std::vector<Word> sigma_images(const Word &w) {
  Substitution sigma(w);
  std::vector<Word> images;
  for (Letter i = 0; i < w.size(); ++i)
    images.push_back(sigma.image(i));
  return images;
}

inline Alphabet alphabet_from(const json &j, std::string_view sample) {
  if (j.contains("alphabet") && j["alphabet"].is_string())
    return Alphabet(j["alphabet"].get<std::string>().size(), j["alphabet"].get<std::string>());
  return infer_alphabet(sample);
}

inline std::vector<std::string> split(std::string_view s, char sep, std::size_t max_parts = 0) {
  std::vector<std::string> parts;
  std::size_t start = 0;
  while (true) {
    if (max_parts && parts.size() + 1 == max_parts) {
      parts.emplace_back(s.substr(start));
      break;
    }
    auto at = s.find(sep, start);
    if (at == std::string_view::npos) {
      parts.emplace_back(s.substr(start));
      break;
    }
    parts.emplace_back(s.substr(start, at - start));
    start = at + 1;
  }
  return parts;
}

inline std::size_t to_size(const std::string &s) {
  try {
    std::size_t used = 0;
    auto v = std::stoull(s, &used);
    if (used != s.size())
      throw DomainError("not a number: '" + s + "'");
    return static_cast<std::size_t>(v);
  } catch (const std::logic_error &) {
    throw DomainError("not a number: '" + s + "'");
  }
}

} // namespace detail

/// Fixed point of the integration operator along w (w's letters read as
/// digits, so they must all be < l(w)).
inline WordStream integration_fixed_point(const Word &w, Alphabet alphabet, std::string name) {
  if (w.empty() || w.max_letter() >= w.size())
    throw DomainError("fixed point of an integration needs every letter of w below l(w)");
  return fixed_point(detail::sigma_images(w), w[0], std::move(alphabet), std::move(name));
}

inline WordStream stream_from_descriptor(const json &desc);

/// A built-in corpus stream by name.
inline WordStream named_stream(const std::string &name) {
  using namespace corpus;
  if (name == "paper-example-1") {
    Alphabet ab = Alphabet::letters(2);
    return ultimately_periodic(parse_word(paper_example_1, ab), parse_word("aba", ab), ab, name);
  }
  if (name == "paper-example-2") {
    Alphabet d = Alphabet::digits(3);
    return ultimately_periodic(parse_word(paper_example_2, d), Word{0}, d, name);
  }
  if (name == "paper-example-2-integral") {
    Alphabet abc = Alphabet::letters(3);
    return integrate(parse_word(paper_example_2_base, abc), abc, named_stream("paper-example-2"));
  }
  if (name == "fibonacci")
    return integration_fixed_point(Word{0, 1, 0}, Alphabet::digits(2), name);
  if (name == "fibonacci-ab")
    return integration_fixed_point(Word{0, 1, 0}, Alphabet::letters(2), name);
  if (name == "sturmian-21")
    return characteristic_word(SturmianSpec{{2, 1}});
  if (name == "tower")
    return high_complexity_word(PhiTable({{3, 2}}, 1), 2).stream;
  if (name == "non-recurrent")
    return ultimately_periodic(Word{1}, Word{0}, Alphabet::digits(2), name);
  if (name == "non-recurrent-aba")
    return integrate(Word{0, 1, 0}, Alphabet::letters(2), named_stream("non-recurrent"));
  throw DomainError("unknown corpus word '" + name + "'");
}

/// Builds a stream from a JSON descriptor.
inline WordStream stream_from_descriptor(const json &desc) {
  if (!desc.is_object() || !desc.contains("kind"))
    throw DomainError("stream descriptor must be an object with a \"kind\"");
  const std::string kind = desc.at("kind").get<std::string>();
  try {
    if (kind == "named")
      return named_stream(desc.at("name").get<std::string>());
    if (kind == "periodic") {
      auto text = desc.at("word").get<std::string>();
      Alphabet a = detail::alphabet_from(desc, text);
      Word q = parse_word(text, a);
      if (q.empty())
        throw DomainError("periodic word must be nonempty");
      return periodic(q, a, "periodic:" + text);
    }
    if (kind == "ultimately-periodic") {
      auto head = desc.value("head", std::string{});
      auto period = desc.at("period").get<std::string>();
      Alphabet a = detail::alphabet_from(desc, head + period);
      return ultimately_periodic(parse_word(head, a), parse_word(period, a), a, "word:" + head + ":" + period);
    }
    if (kind == "fixed-point") {
      auto text = desc.at("w").get<std::string>();
      Alphabet a = detail::alphabet_from(desc, text);
      return integration_fixed_point(parse_word(text, a), a, "fixed-point:" + text);
    }
    if (kind == "substitution") {
      auto symbols = desc.at("alphabet").get<std::string>();
      Alphabet a(symbols.size(), symbols);
      std::vector<Word> images;
      for (const auto &img : desc.at("images"))
        images.push_back(parse_word(img.get<std::string>(), a));
      auto start = desc.at("start").get<std::string>();
      if (start.size() != 1)
        throw DomainError("substitution start must be a single symbol");
      return fixed_point(std::move(images), a.letter(start[0]), a, "substitution");
    }
    if (kind == "sturmian") {
      SturmianSpec spec{desc.at("cf").get<std::vector<std::size_t>>()};
      return characteristic_word(spec);
    }
    if (kind == "random") {
      auto seed = desc.at("seed").get<std::uint64_t>();
      auto k = desc.value("alphabet", std::size_t{2});
      return random_stream(seed, k);
    }
    if (kind == "file") {
      auto path = desc.at("path").get<std::string>();
      if (desc.contains("alphabet"))
        return file_stream(path, detail::alphabet_from(desc, ""));
      std::ifstream in(path, std::ios::binary);
      if (!in)
        throw DomainError("cannot open word file '" + path + "'");
      std::string text((std::istreambuf_iterator<char>(in)), std::istreambuf_iterator<char>());
      return file_stream(path, infer_alphabet(text));
    }
    if (kind == "integrate") {
      auto text = desc.at("w").get<std::string>();
      Alphabet a = detail::alphabet_from(desc, text);
      return integrate(parse_word(text, a), a, stream_from_descriptor(desc.at("of")));
    }
    if (kind == "tower") {
      std::map<std::size_t, std::size_t> table;
      if (desc.contains("phi"))
        for (const auto &[len, value] : desc["phi"].items())
          table[detail::to_size(len)] = value.get<std::size_t>();
      std::optional<std::size_t> fallback = std::size_t{1};
      if (desc.contains("default_phi"))
        fallback = desc["default_phi"].is_null() ? std::nullopt
                                                 : std::optional<std::size_t>(desc["default_phi"].get<std::size_t>());
      auto depth = desc.value("depth", std::size_t{1});
      auto budget = desc.value("budget", WordStream::default_budget);
      return high_complexity_word(PhiTable(table, fallback), depth, budget).stream;
    }
  } catch (const json::exception &e) {
    throw DomainError("malformed '" + kind + "' descriptor: " + e.what());
  }
  throw DomainError("unknown stream kind '" + kind + "'");
}

/// Shorthand or JSON text (starting with '{') or '@file.json' to a descriptor.
inline json parse_stream_spec(std::string_view spec) {
  if (spec.empty())
    throw DomainError("empty word spec");
  if (spec.front() == '{') {
    try {
      return json::parse(spec);
    } catch (const json::exception &e) {
      throw DomainError(std::string("invalid JSON descriptor: ") + e.what());
    }
  }
  if (spec.front() == '@') {
    std::ifstream in{std::string(spec.substr(1))};
    if (!in)
      throw DomainError("cannot open descriptor file '" + std::string(spec.substr(1)) + "'");
    try {
      return json::parse(in);
    } catch (const json::exception &e) {
      throw DomainError(std::string("invalid JSON descriptor: ") + e.what());
    }
  }
  auto colon = spec.find(':');
  std::string head(spec.substr(0, colon));
  std::string rest = colon == std::string_view::npos ? "" : std::string(spec.substr(colon + 1));
  if (colon == std::string_view::npos && head != "tower")
    return json{{"kind", "named"}, {"name", head}};
  if (head == "periodic")
    return json{{"kind", "periodic"}, {"word", rest}};
  if (head == "word") {
    auto parts = detail::split(rest, ':');
    if (parts.size() != 2)
      throw DomainError("expected word:<head>:<period>");
    return json{{"kind", "ultimately-periodic"}, {"head", parts[0]}, {"period", parts[1]}};
  }
  if (head == "fixed-point")
    return json{{"kind", "fixed-point"}, {"w", rest}};
  if (head == "sturmian") {
    std::vector<std::size_t> cf;
    for (const auto &p : detail::split(rest, ','))
      cf.push_back(detail::to_size(p));
    return json{{"kind", "sturmian"}, {"cf", cf}};
  }
  if (head == "random") {
    auto parts = detail::split(rest, ':');
    json j{{"kind", "random"}, {"seed", detail::to_size(parts[0])}};
    if (parts.size() > 1)
      j["alphabet"] = detail::to_size(parts[1]);
    return j;
  }
  if (head == "file") {
    auto parts = detail::split(rest, ':');
    json j{{"kind", "file"}, {"path", parts[0]}};
    if (parts.size() > 1)
      j["alphabet"] = parts[1];
    return j;
  }
  if (head == "integrate") {
    auto parts = detail::split(rest, ':', 2);
    if (parts.size() != 2)
      throw DomainError("expected integrate:<w>:<inner spec>");
    return json{{"kind", "integrate"}, {"w", parts[0]}, {"of", parse_stream_spec(parts[1])}};
  }
  if (head == "tower") {
    json j{{"kind", "tower"}, {"phi", json::object()}, {"default_phi", 1}};
    if (rest.empty())
      j["phi"]["3"] = 2;
    for (const auto &entry : rest.empty() ? std::vector<std::string>{} : detail::split(rest, ',')) {
      auto kv = detail::split(entry, '=');
      if (kv.size() != 2)
        throw DomainError("expected tower:<length>=<phi>,...");
      j["phi"][kv[0]] = detail::to_size(kv[1]);
    }
    return j;
  }
  throw DomainError("unknown word spec '" + std::string(spec) + "'");
}

inline WordStream make_stream(std::string_view spec) { return stream_from_descriptor(parse_stream_spec(spec)); }

} // namespace qw
