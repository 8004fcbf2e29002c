#pragma once

// Alphabets and finite words over a small integer alphabet.
//
// Letters are plain unsigned integers in [0, alphabet size). Printable
// symbols only appear at I/O boundaries through Alphabet::display.

#include <algorithm>
#include <cstddef>
#include <cstdint>
#include <functional>
#include <initializer_list>
#include <span>
#include <string>
#include <string_view>
#include <vector>

#include "qw/error.hpp"

namespace qw {

using Letter = std::uint32_t;

class Alphabet {
public:
  Alphabet() = default;

  /// Alphabet of `size` letters with an optional display string; display[i]
  /// is the printable symbol for letter i. An empty display means letters
  /// are rendered as decimal integers.
  explicit Alphabet(std::size_t size, std::string display = {})
      : size_(size), display_(std::move(display)) {
    if (size_ == 0)
      throw DomainError("alphabet must contain at least one letter");
    if (!display_.empty()) {
      if (display_.size() != size_)
        throw DomainError("display map must name every letter exactly once");
      std::string sorted = display_;
      std::sort(sorted.begin(), sorted.end());
      if (std::adjacent_find(sorted.begin(), sorted.end()) != sorted.end())
        throw DomainError("display map must be injective");
    }
  }

  /// {0, 1, ..., k-1} rendered as decimal digits (k <= 10).
  static Alphabet digits(std::size_t k) {
    if (k > 10)
      return Alphabet(k);
    return Alphabet(k, std::string("0123456789").substr(0, k));
  }

  /// {a, b, c, ...} with k letters (k <= 26).
  static Alphabet letters(std::size_t k) {
    if (k == 0 || k > 26)
      throw DomainError("letter alphabet size must be in [1, 26]");
    return Alphabet(k, std::string("abcdefghijklmnopqrstuvwxyz").substr(0, k));
  }

  std::size_t size() const noexcept { return size_; }
  bool has_display() const noexcept { return !display_.empty(); }
  const std::string &display() const noexcept { return display_; }

  bool contains(Letter l) const noexcept { return l < size_; }

  char symbol(Letter l) const {
    if (!has_display() || l >= size_)
      throw DomainError("letter " + std::to_string(l) + " has no display symbol");
    return display_[l];
  }

  Letter letter(char c) const {
    auto pos = display_.find(c);
    if (pos == std::string::npos)
      throw DomainError(std::string("symbol '") + c + "' is not in the alphabet");
    return static_cast<Letter>(pos);
  }

  /// Number of bits needed to write one letter at fixed width (at least 1).
  unsigned bits_per_letter() const noexcept {
    unsigned bits = 1;
    while ((std::size_t{1} << bits) < size_)
      ++bits;
    return bits;
  }

  friend bool operator==(const Alphabet &, const Alphabet &) = default;

private:
  std::size_t size_ = 1;
  std::string display_;
};

/// Immutable-by-convention finite sequence of letters.
class Word {
public:
  using value_type = Letter;
  using const_iterator = std::vector<Letter>::const_iterator;

  Word() = default;
  Word(std::initializer_list<Letter> letters) : letters_(letters) {}
  explicit Word(std::vector<Letter> letters) : letters_(std::move(letters)) {}
  explicit Word(std::span<const Letter> letters)
      : letters_(letters.begin(), letters.end()) {}

  std::size_t size() const noexcept { return letters_.size(); }
  bool empty() const noexcept { return letters_.empty(); }
  Letter operator[](std::size_t i) const { return letters_[i]; }
  const_iterator begin() const noexcept { return letters_.begin(); }
  const_iterator end() const noexcept { return letters_.end(); }
  std::span<const Letter> span() const noexcept { return letters_; }
  const std::vector<Letter> &letters() const noexcept { return letters_; }

  /// x_{i->j}, inclusive on both ends.
  Word factor(std::size_t i, std::size_t j) const {
    if (i > j || j >= size())
      throw DomainError("factor bounds out of range");
    return Word(std::span<const Letter>(letters_).subspan(i, j - i + 1));
  }

  /// Factor of length `len` starting at `pos`.
  Word slice(std::size_t pos, std::size_t len) const {
    if (pos > size() || len > size() - pos)
      throw DomainError("slice out of range");
    return Word(std::span<const Letter>(letters_).subspan(pos, len));
  }

  Word prefix(std::size_t len) const { return slice(0, len); }
  Word suffix(std::size_t len) const { return slice(size() - len, len); }

  bool has_prefix(std::span<const Letter> p) const noexcept {
    return p.size() <= size() && std::equal(p.begin(), p.end(), letters_.begin());
  }
  bool has_prefix(const Word &p) const noexcept { return has_prefix(p.span()); }

  /// True iff `w` occurs at `pos` (w must fit).
  bool occurs_at(const Word &w, std::size_t pos) const noexcept {
    return pos <= size() && w.size() <= size() - pos &&
           std::equal(w.begin(), w.end(), letters_.begin() + static_cast<std::ptrdiff_t>(pos));
  }

  Letter max_letter() const noexcept {
    return letters_.empty() ? 0 : *std::max_element(letters_.begin(), letters_.end());
  }

  Word &operator+=(const Word &rhs) {
    letters_.insert(letters_.end(), rhs.begin(), rhs.end());
    return *this;
  }
  friend Word operator+(Word lhs, const Word &rhs) { return lhs += rhs; }

  void push_back(Letter l) { letters_.push_back(l); }
  void reserve(std::size_t n) { letters_.reserve(n); }

  friend bool operator==(const Word &, const Word &) = default;
  friend auto operator<=>(const Word &a, const Word &b) { return a.letters_ <=> b.letters_; }

private:
  std::vector<Letter> letters_;
};

inline Word repeat(const Word &w, std::size_t times) {
  Word out;
  out.reserve(w.size() * times);
  for (std::size_t i = 0; i < times; ++i)
    out += w;
  return out;
}

/// Parses text using an alphabet's display map. Whitespace is skipped.
inline Word parse_word(std::string_view text, const Alphabet &alphabet) {
  Word w;
  w.reserve(text.size());
  for (char c : text) {
    if (c == ' ' || c == '\n' || c == '\r' || c == '\t')
      continue;
    w.push_back(alphabet.letter(c));
  }
  return w;
}

/// Smallest conventional alphabet able to display `text`: decimal digits
/// when every symbol is a digit, lowercase letters otherwise.
inline Alphabet infer_alphabet(std::string_view text) {
  bool digits = true, lower = true;
  char hi = 0;
  for (char c : text) {
    if (c == ' ' || c == '\n' || c == '\r' || c == '\t')
      continue;
    digits = digits && c >= '0' && c <= '9';
    lower = lower && c >= 'a' && c <= 'z';
    hi = std::max(hi, c);
  }
  if (hi == 0)
    throw DomainError("cannot infer an alphabet from empty text");
  if (digits)
    return Alphabet::digits(static_cast<std::size_t>(hi - '0') + 1);
  if (lower)
    return Alphabet::letters(static_cast<std::size_t>(hi - 'a') + 1);
  throw DomainError("text mixes symbol classes; give an explicit alphabet");
}

/// Parses with an inferred alphabet.
inline Word parse_word(std::string_view text) { return parse_word(text, infer_alphabet(text)); }

/// Renders via the display map, or comma-separated integers without one.
inline std::string render(const Word &w, const Alphabet &alphabet) {
  std::string out;
  if (alphabet.has_display()) {
    out.reserve(w.size());
    for (Letter l : w)
      out.push_back(alphabet.symbol(l));
    return out;
  }
  for (std::size_t i = 0; i < w.size(); ++i) {
    if (i)
      out.push_back(',');
    out += std::to_string(w[i]);
  }
  return out;
}

/// Decimal digits when every letter is < 10, comma-separated integers otherwise.
inline std::string render_numeric(const Word &w, std::size_t alphabet_size) {
  return render(w, alphabet_size <= 10 ? Alphabet::digits(std::max<std::size_t>(alphabet_size, 1))
                                       : Alphabet(alphabet_size));
}

inline bool fits(const Word &w, const Alphabet &alphabet) noexcept {
  return std::all_of(w.begin(), w.end(), [&](Letter l) { return alphabet.contains(l); });
}

} // namespace qw

template <> struct std::hash<qw::Word> {
  std::size_t operator()(const qw::Word &w) const noexcept {
    std::size_t h = 1469598103934665603ull;
    for (auto l : w) {
      h ^= l;
      h *= 1099511628211ull;
    }
    return h;
  }
};
