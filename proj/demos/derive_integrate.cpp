// Derives a word along one of its quasiperiods and integrates it back.
#include <iostream>

#include "qw/qw.hpp"

int main() {
  using namespace qw;
  Alphabet ab = Alphabet::letters(2);
  Word v = parse_word(corpus::paper_example_1, ab);
  Word q = parse_word("aba", ab);

  Derivative d = derive(v, q);
  std::cout << "word        " << render(v, ab) << '\n'
            << "quasiperiod " << render(q, ab) << '\n'
            << "derivative  " << render_numeric(d.word, q.size()) << '\n';

  // Each letter expands to the gap before the next occurrence; the last
  // occurrence closes the word.
  Word back = integrate(q, d.word) + q;
  std::cout << "integral    " << render(back, ab) << '\n'
            << (back.prefix(v.size()) == v ? "round trip ok" : "round trip MISMATCH") << '\n';
  return back.prefix(v.size()) == v ? 0 : 1;
}
