// Lists the bursts of a characteristic Sturmian word and whether each
// left-special prefix l_n covers the word.
#include <cstdlib>
#include <iostream>

#include "qw/qw.hpp"

int main(int argc, char **argv) {
  using namespace qw;
  std::vector<std::size_t> cf;
  for (int i = 1; i < argc; ++i)
    cf.push_back(std::strtoul(argv[i], nullptr, 10));
  if (cf.empty())
    cf = {1};
  auto rep = verify_sturmian_quasiperiods(characteristic_word(SturmianSpec{cf}), 200);
  for (const auto &c : rep.checks)
    std::cout << "n=" << c.burst.order << " loops " << c.burst.short_loop << '/' << c.burst.long_loop
              << (c.eligible ? "" : " (small n)") << (c.covered ? " quasiperiod" : " not a quasiperiod") << '\n';
  std::cout << rep.quasiperiod_lengths.size() << " quasiperiod lengths, " << (rep.ok ? "ok" : "FAILED") << '\n';
  return rep.ok ? 0 : 1;
}
