// Prints the two sequences that pin liminf f = 0 and limsup f = 1 at the
// origin for the piecewise-linear map on the rational cone.

#include <cstdio>

#include "subadd/cone.hpp"

int main() {
  using namespace subadd::cone;
  const GeneratorTable table = make_generators(20, 5);

  std::printf("%3s %6s %10s %24s %24s\n", "n", "P", "q_n", "p_n", "f(p_n)");
  for (const auto& row : limsup_sequence(table, 20)) {
    const auto& g = table.generator(base(row.index));
    std::printf("%3u %6u %10s %24.17g %24.17g%s\n", row.index, g.prime, table.q(row.index).str().c_str(),
                static_cast<double>(row.x.mid()), static_cast<double>(row.fx.mid()), row.certified ? "" : "  ?");
  }

  const auto tail = liminf_sequence(table, 600);
  for (unsigned k : {1u, 10u, 100u, 600u}) {
    std::printf("x_%u = f(x_%u) = %.6g\n", k, k, static_cast<double>(tail[k - 1].fx.mid()));
  }
  return 0;
}
