#pragma once

#include <string>
#include <vector>

#include "icisres/germ.hpp"
#include "icisres/random.hpp"

namespace icisres {

struct CorpusEntry {
  std::string name;
  GermProblem problem;
};

inline GermProblem a1_germ_dz() {
  auto x = Polynomial::variable(3, 0), y = Polynomial::variable(3, 1), z = Polynomial::variable(3, 2);
  return {3, {x * x + y * y + z * z}, {Polynomial(3), Polynomial(3), Polynomial::constant(3, 1)}, 1};
}

// omega = x^k dx + y^l dy on the plane.
inline GermProblem smooth_diagonal(unsigned k, unsigned l) {
  return {2,
          {},
          {Polynomial::monomial(Monomial::variable(2, 0, k)), Polynomial::monomial(Monomial::variable(2, 1, l))},
          1};
}

// f = x^2 + y^3 + z^5 with a constant form; seed 0 means dx + dy + dz,
// otherwise the coefficients are drawn from the seed in [-3, 3] \ {0}.
inline GermProblem e8_germ(std::uint64_t seed) {
  auto x = Polynomial::variable(3, 0), y = Polynomial::variable(3, 1);
  GermProblem p{3, {x * x + y * y * y + Polynomial::monomial(Monomial{0, 0, 5})}, {}, seed == 0 ? 1 : seed};
  Rng rng(seed);
  for (int i = 0; i < 3; ++i) p.omega.push_back(Polynomial::constant(3, seed == 0 ? 1 : rng.nonzero(3)));
  return p;
}

inline std::vector<CorpusEntry> builtin_corpus() {
  return {{"A1/dz", a1_germ_dz()},
          {"diagonal(1,1)", smooth_diagonal(1, 1)},
          {"diagonal(2,3)", smooth_diagonal(2, 3)},
          {"diagonal(3,3)", smooth_diagonal(3, 3)},
          {"E8/dx+dy+dz", e8_germ(0)},
          {"E8/generic-seed-2", e8_germ(2)},
          {"E8/generic-seed-3", e8_germ(3)}};
}

}  // namespace icisres
