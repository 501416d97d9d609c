#pragma once

#include <cstddef>
#include <cstdint>
#include <limits>
#include <random>
#include <string_view>
#include <vector>

#include "icisres/matrix.hpp"
#include "icisres/monomial.hpp"
#include "icisres/polynomial.hpp"

namespace icisres {

// Seeded generator with platform-independent bounded draws (the standard
// distributions are implementation-defined, the engine is not).
class Rng {
 public:
  explicit Rng(std::uint64_t seed) : engine_(seed) {}

  // Uniform integer in [lo, hi].
  long uniform(long lo, long hi) {
    const std::uint64_t span = static_cast<std::uint64_t>(hi - lo) + 1;
    const std::uint64_t limit = std::numeric_limits<std::uint64_t>::max() - std::numeric_limits<std::uint64_t>::max() % span;
    std::uint64_t x;
    do {
      x = engine_();
    } while (x >= limit);
    return lo + static_cast<long>(x % span);
  }

  // Nonzero integer in [-bound, bound].
  long nonzero(long bound) {
    long v = uniform(1, bound);
    return uniform(0, 1) ? v : -v;
  }

  std::uint64_t next() { return engine_(); }

 private:
  std::mt19937_64 engine_;
};

inline std::uint64_t fnv1a(std::string_view text) {
  std::uint64_t h = 0xcbf29ce484222325ULL;
  for (unsigned char ch : text) {
    h ^= ch;
    h *= 0x100000001b3ULL;
  }
  return h;
}

inline std::uint64_t splitmix64(std::uint64_t x) {
  x += 0x9e3779b97f4a7c15ULL;
  x = (x ^ (x >> 30)) * 0xbf58476d1ce4e5b9ULL;
  x = (x ^ (x >> 27)) * 0x94d049bb133111ebULL;
  return x ^ (x >> 31);
}

// Support of at most `max_terms` distinct monomials with degrees in
// [min_degree, max_degree], coefficients in {-bound..bound} \ {0}.
inline Polynomial random_polynomial(Rng& rng, std::size_t nvars, unsigned min_degree, unsigned max_degree,
                                    std::size_t max_terms = 6, long bound = 3) {
  std::vector<Monomial> pool;
  for (const auto& m : monomials_up_to(nvars, max_degree))
    if (m.degree() >= min_degree) pool.push_back(m);
  const std::size_t count = static_cast<std::size_t>(rng.uniform(1, static_cast<long>(std::min(max_terms, pool.size()))));
  std::vector<Term> terms;
  for (std::size_t k = 0; k < count; ++k) {
    std::size_t pick = static_cast<std::size_t>(rng.uniform(0, static_cast<long>(pool.size() - 1)));
    terms.push_back({pool[pick], Rational(rng.nonzero(bound))});
    pool.erase(pool.begin() + static_cast<std::ptrdiff_t>(pick));
  }
  return Polynomial::from_terms(nvars, std::move(terms));
}

inline Rational random_rational(Rng& rng, long bound = 3, long max_den = 3) {
  Rational r(rng.uniform(-bound, bound), rng.uniform(1, max_den));
  r.canonicalize();
  return r;
}

inline RationalMatrix random_rational_matrix(Rng& rng, std::size_t rows, std::size_t cols, long bound = 3,
                                             long max_den = 3) {
  RationalMatrix m(rows, cols);
  for (std::size_t r = 0; r < rows; ++r)
    for (std::size_t c = 0; c < cols; ++c) m(r, c) = random_rational(rng, bound, max_den);
  return m;
}

// Integer matrix with entries in [-bound, bound] and nonzero determinant.
inline RationalMatrix random_invertible_integer_matrix(Rng& rng, std::size_t n, long bound = 3) {
  while (true) {
    RationalMatrix m(n, n);
    for (std::size_t r = 0; r < n; ++r)
      for (std::size_t c = 0; c < n; ++c) m(r, c) = rng.uniform(-bound, bound);
    if (determinant(m) != 0) return m;
  }
}

}  // namespace icisres
