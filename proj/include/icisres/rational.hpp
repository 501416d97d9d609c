#pragma once

#include <gmpxx.h>

#include <string>

namespace icisres {

// Exact rational numbers. All arithmetic in the library happens here; there
// is no floating-point path.
using Rational = mpq_class;
using Integer = mpz_class;

// Canonical "p/q" (or "p" when q = 1) rendering.
inline std::string to_string(const Rational& r) {
  Rational c(r);
  c.canonicalize();
  return c.get_str();
}

inline Rational make_rational(long num, long den = 1) {
  Rational r(num, den);
  r.canonicalize();
  return r;
}

}  // namespace icisres
