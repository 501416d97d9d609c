#pragma once

#include <algorithm>

#include "icisres/polynomial.hpp"

namespace icisres {

// Finite surrogate for an element of the local ring: every monomial of total
// degree <= cap is exact, everything above is unknown and not stored.
struct TruncatedSeries {
  Polynomial poly;
  unsigned cap = 0;

  TruncatedSeries() = default;
  TruncatedSeries(Polynomial p, unsigned k) : poly(p.truncated(k)), cap(k) {}

  bool is_zero() const { return poly.is_zero(); }

  friend TruncatedSeries operator+(const TruncatedSeries& a, const TruncatedSeries& b) {
    unsigned k = std::min(a.cap, b.cap);
    return {a.poly.truncated(k) + b.poly.truncated(k), k};
  }
  friend TruncatedSeries operator-(const TruncatedSeries& a, const TruncatedSeries& b) {
    unsigned k = std::min(a.cap, b.cap);
    return {a.poly.truncated(k) - b.poly.truncated(k), k};
  }
  friend TruncatedSeries operator*(const TruncatedSeries& a, const TruncatedSeries& b) {
    unsigned k = std::min(a.cap, b.cap);
    return {Polynomial::multiply(a.poly, b.poly, k), k};
  }
  friend bool operator==(const TruncatedSeries& a, const TruncatedSeries& b) {
    return a.cap == b.cap && a.poly == b.poly;
  }
};

}  // namespace icisres
