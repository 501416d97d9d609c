#pragma once

#include <algorithm>
#include <cstddef>
#include <limits>
#include <map>
#include <span>
#include <string>
#include <utility>
#include <vector>

#include "icisres/errors.hpp"
#include "icisres/monomial.hpp"
#include "icisres/rational.hpp"

namespace icisres {

struct Term {
  Monomial mono;
  Rational coef;
};

// Sparse multivariate polynomial with exact rational coefficients.
//
// Terms are kept sorted from largest to smallest in the local order, so the
// first term is the leading term used by the standard-basis engine and the
// last term leads for the graded order used by exact division. No stored
// coefficient is zero.
class Polynomial {
 public:
  Polynomial() = default;
  explicit Polynomial(std::size_t nvars) : nvars_(nvars) {
    if (nvars > kMaxVars) throw IndexOutOfRange("at most 8 variables are supported");
  }

  static Polynomial constant(std::size_t nvars, const Rational& c) {
    Polynomial p(nvars);
    if (c != 0) p.terms_.push_back({Monomial(nvars), c});
    return p;
  }

  static Polynomial variable(std::size_t nvars, std::size_t index) {
    if (index >= nvars) throw IndexOutOfRange("variable index out of range");
    Polynomial p(nvars);
    p.terms_.push_back({Monomial::variable(nvars, index), Rational(1)});
    return p;
  }

  static Polynomial monomial(const Monomial& m, const Rational& c = Rational(1)) {
    Polynomial p(m.size());
    if (c != 0) p.terms_.push_back({m, c});
    return p;
  }

  // Sorts, merges equal monomials and drops zeros.
  static Polynomial from_terms(std::size_t nvars, std::vector<Term> terms) {
    Polynomial p(nvars);
    std::sort(terms.begin(), terms.end(),
              [](const Term& a, const Term& b) { return local_greater(a.mono, b.mono); });
    for (auto& t : terms) {
      if (t.mono.size() != nvars) throw VariableCountMismatch(t.mono.size(), nvars);
      if (!p.terms_.empty() && p.terms_.back().mono == t.mono) {
        p.terms_.back().coef += t.coef;
        if (p.terms_.back().coef == 0) p.terms_.pop_back();
      } else if (t.coef != 0) {
        p.terms_.push_back(std::move(t));
      }
    }
    return p;
  }

  template <class Map>
  static Polynomial from_sorted_map(std::size_t nvars, const Map& m) {
    Polynomial p(nvars);
    p.terms_.reserve(m.size());
    for (const auto& [mono, c] : m)
      if (c != 0) p.terms_.push_back({mono, c});
    return p;
  }

  std::size_t nvars() const { return nvars_; }
  bool is_zero() const { return terms_.empty(); }
  std::size_t size() const { return terms_.size(); }
  std::span<const Term> terms() const { return terms_; }

  // Leading term in the local order (lowest degree).
  const Term& leading_term() const { return terms_.front(); }
  const Monomial& leading_monomial() const { return terms_.front().mono; }

  // Highest total degree present, -1 for the zero polynomial.
  int total_degree() const { return terms_.empty() ? -1 : static_cast<int>(terms_.back().mono.degree()); }

  // Lowest total degree present (the order at the origin); max int for zero.
  int order() const {
    return terms_.empty() ? std::numeric_limits<int>::max() : static_cast<int>(terms_.front().mono.degree());
  }

  Rational coefficient(const Monomial& m) const {
    auto it = std::lower_bound(terms_.begin(), terms_.end(), m,
                               [](const Term& t, const Monomial& x) { return local_greater(t.mono, x); });
    if (it != terms_.end() && it->mono == m) return it->coef;
    return Rational(0);
  }

  Rational constant_term() const { return coefficient(Monomial(nvars_)); }
  bool is_unit() const { return constant_term() != 0; }
  bool is_constant() const { return terms_.empty() || (terms_.size() == 1 && terms_.front().mono.is_one()); }

  // Drops every term of total degree > cap.
  Polynomial truncated(unsigned cap) const {
    Polynomial p(nvars_);
    for (const auto& t : terms_) {
      if (t.mono.degree() > cap) break;
      p.terms_.push_back(t);
    }
    return p;
  }

  // Keeps only the terms whose monomial divides `box`.
  Polynomial restricted_to_divisors(const Monomial& box) const {
    Polynomial p(nvars_);
    for (const auto& t : terms_)
      if (t.mono.divides(box)) p.terms_.push_back(t);
    return p;
  }

  Polynomial operator-() const {
    Polynomial p(*this);
    for (auto& t : p.terms_) t.coef = -t.coef;
    return p;
  }

  Polynomial& operator+=(const Polynomial& o) { return *this = combine(*this, o, false); }
  Polynomial& operator-=(const Polynomial& o) { return *this = combine(*this, o, true); }
  Polynomial& operator*=(const Polynomial& o) { return *this = multiply(*this, o); }
  Polynomial& operator*=(const Rational& c) {
    if (c == 0) {
      terms_.clear();
      return *this;
    }
    for (auto& t : terms_) t.coef *= c;
    return *this;
  }

  friend Polynomial operator+(const Polynomial& a, const Polynomial& b) { return combine(a, b, false); }
  friend Polynomial operator-(const Polynomial& a, const Polynomial& b) { return combine(a, b, true); }
  friend Polynomial operator*(const Polynomial& a, const Polynomial& b) { return multiply(a, b); }
  friend Polynomial operator*(const Rational& c, Polynomial p) { return p *= c; }
  friend Polynomial operator*(Polynomial p, const Rational& c) { return p *= c; }

  friend bool operator==(const Polynomial& a, const Polynomial& b) {
    if (a.nvars_ != b.nvars_ || a.terms_.size() != b.terms_.size()) return false;
    for (std::size_t i = 0; i < a.terms_.size(); ++i)
      if (!(a.terms_[i].mono == b.terms_[i].mono) || a.terms_[i].coef != b.terms_[i].coef) return false;
    return true;
  }

  // c * m * this, dropping terms above `cap`.
  Polynomial scaled_shift(const Monomial& m, const Rational& c,
                          unsigned cap = std::numeric_limits<unsigned>::max()) const {
    Polynomial p(nvars_);
    if (c == 0) return p;
    p.terms_.reserve(terms_.size());
    for (const auto& t : terms_) {
      if (t.mono.degree() + m.degree() > cap) break;
      p.terms_.push_back({t.mono * m, t.coef * c});
    }
    return p;  // multiplication by a monomial preserves the local order
  }

  // Product truncated at `cap` (terms of degree > cap dropped).
  static Polynomial multiply(const Polynomial& a, const Polynomial& b,
                             unsigned cap = std::numeric_limits<unsigned>::max()) {
    check(a, b);
    if (a.is_zero() || b.is_zero()) return Polynomial(a.nvars_);
    if (a.size() == 1) return b.scaled_shift(a.terms_[0].mono, a.terms_[0].coef, cap);
    if (b.size() == 1) return a.scaled_shift(b.terms_[0].mono, b.terms_[0].coef, cap);
    std::map<Monomial, Rational, LocalGreater> acc;
    for (const auto& s : a.terms_) {
      for (const auto& t : b.terms_) {
        if (s.mono.degree() + t.mono.degree() > cap) break;
        auto [it, inserted] = acc.try_emplace(s.mono * t.mono, s.coef * t.coef);
        if (!inserted) it->second += s.coef * t.coef;
      }
    }
    return from_sorted_map(a.nvars_, acc);
  }

 private:
  static void check(const Polynomial& a, const Polynomial& b) {
    if (a.nvars_ != b.nvars_) throw VariableCountMismatch(a.nvars_, b.nvars_);
  }

  static Polynomial combine(const Polynomial& a, const Polynomial& b, bool subtract) {
    check(a, b);
    Polynomial p(a.nvars_);
    p.terms_.reserve(a.terms_.size() + b.terms_.size());
    std::size_t i = 0, j = 0;
    while (i < a.terms_.size() || j < b.terms_.size()) {
      if (j == b.terms_.size() || (i < a.terms_.size() && local_greater(a.terms_[i].mono, b.terms_[j].mono))) {
        p.terms_.push_back(a.terms_[i++]);
      } else if (i == a.terms_.size() || local_greater(b.terms_[j].mono, a.terms_[i].mono)) {
        p.terms_.push_back(b.terms_[j++]);
        if (subtract) p.terms_.back().coef = -p.terms_.back().coef;
      } else {
        Rational c = subtract ? Rational(a.terms_[i].coef - b.terms_[j].coef)
                              : Rational(a.terms_[i].coef + b.terms_[j].coef);
        if (c != 0) p.terms_.push_back({a.terms_[i].mono, std::move(c)});
        ++i;
        ++j;
      }
    }
    return p;
  }

  std::size_t nvars_ = 0;
  std::vector<Term> terms_;
};

// Product restricted to the monomials dividing `box`.
inline Polynomial multiply_in_box(const Polynomial& a, const Polynomial& b, const Monomial& box) {
  std::map<Monomial, Rational, LocalGreater> acc;
  for (const auto& s : a.terms()) {
    if (!s.mono.divides(box)) continue;
    for (const auto& t : b.terms()) {
      Monomial m = s.mono * t.mono;
      if (!m.divides(box)) continue;
      auto [it, inserted] = acc.try_emplace(m, s.coef * t.coef);
      if (!inserted) it->second += s.coef * t.coef;
    }
  }
  return Polynomial::from_sorted_map(a.nvars(), acc);
}

enum class PolyOp { add, sub, mul };

inline Polynomial poly_op(const Polynomial& a, const Polynomial& b, PolyOp kind) {
  switch (kind) {
    case PolyOp::add:
      return a + b;
    case PolyOp::sub:
      return a - b;
    case PolyOp::mul:
      return a * b;
  }
  return a;
}

inline Rational coefficient_of(const Polynomial& p, const Monomial& m) {
  if (p.nvars() != m.size()) throw VariableCountMismatch(p.nvars(), m.size());
  return p.coefficient(m);
}

inline Polynomial diff(const Polynomial& p, std::size_t var) {
  if (var >= p.nvars()) throw IndexOutOfRange("diff: variable index out of range");
  std::vector<Term> out;
  for (const auto& t : p.terms()) {
    unsigned e = t.mono[var];
    if (e == 0) continue;
    Monomial m = t.mono;
    m.set(var, e - 1);
    out.push_back({m, t.coef * e});
  }
  return Polynomial::from_terms(p.nvars(), std::move(out));
}

inline Polynomial pow(const Polynomial& p, unsigned k,
                      unsigned cap = std::numeric_limits<unsigned>::max()) {
  Polynomial result = Polynomial::constant(p.nvars(), 1);
  Polynomial base = p.truncated(cap);
  while (k > 0) {
    if (k & 1U) result = Polynomial::multiply(result, base, cap);
    k >>= 1U;
    if (k > 0) base = Polynomial::multiply(base, base, cap);
  }
  return result;
}

// p(images[0], ..., images[n-1]). The images may live in a different ring
// (all must share one variable count).
inline Polynomial substitute(const Polynomial& p, std::span<const Polynomial> images) {
  if (images.size() != p.nvars()) throw VariableCountMismatch(images.size(), p.nvars());
  std::size_t target = images.empty() ? 0 : images[0].nvars();
  for (const auto& im : images)
    if (im.nvars() != target) throw VariableCountMismatch(im.nvars(), target);
  // powers[i][e] = images[i]^e, filled lazily
  std::vector<std::vector<Polynomial>> powers(images.size());
  auto power = [&](std::size_t i, unsigned e) -> const Polynomial& {
    auto& cache = powers[i];
    if (cache.empty()) cache.push_back(Polynomial::constant(target, 1));
    while (cache.size() <= e) cache.push_back(cache.back() * images[i]);
    return cache[e];
  };
  Polynomial result(target);
  for (const auto& t : p.terms()) {
    Polynomial term = Polynomial::constant(target, t.coef);
    for (std::size_t i = 0; i < images.size(); ++i)
      if (t.mono[i] > 0) term = term * power(i, t.mono[i]);
    result += term;
  }
  return result;
}

// Exact quotient a / b. Throws Error when b does not divide a.
inline Polynomial exact_divide(const Polynomial& a, const Polynomial& b) {
  if (a.nvars() != b.nvars()) throw VariableCountMismatch(a.nvars(), b.nvars());
  if (b.is_zero()) throw Error("exact_divide: division by zero");
  // The last stored term leads for a graded (degree-compatible) global order,
  // which makes ordinary division terminate.
  const Term& lead = b.terms().back();
  Polynomial rem = a;
  std::vector<Term> quotient;
  while (!rem.is_zero()) {
    const Term& t = rem.terms().back();
    if (!lead.mono.divides(t.mono)) throw Error("exact_divide: not divisible");
    Monomial m = t.mono / lead.mono;
    Rational c = t.coef / lead.coef;
    quotient.push_back({m, c});
    rem -= b.scaled_shift(m, c);
  }
  return Polynomial::from_terms(a.nvars(), std::move(quotient));
}

inline std::vector<std::string> default_variable_names(std::size_t n) {
  static const char* small[] = {"x", "y", "z", "w"};
  std::vector<std::string> names;
  for (std::size_t i = 0; i < n; ++i)
    names.push_back(n <= 4 ? std::string(small[i]) : "z" + std::to_string(i + 1));
  return names;
}

// Canonical text form, e.g. "2*x^2*y - 1/3*z": terms by descending total
// degree, ties in lexicographic order of the exponent vectors.
inline std::string to_string(const Polynomial& p, const std::vector<std::string>& names) {
  if (p.is_zero()) return "0";
  std::vector<const Term*> order;
  for (const auto& t : p.terms()) order.push_back(&t);
  std::sort(order.begin(), order.end(), [](const Term* a, const Term* b) {
    if (a->mono.degree() != b->mono.degree()) return a->mono.degree() > b->mono.degree();
    for (std::size_t i = 0; i < a->mono.size(); ++i)
      if (a->mono[i] != b->mono[i]) return a->mono[i] > b->mono[i];
    return false;
  });
  std::string out;
  bool first = true;
  for (const Term* t : order) {
    Rational c = t->coef;
    bool negative = c < 0;
    if (negative) c = -c;
    if (first) {
      if (negative) out += "-";
    } else {
      out += negative ? " - " : " + ";
    }
    first = false;
    std::string mono;
    for (std::size_t i = 0; i < t->mono.size(); ++i) {
      unsigned e = t->mono[i];
      if (e == 0) continue;
      if (!mono.empty()) mono += "*";
      mono += names.at(i);
      if (e > 1) mono += "^" + std::to_string(e);
    }
    if (mono.empty()) {
      out += to_string(c);
    } else if (c == 1) {
      out += mono;
    } else {
      out += to_string(c) + "*" + mono;
    }
  }
  return out;
}

inline std::string to_string(const Polynomial& p) { return to_string(p, default_variable_names(p.nvars())); }

}  // namespace icisres
