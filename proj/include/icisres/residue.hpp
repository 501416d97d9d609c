#pragma once

#include <algorithm>
#include <cstddef>
#include <optional>
#include <vector>

#include "icisres/errors.hpp"
#include "icisres/polynomial.hpp"
#include "icisres/standard_basis.hpp"

namespace icisres {

// Coefficient of z^(d-1) in h: the residue of h over monomial denominators.
inline Rational monomial_residue(const Polynomial& h, const std::vector<unsigned>& d) {
  if (d.size() != h.nvars()) throw VariableCountMismatch(d.size(), h.nvars());
  Monomial target(h.nvars());
  for (std::size_t i = 0; i < d.size(); ++i) {
    if (d[i] == 0) throw Error("monomial_residue: exponents must be positive");
    target.set(i, d[i] - 1);
  }
  return h.coefficient(target);
}

struct ResidueSymbol {
  Polynomial numerator;
  std::vector<Polynomial> denominators;
};

// Residue together with the data of its transformation-law reduction.
struct ResidueValue {
  Rational value;
  unsigned cap = 0;               // truncation degree of the lifts
  std::vector<unsigned> powers;   // z_i^{powers[i]} lies in the denominator ideal
};

namespace detail {

inline Polynomial box_determinant(const std::vector<std::vector<Polynomial>>& a, const Monomial& box,
                                  std::size_t nvars) {
  const std::size_t n = a.size();
  if (n == 0) return Polynomial::constant(nvars, 1);
  if (n == 1) return a[0][0];
  Polynomial det(nvars);
  for (std::size_t c = 0; c < n; ++c) {
    if (a[0][c].is_zero()) continue;
    std::vector<std::vector<Polynomial>> minor;
    for (std::size_t r = 1; r < n; ++r) {
      std::vector<Polynomial> row;
      for (std::size_t k = 0; k < n; ++k)
        if (k != c) row.push_back(a[r][k]);
      minor.push_back(std::move(row));
    }
    Polynomial term = multiply_in_box(a[0][c], box_determinant(minor, box, nvars), box);
    if (c % 2) det -= term;
    else det += term;
  }
  return det;
}

inline void check_symbol(const ResidueSymbol& sym) {
  const std::size_t n = sym.numerator.nvars();
  if (sym.denominators.size() != n)
    throw InvalidProblem("residue symbol needs as many denominators as variables");
  for (const auto& g : sym.denominators)
    if (g.nvars() != n) throw VariableCountMismatch(g.nvars(), n);
}

inline Rational residue_at_cap(const Polynomial& h, const std::vector<Polynomial>& dens,
                               const std::vector<unsigned>& powers, unsigned cap, const LocalOrder& order) {
  const std::size_t n = h.nvars();
  Monomial box(n);
  for (std::size_t i = 0; i < n; ++i) box.set(i, powers[i] - 1);
  StandardBasis tracked = standard_basis_tracked(dens, cap, order, box);
  std::vector<std::vector<Polynomial>> a(n);
  for (std::size_t i = 0; i < n; ++i) {
    auto cert = lift_with(Polynomial::monomial(Monomial::variable(n, i, powers[i])), tracked);
    if (!cert) throw CapExceeded(cap);
    for (const auto& c : cert->coefficients) a[i].push_back(c.poly.restricted_to_divisors(box));
  }
  Polynomial det = box_determinant(a, box, n);
  Rational value = 0;
  for (const auto& t : h.terms())
    if (t.mono.divides(box)) value += t.coef * det.coefficient(box / t.mono);
  return value;
}

}  // namespace detail

// Grothendieck residue res[h / g_1 ... g_n] via z_i^{d_i} = sum_j a_ij g_j and
// res[h / g] = res[h det(a) / z^d]. The lifts are exact up to the cap; with
// m^s inside the ideal, an error in m^{cap+1} changes det(a) only in degree
// > cap - s, so cap = sum(d_i - 1) + s suffices. The value is recomputed at
// cap + step and must agree.
inline ResidueValue grothendieck_residue_detailed(const ResidueSymbol& sym, const EngineSettings& settings = {},
                                                  const LocalOrder& order = {}) {
  detail::check_symbol(sym);
  const std::size_t n = sym.numerator.nvars();
  StandardBasis sb = standard_basis(sym.denominators, settings);
  if (!sb.bounded()) throw NotRegularSequence("denominators do not have finite colength");
  ResidueValue out;
  out.cap = sb.cap;
  if (sb.is_unit_ideal() || sym.numerator.is_zero()) {
    out.value = 0;
    return out;
  }
  const unsigned s = max_staircase_degree(sb) + 1;
  unsigned box_degree = 0;
  for (std::size_t i = 0; i < n; ++i) {
    unsigned d = 1;
    while (!is_member(Polynomial::monomial(Monomial::variable(n, i, d)), sb)) ++d;
    out.powers.push_back(d);
    box_degree += d - 1;
  }
  const unsigned cap = box_degree + s;
  if (cap + settings.cap_step > settings.max_cap) throw CapExceeded(settings.max_cap);
  Rational v = detail::residue_at_cap(sym.numerator, sym.denominators, out.powers, cap, order);
  Rational w = detail::residue_at_cap(sym.numerator, sym.denominators, out.powers, cap + settings.cap_step, order);
  if (v != w) throw CapExceeded(cap + settings.cap_step);
  out.value = v;
  out.cap = cap;
  return out;
}

inline Rational grothendieck_residue(const ResidueSymbol& sym, const EngineSettings& settings = {}) {
  return grothendieck_residue_detailed(sym, settings).value;
}

// ---------------------------------------------------------------------------
// Differential forms with polynomial coefficients, in the basis dz_I of
// ascending index tuples I (lexicographic order).

inline std::vector<std::vector<std::size_t>> form_basis(std::size_t n, std::size_t degree) {
  std::vector<std::vector<std::size_t>> out;
  if (degree > n) return out;
  std::vector<std::size_t> idx(degree);
  for (std::size_t i = 0; i < degree; ++i) idx[i] = i;
  while (true) {
    out.push_back(idx);
    std::size_t k = degree;
    while (k > 0 && idx[k - 1] == n - degree + k - 1) --k;
    if (k == 0) break;
    ++idx[k - 1];
    for (std::size_t j = k; j < degree; ++j) idx[j] = idx[j - 1] + 1;
  }
  return out;
}

inline std::size_t form_basis_index(std::size_t n, const std::vector<std::size_t>& tuple) {
  auto basis = form_basis(n, tuple.size());
  auto it = std::find(basis.begin(), basis.end(), tuple);
  if (it == basis.end()) throw IndexOutOfRange("not an ascending index tuple");
  return static_cast<std::size_t>(it - basis.begin());
}

struct Form {
  std::size_t nvars = 0;
  std::size_t degree = 0;
  std::vector<Polynomial> coefficients;  // indexed like form_basis(nvars, degree)

  static Form zero(std::size_t n, std::size_t degree) {
    Form f;
    f.nvars = n;
    f.degree = degree;
    f.coefficients.assign(form_basis(n, degree).size(), Polynomial(n));
    return f;
  }
  // h dz_I for one ascending tuple I.
  static Form basic(std::size_t n, const std::vector<std::size_t>& tuple, const Polynomial& h) {
    Form f = zero(n, tuple.size());
    f.coefficients[form_basis_index(n, tuple)] = h;
    return f;
  }
  bool is_zero() const {
    return std::all_of(coefficients.begin(), coefficients.end(), [](const Polynomial& p) { return p.is_zero(); });
  }
  friend bool operator==(const Form& a, const Form& b) {
    return a.nvars == b.nvars && a.degree == b.degree && a.coefficients == b.coefficients;
  }
};

// Sign of the permutation sorting the concatenation of two disjoint tuples;
// 0 when they overlap.
inline int shuffle_sign(const std::vector<std::size_t>& a, const std::vector<std::size_t>& b) {
  int inversions = 0;
  for (auto i : a)
    for (auto j : b) {
      if (i == j) return 0;
      if (i > j) ++inversions;
    }
  return inversions % 2 ? -1 : 1;
}

inline Form wedge(const Form& a, const Form& b) {
  if (a.nvars != b.nvars) throw VariableCountMismatch(a.nvars, b.nvars);
  const std::size_t n = a.nvars;
  Form out = Form::zero(n, a.degree + b.degree);
  if (a.degree + b.degree > n) return out;
  auto ba = form_basis(n, a.degree), bb = form_basis(n, b.degree);
  for (std::size_t i = 0; i < ba.size(); ++i) {
    if (a.coefficients[i].is_zero()) continue;
    for (std::size_t j = 0; j < bb.size(); ++j) {
      if (b.coefficients[j].is_zero()) continue;
      int sign = shuffle_sign(ba[i], bb[j]);
      if (sign == 0) continue;
      std::vector<std::size_t> u = ba[i];
      u.insert(u.end(), bb[j].begin(), bb[j].end());
      std::sort(u.begin(), u.end());
      Polynomial prod = a.coefficients[i] * b.coefficients[j];
      auto& slot = out.coefficients[form_basis_index(n, u)];
      if (sign > 0) slot += prod;
      else slot -= prod;
    }
  }
  return out;
}

// dg as a 1-form.
inline Form exterior_derivative(const Polynomial& g) {
  Form f = Form::zero(g.nvars(), 1);
  for (std::size_t i = 0; i < g.nvars(); ++i) f.coefficients[i] = diff(g, i);
  return f;
}

// dg_1 ^ ... ^ dg_k: the coefficient on dz_I is the Jacobian minor on columns I.
inline Form differential_wedge(const std::vector<Polynomial>& g, std::size_t nvars) {
  for (const auto& p : g)
    if (p.nvars() != nvars) throw VariableCountMismatch(p.nvars(), nvars);
  Form f = Form::zero(nvars, g.size());
  auto basis = form_basis(nvars, g.size());
  for (std::size_t b = 0; b < basis.size(); ++b) {
    PolyMatrix m(g.size(), g.size(), nvars);
    for (std::size_t r = 0; r < g.size(); ++r)
      for (std::size_t c = 0; c < g.size(); ++c) m(r, c) = diff(g[r], basis[b][c]);
    f.coefficients[b] = determinant(m, nvars);
  }
  return f;
}

// The h with h dz_1 ^ ... ^ dz_n = eta ^ df_1 ^ ... ^ df_q.
inline Polynomial lambda_map(const Form& eta, const std::vector<Polynomial>& f) {
  const std::size_t n = eta.nvars;
  if (eta.degree + f.size() != n) throw InvalidProblem("lambda_map: form degree plus germ length must equal n");
  Form top = wedge(eta, differential_wedge(f, n));
  return top.coefficients.front();
}

struct RelativeResidueSymbol {
  Form form;
  std::vector<Polynomial> denominators;  // g_1 .. g_{n-q}
  std::vector<Polynomial> germ;          // f_1 .. f_q
};

// res_V[eta / g] = res[lambda(eta) / g_1 .. g_{n-q} f_1 .. f_q].
inline ResidueValue relative_residue_detailed(const RelativeResidueSymbol& sym, const EngineSettings& settings = {}) {
  if (sym.denominators.size() != sym.form.degree)
    throw InvalidProblem("relative residue: need one denominator per form degree");
  ResidueSymbol abs{lambda_map(sym.form, sym.germ), sym.denominators};
  abs.denominators.insert(abs.denominators.end(), sym.germ.begin(), sym.germ.end());
  return grothendieck_residue_detailed(abs, settings);
}

inline Rational relative_residue(const RelativeResidueSymbol& sym, const EngineSettings& settings = {}) {
  return relative_residue_detailed(sym, settings).value;
}

struct IntersectionMultiplicity {
  std::size_t lhs = 0;  // colength of (f, g)
  Rational rhs;         // res_V[dg_1 ^ ... ^ dg_{n-q} / g_1 ... g_{n-q}]
};

inline IntersectionMultiplicity intersection_multiplicity_both_ways(const std::vector<Polynomial>& f,
                                                                    const std::vector<Polynomial>& g,
                                                                    const EngineSettings& settings = {}) {
  if (g.empty()) throw InvalidProblem("intersection multiplicity needs at least one g");
  const std::size_t n = g.front().nvars();
  std::vector<Polynomial> all = f;
  all.insert(all.end(), g.begin(), g.end());
  auto len = colength(standard_basis(all, settings));
  if (!len) throw NotRegularSequence("(f, g) does not have finite colength");
  IntersectionMultiplicity out;
  out.lhs = *len;
  out.rhs = relative_residue({differential_wedge(g, n), g, f}, settings);
  return out;
}

}  // namespace icisres
