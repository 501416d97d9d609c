#pragma once

#include <algorithm>
#include <cstddef>
#include <map>
#include <optional>
#include <set>
#include <tuple>
#include <utility>
#include <vector>

#include "icisres/errors.hpp"
#include "icisres/matrix.hpp"
#include "icisres/monomial.hpp"
#include "icisres/polynomial.hpp"
#include "icisres/series.hpp"

namespace icisres {

// Truncation policy shared by every computation in the local ring.
struct EngineSettings {
  unsigned initial_cap = 12;
  unsigned cap_step = 4;
  unsigned max_cap = 40;
  std::size_t attempts = 64;  // random coordinate draws for good coordinates
};

// Negative-degree reverse lexicographic order, optionally after relabelling
// the variables: variable i is treated as variable permutation[i].
struct LocalOrder {
  std::vector<std::size_t> permutation;
  bool is_identity() const {
    for (std::size_t i = 0; i < permutation.size(); ++i)
      if (permutation[i] != i) return false;
    return true;
  }
};

// Standard basis of an ideal of the local ring at the origin, computed
// modulo m^{cap+1}.
//
// Every stored generator g satisfies g = sum_j cofactors[k][j] * input[j]
// modulo m^{cap+1} (cofactors are only filled when tracking was requested).
// `staircase` holds the minimal generators of the leading ideal; the
// monomials outside it span the quotient.
struct StandardBasis {
  std::size_t nvars = 0;
  std::vector<Polynomial> input;
  std::vector<Polynomial> generators;
  std::vector<std::vector<Polynomial>> cofactors;
  std::vector<Monomial> staircase;
  LocalOrder order;
  unsigned cap = 0;
  bool certified = false;
  // When set, cofactors are only kept on monomials dividing this one.
  std::optional<Monomial> cofactor_box;

  // True when every variable has a pure power among the leading monomials.
  bool bounded() const {
    std::vector<bool> seen(nvars, false);
    for (const auto& m : staircase) {
      if (m.is_one()) return true;
      int v = m.pure_power_variable();
      if (v >= 0) seen[static_cast<std::size_t>(v)] = true;
    }
    return std::all_of(seen.begin(), seen.end(), [](bool b) { return b; });
  }

  bool is_unit_ideal() const {
    return std::any_of(staircase.begin(), staircase.end(), [](const Monomial& m) { return m.is_one(); });
  }
};

struct LiftCertificate {
  Polynomial target;
  std::vector<TruncatedSeries> coefficients;
  unsigned cap = 0;

  // target - sum_j coefficients[j] * gens[j] has no monomial of degree <= cap.
  bool holds(const std::vector<Polynomial>& gens) const {
    if (gens.size() != coefficients.size()) return false;
    Polynomial r = target.truncated(cap);
    for (std::size_t j = 0; j < gens.size(); ++j) r -= Polynomial::multiply(coefficients[j].poly, gens[j], cap);
    return r.is_zero();
  }
};

// Zero-dimensional quotient O/I with its monomial basis and the matrices of
// multiplication by each variable (column c holds the coordinates of
// z_i * basis[c]).
struct QuotientAlgebra {
  std::vector<Monomial> basis;
  std::vector<RationalMatrix> mult;
  StandardBasis ideal;

  std::size_t dim() const { return basis.size(); }
};

namespace detail {

inline Monomial permute_monomial(const Monomial& m, const std::vector<std::size_t>& perm, bool inverse) {
  Monomial out(m.size());
  for (std::size_t i = 0; i < m.size(); ++i) {
    if (inverse)
      out.set(i, m[perm[i]]);
    else
      out.set(perm[i], m[i]);
  }
  return out;
}

inline Polynomial permute(const Polynomial& p, const LocalOrder& order, bool inverse = false) {
  if (order.permutation.empty()) return p;
  std::vector<Term> terms;
  for (const auto& t : p.terms()) terms.push_back({permute_monomial(t.mono, order.permutation, inverse), t.coef});
  return Polynomial::from_terms(p.nvars(), std::move(terms));
}

struct Element {
  Polynomial poly;
  std::vector<Polynomial> cof;  // empty when not tracking
};

using WorkMap = std::map<Monomial, Rational, LocalGreater>;

// Reduces `e` by `basis` modulo m^{cap+1}. With `full` every term is reduced,
// otherwise only leading terms. Cofactors are updated when tracked.
inline Polynomial cofactor_product(const Polynomial& a, const Polynomial& b, unsigned cap, const Monomial* box) {
  return box ? multiply_in_box(a, b, *box) : Polynomial::multiply(a, b, cap);
}

inline Element reduce(const Element& e, const std::vector<const Element*>& basis, unsigned cap, bool full,
                      const Monomial* box = nullptr) {
  const std::size_t nvars = e.poly.nvars();
  WorkMap work;
  for (const auto& t : e.poly.terms()) {
    if (t.mono.degree() > cap) break;
    work.emplace(t.mono, t.coef);
  }
  std::vector<WorkMap> quotients(basis.size());
  std::vector<Term> remainder;
  while (!work.empty()) {
    auto it = work.begin();
    const Monomial mono = it->first;
    const Rational coef = it->second;
    const Element* divisor = nullptr;
    std::size_t index = 0;
    for (std::size_t k = 0; k < basis.size(); ++k) {
      if (basis[k]->poly.leading_monomial().divides(mono)) {
        divisor = basis[k];
        index = k;
        break;
      }
    }
    if (divisor == nullptr) {
      if (!full) break;
      remainder.push_back({mono, coef});
      work.erase(it);
      continue;
    }
    const Term& lead = divisor->poly.leading_term();
    const Monomial shift = mono / lead.mono;
    const Rational factor = coef / lead.coef;
    work.erase(it);
    bool first = true;
    for (const auto& t : divisor->poly.terms()) {
      if (first) {
        first = false;
        continue;
      }
      if (t.mono.degree() + shift.degree() > cap) break;
      Monomial m = t.mono * shift;
      auto [w, inserted] = work.try_emplace(m, -(factor * t.coef));
      if (!inserted) {
        w->second -= factor * t.coef;
        if (w->second == 0) work.erase(w);
      }
    }
    if (!e.cof.empty()) {
      auto [q, inserted] = quotients[index].try_emplace(shift, factor);
      if (!inserted) q->second += factor;
    }
  }
  Element out;
  for (const auto& [m, c] : work) remainder.push_back({m, c});
  out.poly = Polynomial::from_terms(nvars, std::move(remainder));
  if (!e.cof.empty()) {
    out.cof = e.cof;
    for (std::size_t k = 0; k < basis.size(); ++k) {
      if (quotients[k].empty()) continue;
      Polynomial q = Polynomial::from_sorted_map(nvars, quotients[k]);
      for (std::size_t j = 0; j < out.cof.size(); ++j)
        out.cof[j] -= cofactor_product(q, basis[k]->cof[j], cap, box);
    }
  }
  return out;
}

inline void make_monic(Element& e) {
  if (e.poly.is_zero()) return;
  Rational inv = 1 / e.poly.leading_term().coef;
  if (inv == 1) return;
  e.poly *= inv;
  for (auto& c : e.cof) c *= inv;
}

inline Element shifted(const Element& e, const Monomial& m, unsigned cap, const Monomial* box) {
  Element out;
  out.poly = e.poly.scaled_shift(m, Rational(1), cap);
  for (const auto& c : e.cof)
    out.cof.push_back(box ? multiply_in_box(c, Polynomial::monomial(m), *box) : c.scaled_shift(m, Rational(1), cap));
  return out;
}

inline Element difference(const Element& a, const Element& b) {
  Element out;
  out.poly = a.poly - b.poly;
  for (std::size_t j = 0; j < a.cof.size(); ++j) out.cof.push_back(a.cof[j] - b.cof[j]);
  return out;
}

// One Buchberger-style completion in the local order, with every polynomial
// truncated above `cap`. Because the ideal of interest contains m^{cap+1},
// the truncated reduction terminates and yields standard representations
// with unit multiplier 1.
inline StandardBasis compute_at_cap(const std::vector<Polynomial>& gens, const LocalOrder& order, unsigned cap,
                                    bool track, const std::optional<Monomial>& cofactor_box = std::nullopt) {
  if (gens.empty()) throw Error("standard_basis: empty generator list");
  const std::size_t nvars = gens.front().nvars();
  for (const auto& g : gens)
    if (g.nvars() != nvars) throw VariableCountMismatch(g.nvars(), nvars);
  if (!order.permutation.empty() && order.permutation.size() != nvars)
    throw Error("standard_basis: permutation length does not match the variable count");

  std::optional<Monomial> internal_box;
  if (cofactor_box)
    internal_box = order.permutation.empty() ? *cofactor_box : permute_monomial(*cofactor_box, order.permutation, false);
  const Monomial* box = internal_box ? &*internal_box : nullptr;

  std::vector<Element> elements;
  elements.reserve(64);
  std::set<std::pair<std::size_t, std::size_t>> pending;

  auto alive_basis = [&]() {
    std::vector<const Element*> b;
    for (const auto& e : elements) b.push_back(&e);
    return b;
  };

  auto add = [&](Element e) {
    make_monic(e);
    const std::size_t k = elements.size();
    for (std::size_t i = 0; i < k; ++i) pending.emplace(i, k);
    elements.push_back(std::move(e));
  };

  for (std::size_t j = 0; j < gens.size(); ++j) {
    Element e;
    e.poly = permute(gens[j], order).truncated(cap);
    if (track) {
      e.cof.assign(gens.size(), Polynomial(nvars));
      e.cof[j] = Polynomial::constant(nvars, 1);
    }
    Element r = reduce(e, alive_basis(), cap, false, box);
    if (!r.poly.is_zero()) add(std::move(r));
  }

  auto pair_key = [&](const std::pair<std::size_t, std::size_t>& p) {
    Monomial l = elements[p.first].poly.leading_monomial().lcm(elements[p.second].poly.leading_monomial());
    return std::make_tuple(l.degree(), p.second, p.first);
  };

  while (!pending.empty()) {
    auto best = pending.begin();
    auto best_key = pair_key(*best);
    for (auto it = std::next(pending.begin()); it != pending.end(); ++it) {
      auto key = pair_key(*it);
      if (key < best_key) {
        best = it;
        best_key = key;
      }
    }
    const auto [i, j] = *best;
    pending.erase(best);
    const Monomial& li = elements[i].poly.leading_monomial();
    const Monomial& lj = elements[j].poly.leading_monomial();
    const Monomial l = li.lcm(lj);
    if (l.degree() > cap) continue;
    if (li.coprime(lj)) continue;
    bool chain = false;
    for (std::size_t k = 0; k < elements.size() && !chain; ++k) {
      if (k == i || k == j) continue;
      if (!elements[k].poly.leading_monomial().divides(l)) continue;
      auto key_ik = std::minmax(i, k);
      auto key_jk = std::minmax(j, k);
      if (!pending.count({key_ik.first, key_ik.second}) && !pending.count({key_jk.first, key_jk.second}))
        chain = true;
    }
    if (chain) continue;
    Element s = difference(shifted(elements[i], l / li, cap, box), shifted(elements[j], l / lj, cap, box));
    Element r = reduce(s, alive_basis(), cap, false, box);
    if (!r.poly.is_zero()) add(std::move(r));
  }

  // Minimal basis: drop elements whose leading monomial is a multiple of
  // another one's (first occurrence wins for equal leading monomials).
  std::vector<std::size_t> keep;
  for (std::size_t a = 0; a < elements.size(); ++a) {
    const Monomial& la = elements[a].poly.leading_monomial();
    bool redundant = false;
    for (std::size_t b = 0; b < elements.size() && !redundant; ++b) {
      if (a == b) continue;
      const Monomial& lb = elements[b].poly.leading_monomial();
      if (lb.divides(la) && (!(lb == la) || b < a)) redundant = true;
    }
    if (!redundant) keep.push_back(a);
  }
  std::sort(keep.begin(), keep.end(), [&](std::size_t a, std::size_t b) {
    return local_greater(elements[a].poly.leading_monomial(), elements[b].poly.leading_monomial());
  });
  std::vector<Element> minimal;
  for (auto k : keep) minimal.push_back(elements[k]);

  // Tail reduction against the other minimal elements.
  for (std::size_t a = 0; a < minimal.size(); ++a) {
    std::vector<const Element*> others;
    for (std::size_t b = 0; b < minimal.size(); ++b)
      if (b != a) others.push_back(&minimal[b]);
    Term lead = minimal[a].poly.leading_term();
    Element tail = minimal[a];
    tail.poly -= Polynomial::monomial(lead.mono, lead.coef);
    Element reduced_tail = reduce(tail, others, cap, true, box);
    Element result;
    result.poly = reduced_tail.poly + Polynomial::monomial(lead.mono, lead.coef);
    result.cof = std::move(reduced_tail.cof);
    minimal[a] = std::move(result);
  }

  StandardBasis sb;
  sb.nvars = nvars;
  sb.input = gens;
  sb.order = order;
  sb.cap = cap;
  if (track) sb.cofactor_box = cofactor_box;
  for (auto& e : minimal) {
    const Monomial& lm = e.poly.leading_monomial();
    sb.staircase.push_back(order.permutation.empty() ? lm : permute_monomial(lm, order.permutation, true));
    sb.generators.push_back(permute(e.poly, order, true));
    if (track) {
      std::vector<Polynomial> cof;
      for (auto& c : e.cof) cof.push_back(permute(c, order, true));
      sb.cofactors.push_back(std::move(cof));
    }
  }
  return sb;
}

inline std::vector<Element> internal_elements(const StandardBasis& sb) {
  std::vector<Element> out;
  for (std::size_t k = 0; k < sb.generators.size(); ++k) {
    Element e;
    e.poly = permute(sb.generators[k], sb.order);
    if (!sb.cofactors.empty())
      for (const auto& c : sb.cofactors[k]) e.cof.push_back(permute(c, sb.order));
    out.push_back(std::move(e));
  }
  return out;
}

// Every monomial of total degree `degree` lies in the leading ideal.
inline bool layer_covered(const StandardBasis& sb, unsigned degree) {
  std::vector<unsigned> e(sb.nvars, 0);
  bool covered = true;
  auto rec = [&](auto&& self, std::size_t i, unsigned left) -> void {
    if (!covered) return;
    if (i + 1 == sb.nvars) {
      e[i] = left;
      Monomial m = Monomial::from_exponents(e);
      bool in = std::any_of(sb.staircase.begin(), sb.staircase.end(),
                            [&](const Monomial& g) { return g.divides(m); });
      if (!in) covered = false;
      return;
    }
    for (unsigned k = 0; k <= left; ++k) {
      e[i] = k;
      self(self, i + 1, left - k);
    }
  };
  if (sb.nvars == 0) return true;
  rec(rec, 0, degree);
  return covered;
}

}  // namespace detail

// Standard basis with cap escalation: start at `cap`, recompute at cap + step
// until two consecutive runs give the same staircase and the staircase is
// either closed below the cap (finite colength) or missing a pure power
// (infinite colength). Throws CapExceeded beyond settings.max_cap.
inline StandardBasis standard_basis(const std::vector<Polynomial>& gens, const LocalOrder& order, unsigned cap,
                                    const EngineSettings& settings = {}) {
  unsigned k = std::max(cap, 1U);
  StandardBasis prev = detail::compute_at_cap(gens, order, k, false);
  while (true) {
    if (k + settings.cap_step > settings.max_cap) throw CapExceeded(settings.max_cap);
    StandardBasis next = detail::compute_at_cap(gens, order, k + settings.cap_step, false);
    if (next.staircase == prev.staircase) {
      if (!prev.bounded() || detail::layer_covered(prev, k)) {
        prev.certified = true;
        return prev;
      }
    }
    prev = std::move(next);
    k += settings.cap_step;
  }
}

inline StandardBasis standard_basis(const std::vector<Polynomial>& gens, const EngineSettings& settings = {}) {
  return standard_basis(gens, LocalOrder{}, settings.initial_cap, settings);
}

// Standard basis at exactly `cap`, with cofactor tracking, no escalation.
// With a box, cofactors are exact only on the monomials dividing it.
inline StandardBasis standard_basis_tracked(const std::vector<Polynomial>& gens, unsigned cap,
                                            const LocalOrder& order = {},
                                            const std::optional<Monomial>& cofactor_box = std::nullopt) {
  return detail::compute_at_cap(gens, order, cap, true, cofactor_box);
}

// Monomials outside the leading ideal, largest first in the local order.
// Requires a bounded staircase.
inline std::vector<Monomial> staircase_basis(const StandardBasis& sb) {
  if (!sb.bounded()) throw NotZeroDimensional("quotient is not finite-dimensional");
  if (sb.is_unit_ideal()) return {};
  auto in_ideal = [&](const Monomial& m) {
    return std::any_of(sb.staircase.begin(), sb.staircase.end(), [&](const Monomial& g) { return g.divides(m); });
  };
  std::set<Monomial, LocalGreater> seen;
  std::vector<Monomial> frontier{Monomial(sb.nvars)};
  seen.insert(frontier.front());
  while (!frontier.empty()) {
    std::vector<Monomial> next;
    for (const auto& m : frontier) {
      for (std::size_t i = 0; i < sb.nvars; ++i) {
        Monomial up = m * Monomial::variable(sb.nvars, i);
        if (in_ideal(up) || seen.count(up)) continue;
        seen.insert(up);
        next.push_back(up);
      }
    }
    frontier = std::move(next);
  }
  return {seen.begin(), seen.end()};
}

// Number of monomials outside the leading ideal; nullopt means infinite.
inline std::optional<std::size_t> colength(const StandardBasis& sb) {
  if (!sb.bounded()) return std::nullopt;
  return staircase_basis(sb).size();
}

inline unsigned max_staircase_degree(const StandardBasis& sb) {
  unsigned d = 0;
  for (const auto& m : staircase_basis(sb)) d = std::max(d, m.degree());
  return d;
}

// Fully reduced normal form modulo m^{cap+1}; support lies outside the
// leading ideal.
inline TruncatedSeries normal_form(const Polynomial& p, const StandardBasis& sb) {
  if (p.nvars() != sb.nvars) throw VariableCountMismatch(p.nvars(), sb.nvars);
  auto elements = detail::internal_elements(sb);
  std::vector<const detail::Element*> basis;
  for (auto& e : elements) {
    e.cof.clear();
    basis.push_back(&e);
  }
  detail::Element start{detail::permute(p, sb.order), {}};
  auto r = detail::reduce(start, basis, sb.cap, true);
  return {detail::permute(r.poly, sb.order, true), sb.cap};
}

inline bool is_member(const Polynomial& p, const StandardBasis& sb) { return normal_form(p, sb).is_zero(); }

namespace detail {

// Lift of `target` through a tracked standard basis; remainder must vanish.
inline std::optional<LiftCertificate> lift_with(const Polynomial& target, const StandardBasis& tracked) {
  auto elements = internal_elements(tracked);
  std::vector<const Element*> basis;
  for (auto& e : elements) basis.push_back(&e);
  Element start;
  start.poly = permute(target, tracked.order);
  // Track target - sum a_j g_j: start with a = 0 and negate at the end.
  start.cof.assign(tracked.input.size(), Polynomial(tracked.nvars));
  std::optional<Monomial> box;
  if (tracked.cofactor_box)
    box = tracked.order.permutation.empty() ? *tracked.cofactor_box
                                             : permute_monomial(*tracked.cofactor_box, tracked.order.permutation, false);
  Element r = reduce(start, basis, tracked.cap, true, box ? &*box : nullptr);
  if (!r.poly.is_zero()) return std::nullopt;
  LiftCertificate cert;
  cert.target = target;
  cert.cap = tracked.cap;
  for (auto& c : r.cof) cert.coefficients.emplace_back(permute(-c, tracked.order, true), tracked.cap);
  return cert;
}

}  // namespace detail

// Expresses target = sum_j a_j gens_j modulo m^{cap+1}.
inline LiftCertificate lift(const Polynomial& target, const std::vector<Polynomial>& gens, unsigned cap,
                            const EngineSettings& settings = {}) {
  StandardBasis sb = standard_basis(gens, settings);
  if (!is_member(target, sb)) throw NotMember("lift: target is not in the ideal");
  StandardBasis tracked = standard_basis_tracked(gens, cap);
  auto cert = detail::lift_with(target, tracked);
  if (!cert) throw NotMember("lift: target is not in the ideal modulo the cap");
  return *cert;
}

struct PowerMembership {
  unsigned power = 0;
  LiftCertificate certificate;
};

// Smallest d <= max_d with z_var^d in the ideal, with its lift.
inline PowerMembership minimal_power_membership(std::size_t var, const std::vector<Polynomial>& gens, unsigned max_d,
                                                const EngineSettings& settings = {}) {
  if (gens.empty()) throw Error("minimal_power_membership: empty generator list");
  const std::size_t n = gens.front().nvars();
  if (var >= n) throw IndexOutOfRange("minimal_power_membership: variable index out of range");
  StandardBasis sb = standard_basis(gens, settings);
  if (!sb.bounded()) throw NotZeroDimensional("ideal is not zero-dimensional");
  for (unsigned d = 1; d <= max_d; ++d) {
    Polynomial power = Polynomial::monomial(Monomial::variable(n, var, d));
    if (!is_member(power, sb)) continue;
    StandardBasis tracked = standard_basis_tracked(gens, std::max(sb.cap, d));
    auto cert = detail::lift_with(power, tracked);
    if (!cert) throw NotMember("minimal_power_membership: lift failed at the certified cap");
    return {d, *cert};
  }
  throw PowerCapExceeded("no power of the variable up to max_d lies in the ideal");
}

// Coordinates of the class of p in the staircase basis.
inline std::vector<Rational> coordinates(const QuotientAlgebra& q, const Polynomial& p) {
  TruncatedSeries r = normal_form(p, q.ideal);
  std::vector<Rational> v(q.basis.size());
  for (std::size_t i = 0; i < q.basis.size(); ++i) v[i] = r.poly.coefficient(q.basis[i]);
  return v;
}

inline Polynomial element(const QuotientAlgebra& q, const std::vector<Rational>& v) {
  std::vector<Term> terms;
  for (std::size_t i = 0; i < q.basis.size(); ++i)
    if (v[i] != 0) terms.push_back({q.basis[i], v[i]});
  return Polynomial::from_terms(q.ideal.nvars, std::move(terms));
}

// Matrix of multiplication by p on the staircase basis.
inline RationalMatrix multiplication_matrix(const QuotientAlgebra& q, const Polynomial& p) {
  RationalMatrix m(q.dim(), q.dim());
  for (std::size_t c = 0; c < q.dim(); ++c) {
    auto v = coordinates(q, p * Polynomial::monomial(q.basis[c]));
    for (std::size_t r = 0; r < q.dim(); ++r) m(r, c) = v[r];
  }
  return m;
}

inline QuotientAlgebra quotient_algebra(const StandardBasis& sb) {
  if (!sb.bounded()) throw NotZeroDimensional("quotient is not finite-dimensional");
  QuotientAlgebra q;
  q.ideal = sb;
  q.basis = staircase_basis(sb);
  for (std::size_t i = 0; i < sb.nvars; ++i)
    q.mult.push_back(multiplication_matrix(q, Polynomial::variable(sb.nvars, i)));
  return q;
}

// Regularity of (g1, g2) on the surface V = {f = 0}: the local ring of V is
// Cohen-Macaulay, so this is finite colength of (f, g1, g2).
inline bool is_regular_on_V(const std::vector<Polynomial>& f, const Polynomial& g1, const Polynomial& g2,
                            const EngineSettings& settings = {}) {
  if (g1.is_zero() || g2.is_zero()) return false;
  std::vector<Polynomial> gens = f;
  gens.push_back(g1);
  gens.push_back(g2);
  return colength(standard_basis(gens, settings)).has_value();
}

}  // namespace icisres
