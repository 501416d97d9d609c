#pragma once

#include <cstddef>
#include <map>
#include <string>
#include <vector>

#include "icisres/germ.hpp"
#include "icisres/matrix.hpp"
#include "icisres/standard_basis.hpp"

namespace icisres {

// Elements annihilated by every variable: the common kernel of the
// multiplication matrices.
inline std::vector<std::vector<Rational>> socle(const QuotientAlgebra& q) {
  const std::size_t d = q.dim();
  if (q.mult.empty()) {
    std::vector<std::vector<Rational>> all;
    for (std::size_t i = 0; i < d; ++i) {
      std::vector<Rational> e(d);
      e[i] = 1;
      all.push_back(e);
    }
    return all;
  }
  RationalMatrix stacked(d * q.mult.size(), d);
  for (std::size_t k = 0; k < q.mult.size(); ++k)
    for (std::size_t r = 0; r < d; ++r)
      for (std::size_t c = 0; c < d; ++c) stacked(k * d + r, c) = q.mult[k](r, c);
  return kernel(stacked);
}

struct GramBeta {
  std::vector<Monomial> basis;  // staircase basis of A
  RationalMatrix gram;
  std::size_t rank = 0;
};

// beta(u, v) = L(u v) on the staircase basis of A = O / J, for a problem
// already in good coordinates.
inline GramBeta gram_beta_in(const GermProblem& good, const EngineSettings& settings = {}) {
  GramBeta out;
  out.basis = staircase_basis(standard_basis(ideal_J(good), settings));
  const std::size_t d = out.basis.size();
  out.gram = RationalMatrix(d, d);
  std::map<Monomial, Rational, LocalGreater> cache;
  auto value = [&](const Monomial& m) {
    auto it = cache.find(m);
    if (it != cache.end()) return it->second;
    Rational r = residue_form(good, Polynomial::monomial(m), settings);
    cache.emplace(m, r);
    return r;
  };
  for (std::size_t i = 0; i < d; ++i)
    for (std::size_t j = i; j < d; ++j) out.gram(i, j) = out.gram(j, i) = value(out.basis[i] * out.basis[j]);
  out.rank = rank(out.gram);
  return out;
}

inline GramBeta gram_beta(const GermProblem& p, const EngineSettings& settings = {}) {
  return gram_beta_in(find_good_coordinates(p, settings).problem, settings);
}

struct AlgebraC {
  QuotientAlgebra B;                          // O / (f, m_1, m_2)
  RationalMatrix df_mult;                     // multiplication by DF on B
  std::vector<std::vector<Rational>> ann;     // basis of ann_B(DF)
  std::size_t dimB = 0;
  std::size_t dimC = 0;                       // rank of df_mult
};

inline AlgebraC algebra_C(const GermProblem& good, const EngineSettings& settings = {}) {
  auto ms = minors(good);
  std::vector<Polynomial> gens = good.f;
  gens.push_back(ms.principal[0]);
  gens.push_back(ms.principal[1]);
  AlgebraC out;
  out.B = quotient_algebra(standard_basis(gens, settings));
  out.df_mult = multiplication_matrix(out.B, DF(good));
  out.ann = kernel(out.df_mult);
  out.dimB = out.B.dim();
  out.dimC = rank(out.df_mult);
  return out;
}

struct PairingReport {
  std::size_t dimA = 0;
  std::size_t dimB = 0;
  std::size_t dimC = 0;
  std::size_t rank_beta = 0;
  std::size_t socA_dim = 0;
  bool sigma_in_socC = false;  // sigma nonzero in C and killed there by every variable
  bool bound_holds = false;    // dim soc A <= dimA - dimC + 1
  bool sigma_pairing_vanishes = false;  // L(g sigma) = 0 for basis monomials g with g(0) = 0
  RationalMatrix gram;
  std::vector<Monomial> basis;
  GoodCoordinates coordinates;
  std::vector<std::string> discrepancies;
};

inline PairingReport pairing_report(const GermProblem& p, const EngineSettings& settings = {},
                                    bool force_random = false, std::uint64_t stream = 0) {
  PairingReport r;
  r.coordinates = find_good_coordinates(p, settings, force_random, stream);
  const GermProblem& good = r.coordinates.problem;

  auto gb = gram_beta_in(good, settings);
  r.basis = gb.basis;
  r.gram = gb.gram;
  r.rank_beta = gb.rank;
  r.dimA = gb.basis.size();
  r.socA_dim = r.dimA == 0 ? 0 : socle(quotient_algebra(standard_basis(ideal_J(good), settings))).size();

  auto c = algebra_C(good, settings);
  r.dimB = c.dimB;
  r.dimC = c.dimC;

  const Polynomial sigma = sigma_data(good).sigma;
  const Polynomial df = DF(good);
  auto is_zero_in_B = [&](const Polynomial& h) {
    for (const auto& x : coordinates(c.B, h))
      if (x != 0) return false;
    return true;
  };
  bool nonzero = c.dimB > 0 && !is_zero_in_B(df * sigma);
  bool killed = true;
  for (std::size_t i = 0; i < good.n && killed; ++i)
    killed = is_zero_in_B(df * Polynomial::variable(good.n, i) * sigma);
  r.sigma_in_socC = nonzero && killed;

  r.sigma_pairing_vanishes = true;
  for (const auto& g : r.basis) {
    if (g.is_one()) continue;
    if (residue_form(good, Polynomial::monomial(g) * sigma, settings) != 0) r.sigma_pairing_vanishes = false;
  }

  r.bound_holds = r.socA_dim + r.dimC <= r.dimA + 1;

  if (r.rank_beta != r.dimC)
    r.discrepancies.push_back("rank of beta (" + std::to_string(r.rank_beta) + ") differs from dim C (" +
                              std::to_string(r.dimC) + ")");
  if (r.dimA > 0 && !r.sigma_in_socC) r.discrepancies.push_back("sigma is not a nonzero socle element of C");
  if (!r.bound_holds) r.discrepancies.push_back("socle bound dim soc A <= dim A - dim C + 1 fails");
  if (!r.sigma_pairing_vanishes) r.discrepancies.push_back("L(g sigma) is nonzero for some g in the maximal ideal");
  if (!(r.gram == r.gram.transposed())) r.discrepancies.push_back("gram matrix is not symmetric");
  return r;
}

// dim C computed in a randomly drawn good coordinate system.
inline std::size_t dimC_in_random_coordinates(const GermProblem& p, std::uint64_t stream,
                                              const EngineSettings& settings = {}) {
  return algebra_C(find_good_coordinates(p, settings, true, stream).problem, settings).dimC;
}

}  // namespace icisres
