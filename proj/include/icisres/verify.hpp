#pragma once

#include <algorithm>
#include <chrono>
#include <cstdint>
#include <functional>
#include <map>
#include <optional>
#include <sstream>
#include <string>
#include <vector>

#include "icisres/corpus.hpp"
#include "icisres/germ.hpp"
#include "icisres/pairing.hpp"
#include "icisres/random.hpp"
#include "icisres/residue.hpp"

namespace icisres {

inline const std::vector<std::string>& all_suites() {
  static const std::vector<std::string> names{"det-lemmas",     "eq1",     "lem2",           "eq2-transform",
                                              "ann-invariance", "theorem1", "smooth-duality", "cor-mult"};
  return names;
}

struct VerificationPlan {
  std::vector<std::string> suites = all_suites();
  std::size_t trials = 10;
  std::uint64_t seed = 1;
  unsigned degree_bound = 3;
  std::size_t nvars_bound = 4;
  EngineSettings settings;
};

struct VerificationFailure {
  std::uint64_t seed = 0;  // trial seed; rerun with reproduce_trial
  std::string payload;
};

struct VerificationOutcome {
  std::string suite;
  std::size_t trials = 0;
  std::size_t resamples = 0;
  std::size_t skipped = 0;  // trials that hit the resample limit
  std::vector<VerificationFailure> failures;
  double wall_seconds = 0;
};

inline constexpr int kResampleLimit = 20;

// Raised inside a trial when the drawn instance is degenerate.
struct Resample {};

namespace verify_detail {

inline std::string render(const std::vector<Polynomial>& ps) {
  std::string s = "[";
  for (std::size_t i = 0; i < ps.size(); ++i) s += (i ? ", " : "") + to_string(ps[i]);
  return s + "]";
}

inline std::string render(const RationalMatrix& m) {
  std::string s = "[";
  for (std::size_t r = 0; r < m.rows(); ++r) {
    s += r ? "; " : "";
    for (std::size_t c = 0; c < m.cols(); ++c) s += (c ? " " : "") + to_string(m(r, c));
  }
  return s + "]";
}

inline std::string render(const GermProblem& p) {
  return "n=" + std::to_string(p.n) + " f=" + render(p.f) + " omega=" + render(p.omega);
}

inline std::vector<std::size_t> random_distinct(Rng& rng, std::size_t n, std::size_t count) {
  std::vector<std::size_t> pool(n);
  for (std::size_t i = 0; i < n; ++i) pool[i] = i;
  std::vector<std::size_t> out;
  for (std::size_t k = 0; k < count; ++k) {
    auto pick = static_cast<std::size_t>(rng.uniform(0, static_cast<long>(pool.size()) - 1));
    out.push_back(pool[pick]);
    pool.erase(pool.begin() + static_cast<std::ptrdiff_t>(pick));
  }
  return out;
}

// Germ on a surface with an isolated zero of positive index. Each equation is
// a sum of pure powers plus a random perturbation, which makes isolated
// singularities the typical case; the form has degree 1..2.
inline GermProblem random_surface_germ(Rng& rng, std::size_t n, unsigned degree_bound, const EngineSettings& s) {
  GermProblem p{n, {}, {}, rng.next()};
  const unsigned top = std::max(2U, degree_bound);
  for (std::size_t i = 0; i + 2 < n; ++i) {
    Polynomial fi = random_polynomial(rng, n, 2, top, 3);
    for (std::size_t k = 0; k < n; ++k)
      fi += Polynomial::monomial(Monomial::variable(n, k, static_cast<unsigned>(rng.uniform(2, top))));
    p.f.push_back(fi);
  }
  for (std::size_t i = 0; i < n; ++i) p.omega.push_back(random_polynomial(rng, n, 1, std::min(2U, degree_bound), 4));
  try {
    if (eg_index(p, s) == 0) throw Resample{};
  } catch (const NotIsolated&) {
    throw Resample{};
  } catch (const CapExceeded&) {
    throw Resample{};
  }
  return p;
}

using Trial = std::function<std::optional<std::string>(Rng&, std::size_t, const VerificationPlan&)>;

inline std::optional<std::string> det_lemmas(Rng& rng, std::size_t, const VerificationPlan&) {
  const auto n = static_cast<std::size_t>(rng.uniform(2, 6));
  const auto j = static_cast<std::size_t>(rng.uniform(1, static_cast<long>(n) - 1));
  RationalMatrix h = random_rational_matrix(rng, n, n);
  auto A = h.block(0, 0, j, j), B = h.block(0, j, j, n - j), C = h.block(j, 0, n - j, j),
       D = h.block(j, j, n - j, n - j);
  auto Ainv = inverse(A);
  auto Hinv = inverse(h);
  if (!Ainv || !Hinv) throw Resample{};
  if (determinant(h) != determinant(A) * determinant(D - C * *Ainv * B))
    return "det H != det A det(D - C A^-1 B) for H = " + render(h) + ", j = " + std::to_string(j);
  if (determinant(D) != determinant(Hinv->block(0, 0, j, j)) * determinant(h))
    return "det D != det E det H for H = " + render(h) + ", j = " + std::to_string(j);
  return std::nullopt;
}

// For any i_1..i_q and j_1..j_{q+1}:
// df/dz_I * m_J = sum_l (-1)^{l+1} df/dz_{J without j_l} * m_{j_l, I}.
inline std::optional<std::string> eq1(Rng& rng, std::size_t, const VerificationPlan& plan) {
  const std::size_t n = std::max<std::size_t>(3, std::min<std::size_t>(4, plan.nvars_bound));
  const std::size_t q = n - 2;
  GermProblem p{n, {}, {}, 0};
  for (std::size_t i = 0; i < q; ++i) p.f.push_back(random_polynomial(rng, n, 1, 2, 4));
  for (std::size_t i = 0; i < n; ++i) p.omega.push_back(random_polynomial(rng, n, 0, 2, 4));
  auto I = random_distinct(rng, n, q);
  auto J = random_distinct(rng, n, q + 1);
  Polynomial lhs = jacobian_minor(p.f, I, n) * minor_of_columns(p, J);
  Polynomial rhs(n);
  for (std::size_t l = 0; l < J.size(); ++l) {
    std::vector<std::size_t> rest, cols{J[l]};
    for (std::size_t k = 0; k < J.size(); ++k)
      if (k != l) rest.push_back(J[k]);
    cols.insert(cols.end(), I.begin(), I.end());
    Polynomial term = jacobian_minor(p.f, rest, n) * minor_of_columns(p, cols);
    if (l % 2 == 0) rhs += term;
    else rhs -= term;
  }
  if (lhs == rhs) return std::nullopt;
  std::ostringstream os;
  os << "identity fails for " << render(p) << " I = (";
  for (auto i : I) os << i + 1 << ' ';
  os << ") J = (";
  for (auto j : J) os << j + 1 << ' ';
  os << ')';
  return os.str();
}

// det d(f, m_j, m_k)/dz + f_{j,k} sigma lies in J, for n = 3.
inline std::optional<std::string> lem2(Rng& rng, std::size_t, const VerificationPlan& plan) {
  GermProblem p = random_surface_germ(rng, 3, std::min(3U, plan.degree_bound), plan.settings);
  auto ms = minors(p);
  auto sigma = sigma_data(p).sigma;
  auto sb = standard_basis(ideal_J(p), plan.settings);
  for (std::size_t j = 0; j < 3; ++j)
    for (std::size_t k = j + 1; k < 3; ++k) {
      Polynomial jac = jacobian_minor({p.f[0], ms.principal[j], ms.principal[k]}, {0, 1, 2}, 3);
      Polynomial expr = jac + f_minor(p, j, k) * sigma;
      if (!is_member(expr, sb))
        return "membership fails for " + render(p) + " at (j, k) = (" + std::to_string(j + 1) + ", " +
               std::to_string(k + 1) + ")";
    }
  return std::nullopt;
}

// m_i^y = sum_j (-1)^{i+j} det C (C^-1)_{ij} m_j(C y) for z = C y.
inline std::optional<std::string> eq2_transform(Rng& rng, std::size_t, const VerificationPlan& plan) {
  const auto n = static_cast<std::size_t>(rng.uniform(2, static_cast<long>(std::min<std::size_t>(4, plan.nvars_bound))));
  GermProblem p{n, {}, {}, 0};
  for (std::size_t i = 0; i + 2 < n; ++i) p.f.push_back(random_polynomial(rng, n, 1, 2, 4));
  for (std::size_t i = 0; i < n; ++i) p.omega.push_back(random_polynomial(rng, n, 0, 2, 4));
  auto change = CoordinateChange::from_matrix(random_invertible_integer_matrix(rng, n, 3));
  auto y = apply_coordinate_change(p, change);
  auto my = minors(y).principal, mz = minors(p).principal;
  const Rational det = determinant(change.matrix);
  for (std::size_t i = 0; i < n; ++i) {
    Polynomial expected(n);
    for (std::size_t j = 0; j < n; ++j) {
      Rational c = det * change.inverse(i, j);
      if ((i + j) % 2) c = -c;
      if (c != 0) expected += c * pull_back(mz[j], change.matrix);
    }
    if (!(expected == my[i]))
      return "transformation fails for " + render(p) + " C = " + render(change.matrix) + " at i = " + std::to_string(i + 1);
  }
  return std::nullopt;
}

// Signs s1, s2 with f_{i,l} f_{j,k} = s1 f_{k,l} f_{i,j} + s2 f_{j,l} f_{i,k},
// for ordered distinct (i, j, k, l), determined from random data.
using PluckerSigns = std::map<std::vector<std::size_t>, std::pair<int, int>>;

inline std::optional<std::pair<int, int>> plucker_signs(const GermProblem& p, const std::vector<std::size_t>& t) {
  auto [i, j, k, l] = std::tuple{t[0], t[1], t[2], t[3]};
  Polynomial lhs = f_minor(p, i, l) * f_minor(p, j, k);
  Polynomial a = f_minor(p, k, l) * f_minor(p, i, j), b = f_minor(p, j, l) * f_minor(p, i, k);
  std::optional<std::pair<int, int>> found;
  for (int s1 : {1, -1})
    for (int s2 : {1, -1})
      if (lhs == Rational(s1) * a + Rational(s2) * b) {
        if (found) return std::nullopt;  // ambiguous on this instance
        found = std::pair{s1, s2};
      }
  return found;
}

inline std::optional<std::string> ann_invariance(Rng& rng, std::size_t trial, const VerificationPlan& plan) {
  static const std::vector<GermProblem> germs{a1_germ_dz(), smooth_diagonal(1, 1), smooth_diagonal(2, 3),
                                              smooth_diagonal(3, 3)};
  const GermProblem& p = germs[trial % germs.size()];
  auto change = CoordinateChange::from_matrix(random_invertible_integer_matrix(rng, p.n, 3));
  auto y = apply_coordinate_change(p, change);
  if (!has_good_coordinates(y, plan.settings)) throw Resample{};
  Polynomial h = random_polynomial(rng, p.n, 0, 2, 4);
  Rational lhs = residue_form(p, h, plan.settings);
  auto my = minors(y).principal;
  const RationalMatrix& psi = change.inverse;
  std::vector<Polynomial> dens = p.f;
  dens.push_back(pull_back(my[1], psi));
  dens.push_back(pull_back(my[0], psi));
  Polynomial num = determinant(change.matrix) * h * pull_back(DF(y), psi);
  Rational rhs = grothendieck_residue({num, dens}, plan.settings);
  if (lhs != rhs)
    return "residue changes under " + render(change.matrix) + " for " + render(p) + " h = " + to_string(h) +
           ": " + to_string(lhs) + " vs " + to_string(rhs);

  // Sign table of the quadratic relations among the f_{a,b}, n = 4.
  GermProblem q{4, {random_polynomial(rng, 4, 1, 2, 5), random_polynomial(rng, 4, 1, 2, 5)}, {}, 0};
  static const PluckerSigns reference = [] {
    Rng r(0x5eed);
    PluckerSigns table;
    for (int draw = 0; draw < 50 && table.size() < 24; ++draw) {
      GermProblem g{4, {random_polynomial(r, 4, 1, 2, 5), random_polynomial(r, 4, 1, 2, 5)}, {}, 0};
      std::vector<std::size_t> t{0, 1, 2, 3};
      do {
        if (table.count(t)) continue;
        if (auto s = plucker_signs(g, t)) table[t] = *s;
      } while (std::next_permutation(t.begin(), t.end()));
    }
    return table;
  }();
  if (reference.size() < 24) return std::string("no sign pair satisfies the quadratic relation for some index order");
  for (const auto& [t, s] : reference) {
    Polynomial lhs4 = f_minor(q, t[0], t[3]) * f_minor(q, t[1], t[2]);
    Polynomial rhs4 = Rational(s.first) * f_minor(q, t[2], t[3]) * f_minor(q, t[0], t[1]) +
                      Rational(s.second) * f_minor(q, t[1], t[3]) * f_minor(q, t[0], t[2]);
    if (!(lhs4 == rhs4)) return "sign table entry fails for f = " + render(q.f);
  }
  return std::nullopt;
}

inline std::optional<std::string> theorem1(Rng& rng, std::size_t trial, const VerificationPlan& plan) {
  static const auto corpus = builtin_corpus();
  GermProblem p;
  std::string label;
  if (trial < corpus.size()) {
    p = corpus[trial].problem;
    label = corpus[trial].name;
  } else {
    p = random_surface_germ(rng, static_cast<std::size_t>(rng.uniform(2, 3)), 2, plan.settings);
    label = render(p);
  }
  std::size_t index;
  Rational res;
  try {
    index = eg_index(p, plan.settings);
    res = main_residue(p, plan.settings);
  } catch (const CapExceeded&) {
    if (trial < corpus.size()) throw;
    throw Resample{};
  }
  if (res == Rational(static_cast<long>(index))) return std::nullopt;
  return "index " + std::to_string(index) + " != residue " + to_string(res) + " for " + label;
}

// Smooth V: the pairing on A is non-degenerate.
inline std::optional<std::string> smooth_duality(Rng& rng, std::size_t, const VerificationPlan& plan) {
  GermProblem p = random_surface_germ(rng, 2, std::min(3U, plan.degree_bound), plan.settings);
  auto g = gram_beta(p, plan.settings);
  if (g.rank == g.basis.size()) return std::nullopt;
  return "degenerate pairing (rank " + std::to_string(g.rank) + " of " + std::to_string(g.basis.size()) + ") for " +
         render(p);
}

inline std::optional<std::string> cor_mult(Rng& rng, std::size_t, const VerificationPlan& plan) {
  const auto n = static_cast<std::size_t>(rng.uniform(2, 3));
  std::vector<Polynomial> f, g;
  if (n == 3) f.push_back(random_polynomial(rng, 3, 2, 2, 4));
  for (int i = 0; i < 2; ++i) g.push_back(random_polynomial(rng, n, 1, std::min(3U, plan.degree_bound), 3));
  IntersectionMultiplicity m;
  try {
    m = intersection_multiplicity_both_ways(f, g, plan.settings);
  } catch (const NotRegularSequence&) {
    throw Resample{};
  } catch (const CapExceeded&) {
    throw Resample{};
  }
  if (m.rhs == Rational(static_cast<long>(m.lhs))) return std::nullopt;
  return "colength " + std::to_string(m.lhs) + " != integral " + to_string(m.rhs) + " for f = " + render(f) +
         " g = " + render(g);
}

inline const std::map<std::string, Trial>& trials() {
  static const std::map<std::string, Trial> table{
      {"det-lemmas", det_lemmas},         {"eq1", eq1},           {"lem2", lem2},
      {"eq2-transform", eq2_transform},   {"ann-invariance", ann_invariance},
      {"theorem1", theorem1},             {"smooth-duality", smooth_duality},
      {"cor-mult", cor_mult}};
  return table;
}

inline std::uint64_t trial_seed(std::uint64_t seed, const std::string& suite, std::size_t trial) {
  return splitmix64(seed ^ splitmix64(fnv1a(suite) + trial));
}

}  // namespace verify_detail

struct TrialResult {
  std::optional<std::string> failure;
  std::size_t resamples = 0;
  bool skipped = false;
};

// Runs one trial from its seed; the result depends on nothing else.
inline TrialResult reproduce_trial(const std::string& suite, std::uint64_t seed, std::size_t trial,
                                   const VerificationPlan& plan = {}) {
  auto it = verify_detail::trials().find(suite);
  if (it == verify_detail::trials().end()) throw InvalidProblem("unknown suite '" + suite + "'");
  Rng rng(seed);
  TrialResult r;
  for (int attempt = 0; attempt <= kResampleLimit; ++attempt) {
    try {
      r.failure = it->second(rng, trial, plan);
      return r;
    } catch (const Resample&) {
      ++r.resamples;
    }
  }
  r.skipped = true;
  return r;
}

inline std::vector<VerificationOutcome> run(const VerificationPlan& plan) {
  if (plan.trials < 1) throw InvalidProblem("verification needs at least one trial");
  std::vector<VerificationOutcome> out;
  for (const auto& suite : plan.suites) {
    if (!verify_detail::trials().count(suite)) throw InvalidProblem("unknown suite '" + suite + "'");
    VerificationOutcome o;
    o.suite = suite;
    auto start = std::chrono::steady_clock::now();
    std::size_t count = plan.trials;
    if (suite == "theorem1") count = std::max(count, builtin_corpus().size());
    for (std::size_t t = 0; t < count; ++t) {
      const std::uint64_t seed = verify_detail::trial_seed(plan.seed, suite, t);
      auto r = reproduce_trial(suite, seed, t, plan);
      ++o.trials;
      o.resamples += r.resamples;
      if (r.skipped) ++o.skipped;
      if (r.failure) o.failures.push_back({seed, "trial " + std::to_string(t) + ": " + *r.failure});
    }
    o.wall_seconds = std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
    out.push_back(std::move(o));
  }
  return out;
}

}  // namespace icisres
