#pragma once

#include <cstddef>
#include <cstdint>
#include <map>
#include <optional>
#include <string>
#include <vector>

#include "icisres/errors.hpp"
#include "icisres/matrix.hpp"
#include "icisres/polynomial.hpp"
#include "icisres/random.hpp"
#include "icisres/residue.hpp"
#include "icisres/standard_basis.hpp"

namespace icisres {

// A 1-form omega = sum omega_i dz_i on V = {f_1 = .. = f_q = 0} in C^n.
// Surfaces have q = n - 2, curves q = n - 1.
struct GermProblem {
  std::size_t n = 0;
  std::vector<Polynomial> f;
  std::vector<Polynomial> omega;
  std::uint64_t seed = 0;

  std::size_t q() const { return f.size(); }

  void validate(std::size_t codimension) const {
    if (n < 1 || n > kMaxVars) throw InvalidProblem("ambient dimension must be between 1 and " + std::to_string(kMaxVars));
    if (codimension > n || f.size() != n - codimension)
      throw InvalidProblem("expected " + std::to_string(n - std::min(codimension, n)) + " defining equations, got " +
                           std::to_string(f.size()));
    if (omega.size() != n)
      throw InvalidProblem("expected " + std::to_string(n) + " form components, got " + std::to_string(omega.size()));
    for (const auto& p : f) {
      if (p.nvars() != n) throw VariableCountMismatch(p.nvars(), n);
      if (p.constant_term() != 0) throw InvalidProblem("defining equations must vanish at the origin");
    }
    for (const auto& p : omega)
      if (p.nvars() != n) throw VariableCountMismatch(p.nvars(), n);
  }
  void validate_surface() const { validate(2); }
};

// Rows df_1 .. df_q, omega.
inline PolyMatrix stacked_matrix(const GermProblem& p) {
  PolyMatrix m(p.q() + 1, p.n, p.n);
  for (std::size_t r = 0; r < p.q(); ++r)
    for (std::size_t c = 0; c < p.n; ++c) m(r, c) = diff(p.f[r], c);
  for (std::size_t c = 0; c < p.n; ++c) m(p.q(), c) = p.omega[c];
  return m;
}

// Minor of the stacked matrix on the given columns, in the given order.
inline Polynomial minor_of_columns(const GermProblem& p, const std::vector<std::size_t>& cols) {
  if (cols.size() != p.q() + 1) throw InvalidProblem("minor needs q + 1 columns");
  for (auto c : cols)
    if (c >= p.n) throw IndexOutOfRange("minor column out of range");
  PolyMatrix m = stacked_matrix(p);
  std::vector<std::size_t> rows(p.q() + 1);
  for (std::size_t r = 0; r < rows.size(); ++r) rows[r] = r;
  return determinant(m.submatrix(rows, cols), p.n);
}

// Jacobian minor of f on the given columns.
inline Polynomial jacobian_minor(const std::vector<Polynomial>& f, const std::vector<std::size_t>& cols,
                                 std::size_t nvars) {
  if (cols.size() != f.size()) throw InvalidProblem("jacobian minor needs one column per equation");
  PolyMatrix m(f.size(), f.size(), nvars);
  for (std::size_t r = 0; r < f.size(); ++r)
    for (std::size_t c = 0; c < cols.size(); ++c) m(r, c) = diff(f[r], cols[c]);
  return determinant(m, nvars);
}

// f_{l,k}: Jacobian minor of f on all columns except l and k; zero for l = k.
inline Polynomial f_minor(const GermProblem& p, std::size_t l, std::size_t k) {
  if (l >= p.n || k >= p.n) throw IndexOutOfRange("f_minor index out of range");
  if (l == k) return Polynomial(p.n);
  std::vector<std::size_t> cols;
  for (std::size_t c = 0; c < p.n; ++c)
    if (c != l && c != k) cols.push_back(c);
  return jacobian_minor(p.f, cols, p.n);
}

// det of the partials of f with respect to the last q variables.
inline Polynomial DF(const GermProblem& p) {
  std::vector<std::size_t> cols;
  for (std::size_t c = p.n - p.q(); c < p.n; ++c) cols.push_back(c);
  return jacobian_minor(p.f, cols, p.n);
}

struct MinorSet {
  std::map<std::vector<std::size_t>, Polynomial> all;  // ascending column tuples
  std::vector<Polynomial> principal;                   // m_i: all columns but i
};

inline MinorSet minors(const GermProblem& p) {
  MinorSet out;
  PolyMatrix m = stacked_matrix(p);
  std::vector<std::size_t> rows(p.q() + 1);
  for (std::size_t r = 0; r < rows.size(); ++r) rows[r] = r;
  for (const auto& cols : form_basis(p.n, p.q() + 1)) out.all[cols] = determinant(m.submatrix(rows, cols), p.n);
  if (p.q() + 1 == p.n - 1) {
    for (std::size_t i = 0; i < p.n; ++i) {
      std::vector<std::size_t> cols;
      for (std::size_t c = 0; c < p.n; ++c)
        if (c != i) cols.push_back(c);
      out.principal.push_back(out.all.at(cols));
    }
  }
  return out;
}

// f_1 .. f_q followed by every (q+1)-minor.
inline std::vector<Polynomial> ideal_J(const GermProblem& p) {
  std::vector<Polynomial> gens = p.f;
  for (const auto& [cols, m] : minors(p).all) gens.push_back(m);
  return gens;
}

// I: f and the minors m_{i, n-q+1, .., n} for i <= n - q.
inline std::vector<Polynomial> ideal_I(const GermProblem& p) {
  std::vector<Polynomial> gens = p.f;
  for (std::size_t i = 0; i < p.n - p.q(); ++i) {
    std::vector<std::size_t> cols{i};
    for (std::size_t c = p.n - p.q(); c < p.n; ++c) cols.push_back(c);
    gens.push_back(minor_of_columns(p, cols));
  }
  return gens;
}

struct IndexValue {
  std::size_t index = 0;
  unsigned cap = 0;  // certified cap of the standard basis; 0 when a minor is a unit
};

namespace detail {

inline IndexValue index_of_ideal(const std::vector<Polynomial>& gens, const std::vector<Polynomial>& minors,
                                 const EngineSettings& settings) {
  for (const auto& m : minors)
    if (m.is_unit()) return {0, 0};
  auto sb = standard_basis(gens, settings);
  auto len = colength(sb);
  if (!len) throw NotIsolated("the form does not have an isolated zero on V");
  return {*len, sb.cap};
}

}  // namespace detail

// Index of omega on the surface V: dim of O / J; 0 when some minor is a unit.
inline IndexValue eg_index_detailed(const GermProblem& p, const EngineSettings& settings = {}) {
  p.validate_surface();
  auto ms = minors(p);
  std::vector<Polynomial> all;
  for (const auto& [cols, m] : ms.all) all.push_back(m);
  return detail::index_of_ideal(ideal_J(p), all, settings);
}

inline std::size_t eg_index(const GermProblem& p, const EngineSettings& settings = {}) {
  return eg_index_detailed(p, settings).index;
}

struct SigmaData {
  PolyMatrix M;  // row i: (-1)^i grad m_i (1-based i)
  Polynomial sigma;
  Polynomial DF;
};

// Sum of the principal 2x2 minors.
inline Polynomial sigma2(const PolyMatrix& m, std::size_t nvars) {
  Polynomial s(nvars);
  for (std::size_t i = 0; i < m.rows(); ++i)
    for (std::size_t j = i + 1; j < m.rows(); ++j) s += m(i, i) * m(j, j) - m(i, j) * m(j, i);
  return s;
}

inline SigmaData sigma_data(const GermProblem& p, bool transpose = false) {
  p.validate_surface();
  auto ms = minors(p);
  PolyMatrix M(p.n, p.n, p.n);
  for (std::size_t i = 0; i < p.n; ++i)
    for (std::size_t j = 0; j < p.n; ++j) {
      Polynomial d = diff(ms.principal[i], j);
      M(i, j) = (i % 2 == 0) ? -d : d;
    }
  if (transpose) M = M.transposed();
  return {M, sigma2(M, p.n), DF(p)};
}

// z = C y. Polynomials are pulled back by substitution; omega as a 1-form.
struct CoordinateChange {
  RationalMatrix matrix;
  RationalMatrix inverse;

  static CoordinateChange identity(std::size_t n) {
    return {RationalMatrix::identity(n), RationalMatrix::identity(n)};
  }
  static CoordinateChange from_matrix(const RationalMatrix& c) {
    auto inv = icisres::inverse(c);
    if (!inv) throw InvalidProblem("coordinate change must be invertible");
    return {c, *inv};
  }
  CoordinateChange inverted() const { return {inverse, matrix}; }
  bool is_identity() const { return matrix.is_identity(); }
};

inline std::vector<Polynomial> linear_images(const RationalMatrix& c) {
  const std::size_t n = c.rows();
  std::vector<Polynomial> images;
  for (std::size_t i = 0; i < n; ++i) {
    Polynomial img(n);
    for (std::size_t j = 0; j < n; ++j)
      if (c(i, j) != 0) img += c(i, j) * Polynomial::variable(n, j);
    images.push_back(img);
  }
  return images;
}

// p(C y)
inline Polynomial pull_back(const Polynomial& p, const RationalMatrix& c) { return substitute(p, linear_images(c)); }

inline GermProblem apply_coordinate_change(const GermProblem& p, const CoordinateChange& change) {
  auto images = linear_images(change.matrix);
  GermProblem out;
  out.n = p.n;
  out.seed = p.seed;
  for (const auto& fi : p.f) out.f.push_back(substitute(fi, images));
  std::vector<Polynomial> pulled;
  for (const auto& w : p.omega) pulled.push_back(substitute(w, images));
  for (std::size_t j = 0; j < p.n; ++j) {
    Polynomial wj(p.n);
    for (std::size_t i = 0; i < p.n; ++i)
      if (change.matrix(i, j) != 0) wj += change.matrix(i, j) * pulled[i];
    out.omega.push_back(wj);
  }
  return out;
}

struct GoodCoordinates {
  CoordinateChange change;
  GermProblem problem;      // in the new coordinates
  std::size_t attempts = 0; // random draws used; 0 for the identity
};

inline bool has_good_coordinates(const GermProblem& p, const EngineSettings& settings = {}) {
  auto ms = minors(p);
  return is_regular_on_V(p.f, ms.principal[0], ms.principal[1], settings);
}

// Linear coordinates in which (m_1, m_2) is regular on V. The identity is
// tried first unless `force_random`; then random integer matrices with
// entries in [-3, 3] drawn from the problem seed (offset by `stream`).
inline GoodCoordinates find_good_coordinates(const GermProblem& p, const EngineSettings& settings = {},
                                             bool force_random = false, std::uint64_t stream = 0) {
  p.validate_surface();
  if (!colength(standard_basis(ideal_J(p), settings))) throw NotIsolated("the form does not have an isolated zero on V");
  if (!force_random && has_good_coordinates(p, settings)) return {CoordinateChange::identity(p.n), p, 0};
  Rng rng(p.seed + 0x9e3779b97f4a7c15ULL * stream);
  for (std::size_t attempt = 1; attempt <= settings.attempts; ++attempt) {
    auto change = CoordinateChange::from_matrix(random_invertible_integer_matrix(rng, p.n, 3));
    GermProblem q = apply_coordinate_change(p, change);
    if (has_good_coordinates(q, settings)) return {change, q, attempt};
  }
  throw GoodCoordsNotFound("no good coordinates after " + std::to_string(settings.attempts) + " attempts");
}

// L(h) = res[h DF / f_1 .. f_q, m_2, m_1], the linear form of the main formula.
inline ResidueValue residue_form_detailed(const GermProblem& p, const Polynomial& h, const EngineSettings& settings = {}) {
  auto ms = minors(p);
  std::vector<Polynomial> dens = p.f;
  dens.push_back(ms.principal[1]);
  dens.push_back(ms.principal[0]);
  return grothendieck_residue_detailed({h * DF(p), dens}, settings);
}

inline Rational residue_form(const GermProblem& p, const Polynomial& h, const EngineSettings& settings = {}) {
  return residue_form_detailed(p, h, settings).value;
}

struct MainResidue {
  Rational value;
  GoodCoordinates coordinates;
  SigmaData sigma;
  unsigned cap = 0;
};

// L(sigma) in good coordinates; equals the index.
inline MainResidue main_residue_detailed(const GermProblem& p, const EngineSettings& settings = {},
                                         bool force_random = false, std::uint64_t stream = 0) {
  MainResidue out{0, find_good_coordinates(p, settings, force_random, stream), {}, 0};
  out.sigma = sigma_data(out.coordinates.problem);
  auto r = residue_form_detailed(out.coordinates.problem, out.sigma.sigma, settings);
  out.value = r.value;
  out.cap = r.cap;
  return out;
}

inline Rational main_residue(const GermProblem& p, const EngineSettings& settings = {}) {
  return main_residue_detailed(p, settings).value;
}

// Index of omega on the curve V = {f_1 = .. = f_{n-1} = 0}: dim O / (f, m).
inline IndexValue curve_index_detailed(const GermProblem& p, const EngineSettings& settings = {}) {
  p.validate(1);
  Polynomial m = determinant(stacked_matrix(p), p.n);
  std::vector<Polynomial> gens = p.f;
  gens.push_back(m);
  return detail::index_of_ideal(gens, {m}, settings);
}

inline std::size_t curve_index(const GermProblem& p, const EngineSettings& settings = {}) {
  return curve_index_detailed(p, settings).index;
}

}  // namespace icisres
