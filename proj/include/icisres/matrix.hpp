#pragma once

#include <cstddef>
#include <optional>
#include <utility>
#include <vector>

#include "icisres/errors.hpp"
#include "icisres/polynomial.hpp"
#include "icisres/rational.hpp"

namespace icisres {

// Dense row-major matrix of polynomials.
class PolyMatrix {
 public:
  PolyMatrix() = default;
  PolyMatrix(std::size_t rows, std::size_t cols, std::size_t nvars)
      : rows_(rows), cols_(cols), entries_(rows * cols, Polynomial(nvars)) {}
  PolyMatrix(std::size_t rows, std::size_t cols, std::vector<Polynomial> entries)
      : rows_(rows), cols_(cols), entries_(std::move(entries)) {
    if (entries_.size() != rows * cols) throw Error("PolyMatrix: entry count does not match shape");
  }

  std::size_t rows() const { return rows_; }
  std::size_t cols() const { return cols_; }
  Polynomial& operator()(std::size_t r, std::size_t c) { return entries_[r * cols_ + c]; }
  const Polynomial& operator()(std::size_t r, std::size_t c) const { return entries_[r * cols_ + c]; }
  const std::vector<Polynomial>& entries() const { return entries_; }

  PolyMatrix transposed() const {
    PolyMatrix t;
    t.rows_ = cols_;
    t.cols_ = rows_;
    t.entries_.resize(entries_.size());
    for (std::size_t r = 0; r < rows_; ++r)
      for (std::size_t c = 0; c < cols_; ++c) t(c, r) = (*this)(r, c);
    return t;
  }

  // Rows `rs` and columns `cs`, in the given order (repeats allowed).
  PolyMatrix submatrix(const std::vector<std::size_t>& rs, const std::vector<std::size_t>& cs) const {
    std::vector<Polynomial> e;
    e.reserve(rs.size() * cs.size());
    for (auto r : rs)
      for (auto c : cs) e.push_back((*this)(r, c));
    return {rs.size(), cs.size(), std::move(e)};
  }

 private:
  std::size_t rows_ = 0;
  std::size_t cols_ = 0;
  std::vector<Polynomial> entries_;
};

namespace detail {

inline Polynomial cofactor_determinant(const PolyMatrix& m, std::size_t nvars) {
  const std::size_t n = m.rows();
  if (n == 0) return Polynomial::constant(nvars, 1);
  if (n == 1) return m(0, 0);
  if (n == 2) return m(0, 0) * m(1, 1) - m(0, 1) * m(1, 0);
  Polynomial det(nvars);
  std::vector<std::size_t> rows;
  for (std::size_t r = 1; r < n; ++r) rows.push_back(r);
  for (std::size_t c = 0; c < n; ++c) {
    if (m(0, c).is_zero()) continue;
    std::vector<std::size_t> cols;
    for (std::size_t k = 0; k < n; ++k)
      if (k != c) cols.push_back(k);
    Polynomial minor = cofactor_determinant(m.submatrix(rows, cols), nvars);
    if (c % 2 == 0)
      det += m(0, c) * minor;
    else
      det -= m(0, c) * minor;
  }
  return det;
}

// Fraction-free elimination; every division is exact.
inline Polynomial bareiss_determinant(PolyMatrix m, std::size_t nvars) {
  const std::size_t n = m.rows();
  Polynomial prev = Polynomial::constant(nvars, 1);
  bool negate = false;
  for (std::size_t k = 0; k + 1 < n; ++k) {
    if (m(k, k).is_zero()) {
      std::size_t swap = k + 1;
      while (swap < n && m(swap, k).is_zero()) ++swap;
      if (swap == n) return Polynomial(nvars);
      for (std::size_t c = 0; c < n; ++c) std::swap(m(k, c), m(swap, c));
      negate = !negate;
    }
    for (std::size_t i = k + 1; i < n; ++i) {
      for (std::size_t j = k + 1; j < n; ++j)
        m(i, j) = exact_divide(m(k, k) * m(i, j) - m(i, k) * m(k, j), prev);
    }
    prev = m(k, k);
  }
  return negate ? -m(n - 1, n - 1) : m(n - 1, n - 1);
}

}  // namespace detail

// Exact determinant: cofactor expansion up to size 4, Bareiss beyond.
inline Polynomial determinant(const PolyMatrix& m, std::size_t nvars) {
  if (m.rows() != m.cols()) throw NonSquareMatrix("determinant of a non-square matrix");
  for (const auto& e : m.entries())
    if (e.nvars() != nvars) throw VariableCountMismatch(e.nvars(), nvars);
  if (m.rows() <= 4) return detail::cofactor_determinant(m, nvars);
  return detail::bareiss_determinant(m, nvars);
}

inline Polynomial determinant(const PolyMatrix& m) {
  if (m.rows() != m.cols()) throw NonSquareMatrix("determinant of a non-square matrix");
  if (m.entries().empty()) throw Error("determinant of an empty matrix needs an explicit variable count");
  return determinant(m, m.entries().front().nvars());
}

// Dense row-major matrix of rationals.
class RationalMatrix {
 public:
  RationalMatrix() = default;
  RationalMatrix(std::size_t rows, std::size_t cols) : rows_(rows), cols_(cols), data_(rows * cols) {}

  static RationalMatrix identity(std::size_t n) {
    RationalMatrix m(n, n);
    for (std::size_t i = 0; i < n; ++i) m(i, i) = 1;
    return m;
  }

  std::size_t rows() const { return rows_; }
  std::size_t cols() const { return cols_; }
  Rational& operator()(std::size_t r, std::size_t c) { return data_[r * cols_ + c]; }
  const Rational& operator()(std::size_t r, std::size_t c) const { return data_[r * cols_ + c]; }

  bool is_zero() const {
    for (const auto& x : data_)
      if (x != 0) return false;
    return true;
  }

  bool is_identity() const { return rows_ == cols_ && *this == identity(rows_); }

  RationalMatrix transposed() const {
    RationalMatrix t(cols_, rows_);
    for (std::size_t r = 0; r < rows_; ++r)
      for (std::size_t c = 0; c < cols_; ++c) t(c, r) = (*this)(r, c);
    return t;
  }

  RationalMatrix block(std::size_t r0, std::size_t c0, std::size_t nr, std::size_t nc) const {
    RationalMatrix b(nr, nc);
    for (std::size_t r = 0; r < nr; ++r)
      for (std::size_t c = 0; c < nc; ++c) b(r, c) = (*this)(r0 + r, c0 + c);
    return b;
  }

  std::vector<Rational> apply(const std::vector<Rational>& v) const {
    std::vector<Rational> out(rows_);
    for (std::size_t r = 0; r < rows_; ++r)
      for (std::size_t c = 0; c < cols_; ++c) out[r] += (*this)(r, c) * v[c];
    return out;
  }

  friend RationalMatrix operator*(const RationalMatrix& a, const RationalMatrix& b) {
    if (a.cols_ != b.rows_) throw Error("matrix product shape mismatch");
    RationalMatrix m(a.rows_, b.cols_);
    for (std::size_t i = 0; i < a.rows_; ++i)
      for (std::size_t k = 0; k < a.cols_; ++k) {
        if (a(i, k) == 0) continue;
        for (std::size_t j = 0; j < b.cols_; ++j) m(i, j) += a(i, k) * b(k, j);
      }
    return m;
  }
  friend RationalMatrix operator+(RationalMatrix a, const RationalMatrix& b) {
    for (std::size_t i = 0; i < a.data_.size(); ++i) a.data_[i] += b.data_[i];
    return a;
  }
  friend RationalMatrix operator-(RationalMatrix a, const RationalMatrix& b) {
    for (std::size_t i = 0; i < a.data_.size(); ++i) a.data_[i] -= b.data_[i];
    return a;
  }
  friend bool operator==(const RationalMatrix& a, const RationalMatrix& b) {
    return a.rows_ == b.rows_ && a.cols_ == b.cols_ && a.data_ == b.data_;
  }

 private:
  std::size_t rows_ = 0;
  std::size_t cols_ = 0;
  std::vector<Rational> data_;
};

namespace detail {

// Rows scaled by the lcm of their denominators; returns the integer matrix
// and the product of the scale factors.
inline std::pair<std::vector<std::vector<Integer>>, Integer> integer_rows(const RationalMatrix& m) {
  std::vector<std::vector<Integer>> out(m.rows(), std::vector<Integer>(m.cols()));
  Integer scale = 1;
  for (std::size_t r = 0; r < m.rows(); ++r) {
    Integer l = 1;
    for (std::size_t c = 0; c < m.cols(); ++c) l = lcm(l, Integer(m(r, c).get_den()));
    for (std::size_t c = 0; c < m.cols(); ++c) out[r][c] = m(r, c).get_num() * (l / m(r, c).get_den());
    scale *= l;
  }
  return {std::move(out), scale};
}

// In-place Bareiss elimination with row pivoting over the integers. Returns
// the rank; `sign` flips on each swap and `last_pivot` holds the final
// leading principal minor for square full-rank input.
inline std::size_t bareiss_integer(std::vector<std::vector<Integer>>& a, int& sign, Integer& last_pivot) {
  const std::size_t rows = a.size();
  const std::size_t cols = rows ? a[0].size() : 0;
  Integer prev = 1;
  std::size_t rank = 0;
  sign = 1;
  for (std::size_t c = 0; c < cols && rank < rows; ++c) {
    std::size_t p = rank;
    while (p < rows && a[p][c] == 0) ++p;
    if (p == rows) continue;
    if (p != rank) {
      std::swap(a[p], a[rank]);
      sign = -sign;
    }
    for (std::size_t i = rank + 1; i < rows; ++i) {
      for (std::size_t j = c + 1; j < cols; ++j) {
        Integer v = a[rank][c] * a[i][j] - a[i][c] * a[rank][j];
        mpz_divexact(v.get_mpz_t(), v.get_mpz_t(), prev.get_mpz_t());
        a[i][j] = v;
      }
      a[i][c] = 0;
    }
    prev = a[rank][c];
    ++rank;
  }
  last_pivot = prev;
  return rank;
}

}  // namespace detail

// Rank over the rationals by fraction-free elimination.
inline std::size_t rank(const RationalMatrix& m) {
  auto [a, scale] = detail::integer_rows(m);
  int sign = 1;
  Integer last;
  return detail::bareiss_integer(a, sign, last);
}

inline Rational determinant(const RationalMatrix& m) {
  if (m.rows() != m.cols()) throw NonSquareMatrix("determinant of a non-square matrix");
  if (m.rows() == 0) return Rational(1);
  auto [a, scale] = detail::integer_rows(m);
  int sign = 1;
  Integer last;
  std::size_t r = detail::bareiss_integer(a, sign, last);
  if (r < m.rows()) return Rational(0);
  Rational d(last * sign, scale);
  d.canonicalize();
  return d;
}

// Reduced row echelon form over Q; returns pivot columns.
inline std::vector<std::size_t> row_reduce(RationalMatrix& m) {
  std::vector<std::size_t> pivots;
  std::size_t row = 0;
  for (std::size_t c = 0; c < m.cols() && row < m.rows(); ++c) {
    std::size_t p = row;
    while (p < m.rows() && m(p, c) == 0) ++p;
    if (p == m.rows()) continue;
    if (p != row)
      for (std::size_t k = 0; k < m.cols(); ++k) std::swap(m(p, k), m(row, k));
    Rational inv = 1 / m(row, c);
    for (std::size_t k = 0; k < m.cols(); ++k) m(row, k) *= inv;
    for (std::size_t r = 0; r < m.rows(); ++r) {
      if (r == row || m(r, c) == 0) continue;
      Rational f = m(r, c);
      for (std::size_t k = 0; k < m.cols(); ++k) m(r, k) -= f * m(row, k);
    }
    pivots.push_back(c);
    ++row;
  }
  return pivots;
}

// Basis of the right kernel {v : m v = 0}.
inline std::vector<std::vector<Rational>> kernel(const RationalMatrix& m) {
  RationalMatrix r = m;
  auto pivots = row_reduce(r);
  std::vector<bool> is_pivot(m.cols(), false);
  for (auto p : pivots) is_pivot[p] = true;
  std::vector<std::vector<Rational>> basis;
  for (std::size_t free = 0; free < m.cols(); ++free) {
    if (is_pivot[free]) continue;
    std::vector<Rational> v(m.cols());
    v[free] = 1;
    for (std::size_t i = 0; i < pivots.size(); ++i) v[pivots[i]] = -r(i, free);
    basis.push_back(std::move(v));
  }
  return basis;
}

inline std::optional<RationalMatrix> inverse(const RationalMatrix& m) {
  if (m.rows() != m.cols()) throw NonSquareMatrix("inverse of a non-square matrix");
  const std::size_t n = m.rows();
  RationalMatrix aug(n, 2 * n);
  for (std::size_t r = 0; r < n; ++r) {
    for (std::size_t c = 0; c < n; ++c) aug(r, c) = m(r, c);
    aug(r, n + r) = 1;
  }
  auto pivots = row_reduce(aug);
  if (pivots.size() < n || pivots[n - 1] != n - 1) return std::nullopt;
  return aug.block(0, n, n, n);
}

}  // namespace icisres
