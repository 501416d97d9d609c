#pragma once

#include <algorithm>
#include <array>
#include <cstddef>
#include <cstdint>
#include <functional>
#include <initializer_list>
#include <span>
#include <vector>

#include "icisres/errors.hpp"

namespace icisres {

inline constexpr std::size_t kMaxVars = 8;

// Exponent vector z_1^{e_1} ... z_n^{e_n}, dense, n <= kMaxVars.
class Monomial {
 public:
  Monomial() = default;

  explicit Monomial(std::size_t nvars) : nvars_(static_cast<std::uint8_t>(nvars)) {
    if (nvars > kMaxVars) throw IndexOutOfRange("at most 8 variables are supported");
  }

  Monomial(std::initializer_list<unsigned> exps) : Monomial(exps.size()) {
    std::size_t i = 0;
    for (unsigned e : exps) set(i++, e);
  }

  static Monomial from_exponents(std::span<const unsigned> exps) {
    Monomial m(exps.size());
    for (std::size_t i = 0; i < exps.size(); ++i) m.set(i, exps[i]);
    return m;
  }

  static Monomial variable(std::size_t nvars, std::size_t index, unsigned power = 1) {
    Monomial m(nvars);
    m.set(index, power);
    return m;
  }

  std::size_t size() const { return nvars_; }
  unsigned degree() const { return degree_; }
  unsigned operator[](std::size_t i) const { return exp_[i]; }

  void set(std::size_t i, unsigned e) {
    if (i >= nvars_) throw IndexOutOfRange("monomial variable index out of range");
    degree_ = static_cast<std::uint16_t>(degree_ - exp_[i] + e);
    exp_[i] = static_cast<std::uint16_t>(e);
  }

  bool is_one() const { return degree_ == 0; }

  bool divides(const Monomial& other) const {
    if (degree_ > other.degree_) return false;
    for (std::size_t i = 0; i < nvars_; ++i)
      if (exp_[i] > other.exp_[i]) return false;
    return true;
  }

  bool coprime(const Monomial& other) const {
    for (std::size_t i = 0; i < nvars_; ++i)
      if (exp_[i] != 0 && other.exp_[i] != 0) return false;
    return true;
  }

  // Pure power z_i^e with e > 0; returns the variable index or -1.
  int pure_power_variable() const {
    int found = -1;
    for (std::size_t i = 0; i < nvars_; ++i) {
      if (exp_[i] == 0) continue;
      if (found >= 0) return -1;
      found = static_cast<int>(i);
    }
    return found;
  }

  Monomial operator*(const Monomial& o) const {
    Monomial r(*this);
    for (std::size_t i = 0; i < nvars_; ++i) r.exp_[i] = static_cast<std::uint16_t>(r.exp_[i] + o.exp_[i]);
    r.degree_ = static_cast<std::uint16_t>(degree_ + o.degree_);
    return r;
  }

  // Requires o.divides(*this).
  Monomial operator/(const Monomial& o) const {
    Monomial r(*this);
    for (std::size_t i = 0; i < nvars_; ++i) r.exp_[i] = static_cast<std::uint16_t>(r.exp_[i] - o.exp_[i]);
    r.degree_ = static_cast<std::uint16_t>(degree_ - o.degree_);
    return r;
  }

  Monomial lcm(const Monomial& o) const {
    Monomial r(nvars_);
    for (std::size_t i = 0; i < nvars_; ++i) r.set(i, std::max(exp_[i], o.exp_[i]));
    return r;
  }

  std::vector<unsigned> exponents() const { return {exp_.begin(), exp_.begin() + nvars_}; }

  friend bool operator==(const Monomial& a, const Monomial& b) {
    return a.nvars_ == b.nvars_ && a.exp_ == b.exp_;
  }

 private:
  std::array<std::uint16_t, kMaxVars> exp_{};
  std::uint16_t degree_ = 0;
  std::uint8_t nvars_ = 0;
};

// Negative-degree reverse lexicographic order ("ds"): lower total degree is
// larger, ties broken reverse-lexicographically so that z_1 > z_2 > ... > z_n.
// The constant monomial 1 is the largest monomial.
inline bool local_greater(const Monomial& a, const Monomial& b) {
  if (a.degree() != b.degree()) return a.degree() < b.degree();
  for (std::size_t i = a.size(); i-- > 0;) {
    if (a[i] != b[i]) return a[i] < b[i];
  }
  return false;
}

struct LocalGreater {
  bool operator()(const Monomial& a, const Monomial& b) const { return local_greater(a, b); }
};

// All monomials in n variables of total degree <= max_degree, listed from
// largest to smallest in the local order.
inline std::vector<Monomial> monomials_up_to(std::size_t nvars, unsigned max_degree) {
  std::vector<Monomial> out;
  std::vector<unsigned> e(nvars, 0);
  std::function<void(std::size_t, unsigned)> rec = [&](std::size_t i, unsigned left) {
    if (i + 1 == nvars) {
      e[i] = left;
      out.push_back(Monomial::from_exponents(e));
      return;
    }
    for (unsigned k = 0; k <= left; ++k) {
      e[i] = k;
      rec(i + 1, left - k);
    }
  };
  if (nvars == 0) {
    out.emplace_back(0);
    return out;
  }
  for (unsigned d = 0; d <= max_degree; ++d) rec(0, d);
  std::sort(out.begin(), out.end(), LocalGreater{});
  return out;
}

}  // namespace icisres
