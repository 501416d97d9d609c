#include <gtest/gtest.h>

#include "icisres/random.hpp"
#include "icisres/standard_basis.hpp"

using namespace icisres;

namespace {

struct Vars3 {
  Polynomial x = Polynomial::variable(3, 0), y = Polynomial::variable(3, 1), z = Polynomial::variable(3, 2);
  Polynomial one = Polynomial::constant(3, 1);
};

Polynomial pure(std::size_t n, std::size_t i, unsigned d) { return Polynomial::monomial(Monomial::variable(n, i, d)); }

}  // namespace

TEST(StandardBasis, LinearPlusSquare) {
  Vars3 v;
  auto sb = standard_basis({v.x, v.y, v.z * v.z});
  EXPECT_TRUE(sb.certified);
  std::vector<Monomial> expected{Monomial{1, 0, 0}, Monomial{0, 1, 0}, Monomial{0, 0, 2}};
  auto st = sb.staircase;
  std::sort(st.begin(), st.end(), LocalGreater{});
  std::sort(expected.begin(), expected.end(), LocalGreater{});
  EXPECT_EQ(st, expected);
  auto basis = staircase_basis(sb);
  ASSERT_EQ(basis.size(), 2U);
  EXPECT_EQ(basis[0], (Monomial{0, 0, 0}));
  EXPECT_EQ(basis[1], (Monomial{0, 0, 1}));
}

TEST(StandardBasis, OneVariable) {
  auto sb = standard_basis({Polynomial::variable(1, 0)});
  ASSERT_EQ(sb.staircase.size(), 1U);
  EXPECT_EQ(sb.staircase[0], Monomial{1});
  EXPECT_EQ(colength(sb), 1U);
}

TEST(StandardBasis, LocalLeadingTerm) {
  auto x = Polynomial::variable(2, 0), y = Polynomial::variable(2, 1);
  auto sb = standard_basis({x * x + y * y * y, y * y});
  auto st = sb.staircase;
  std::sort(st.begin(), st.end(), LocalGreater{});
  std::vector<Monomial> expected{Monomial{2, 0}, Monomial{0, 2}};
  std::sort(expected.begin(), expected.end(), LocalGreater{});
  EXPECT_EQ(st, expected);
  EXPECT_EQ(colength(sb), 4U);
}

TEST(StandardBasis, UnitIdeal) {
  auto x = Polynomial::variable(2, 0);
  auto sb = standard_basis({Polynomial::constant(2, 1) + x});
  EXPECT_TRUE(sb.is_unit_ideal());
  EXPECT_EQ(colength(sb), 0U);
}

TEST(StandardBasis, CapExceededWhenMaxTooSmall) {
  auto x = Polynomial::variable(2, 0), y = Polynomial::variable(2, 1);
  EngineSettings s;
  s.initial_cap = 4;
  s.max_cap = 6;
  // colength 100: the staircase reaches degree 18
  EXPECT_THROW(standard_basis({pure(2, 0, 10), pure(2, 1, 10) + x * y * y}, s), CapExceeded);
  (void)y;
}

TEST(Colength, Examples) {
  auto x = Polynomial::variable(2, 0), y = Polynomial::variable(2, 1);
  EXPECT_FALSE(colength(standard_basis({x})).has_value());
  for (unsigned k = 1; k <= 4; ++k)
    for (unsigned l = 1; l <= 4; ++l)
      EXPECT_EQ(colength(standard_basis({pure(2, 0, k), pure(2, 1, l)})), std::optional<std::size_t>(k * l));
  (void)y;
}

TEST(Colength, ProductOfRandomExponents) {
  Rng rng(21);
  for (int trial = 0; trial < 20; ++trial) {
    std::size_t n = static_cast<std::size_t>(rng.uniform(1, 3));
    std::vector<Polynomial> gens;
    std::size_t product = 1;
    for (std::size_t i = 0; i < n; ++i) {
      unsigned a = static_cast<unsigned>(rng.uniform(1, 4));
      product *= a;
      gens.push_back(pure(n, i, a));
    }
    ASSERT_EQ(colength(standard_basis(gens)), std::optional<std::size_t>(product));
  }
}

TEST(Colength, MilnorNumbers) {
  auto x = Polynomial::variable(2, 0), y = Polynomial::variable(2, 1);
  // Jacobian ideal of x^3 + y^5 (E8 curve): mu = 8
  EXPECT_EQ(colength(standard_basis({Rational(3) * x * x, Rational(5) * pure(2, 1, 4)})), 8U);
  // x^2 y + y^4 (D5): mu = 5
  auto f = x * x * y + pure(2, 1, 4);
  EXPECT_EQ(colength(standard_basis({diff(f, 0), diff(f, 1)})), 5U);
  // non-isolated: x^2 y^2 has infinite Milnor number
  auto g = x * x * y * y;
  EXPECT_FALSE(colength(standard_basis({diff(g, 0), diff(g, 1)})).has_value());
}

TEST(Certification, StaircaseStableUnderCapPlusFour) {
  Rng rng(22);
  int checked = 0;
  while (checked < 15) {
    std::size_t n = static_cast<std::size_t>(rng.uniform(2, 3));
    std::vector<Polynomial> gens;
    for (std::size_t i = 0; i < n; ++i) gens.push_back(random_polynomial(rng, n, 1, 4, 4));
    StandardBasis sb;
    try {
      sb = standard_basis(gens);
    } catch (const CapExceeded&) {
      continue;
    }
    ASSERT_TRUE(sb.certified);
    auto again = standard_basis(gens, LocalOrder{}, sb.cap + 4);
    auto a = sb.staircase, b = again.staircase;
    std::sort(a.begin(), a.end(), LocalGreater{});
    std::sort(b.begin(), b.end(), LocalGreater{});
    ASSERT_EQ(a, b);
    ++checked;
  }
}

TEST(NormalForm, Examples) {
  Vars3 v;
  auto sb = standard_basis({v.x, v.y, v.z * v.z});
  auto h = v.one + v.y * v.z + v.z * v.z * v.z;
  EXPECT_TRUE(normal_form(v.x * h, sb).is_zero());
  EXPECT_EQ(normal_form(v.one, sb).poly, v.one);
  EXPECT_TRUE(normal_form(v.z * v.z * v.z, sb).is_zero());
  EXPECT_EQ(normal_form(v.z + v.x * v.z, sb).poly, v.z);
}

TEST(NormalForm, Linear) {
  Rng rng(23);
  auto x = Polynomial::variable(2, 0), y = Polynomial::variable(2, 1);
  auto sb = standard_basis({x * x + y * y * y, x * y});
  for (int trial = 0; trial < 50; ++trial) {
    auto p = random_polynomial(rng, 2, 0, 5);
    auto q = random_polynomial(rng, 2, 0, 5);
    auto c = Rational(rng.nonzero(5));
    ASSERT_EQ(normal_form(p + c * q, sb).poly, normal_form(p, sb).poly + c * normal_form(q, sb).poly);
  }
}

TEST(Lift, Examples) {
  Vars3 v;
  auto f = v.x * v.x + v.y * v.y + v.z * v.z;
  std::vector<Polynomial> gens{v.x, v.y, f};
  auto cert = lift(v.z * v.z, gens, 10);
  EXPECT_TRUE(cert.holds(gens));
  EXPECT_EQ(cert.coefficients[0].poly, -v.x);
  EXPECT_EQ(cert.coefficients[1].poly, -v.y);
  EXPECT_EQ(cert.coefficients[2].poly, v.one);

  auto x = Polynomial::variable(2, 0), y = Polynomial::variable(2, 1);
  std::vector<Polynomial> g{x * x + y * y * y, y * y};
  auto c1 = lift(g[0], g, 8);
  EXPECT_TRUE(c1.holds(g));
  EXPECT_EQ(c1.coefficients[0].poly, Polynomial::constant(2, 1));
  EXPECT_TRUE(c1.coefficients[1].is_zero());
  auto c2 = lift(x * g[0] + y * g[1], g, 8);
  EXPECT_TRUE(c2.holds(g));
  EXPECT_THROW(lift(x, g, 8), NotMember);
}

TEST(Lift, RandomRoundTrip) {
  Rng rng(24);
  auto x = Polynomial::variable(2, 0), y = Polynomial::variable(2, 1);
  std::vector<Polynomial> g{x * x + y * y * y, x * y + y * y * y * y};
  for (int trial = 0; trial < 20; ++trial) {
    auto t = random_polynomial(rng, 2, 0, 3) * g[0] + random_polynomial(rng, 2, 0, 3) * g[1];
    auto cert = lift(t, g, 9);
    ASSERT_TRUE(cert.holds(g));
  }
}

TEST(MinimalPower, Examples) {
  Vars3 v;
  auto f = v.x * v.x + v.y * v.y + v.z * v.z;
  auto r = minimal_power_membership(2, {v.x, v.y, f}, 10);
  EXPECT_EQ(r.power, 2U);
  EXPECT_TRUE(r.certificate.holds({v.x, v.y, f}));
  EXPECT_EQ(minimal_power_membership(0, {Polynomial::variable(1, 0)}, 5).power, 1U);
  auto x = Polynomial::variable(2, 0), y = Polynomial::variable(2, 1);
  EXPECT_EQ(minimal_power_membership(0, {x * x * x, y}, 5).power, 3U);
  EXPECT_THROW(minimal_power_membership(0, {x * x * x, y}, 2), PowerCapExceeded);
}

TEST(QuotientAlgebra, Examples) {
  Vars3 v;
  auto q = quotient_algebra(standard_basis({v.x, v.y, v.z * v.z}));
  ASSERT_EQ(q.dim(), 2U);
  RationalMatrix jordan(2, 2);
  jordan(1, 0) = 1;
  EXPECT_EQ(q.mult[2], jordan);
  EXPECT_TRUE(q.mult[0].is_zero());

  auto m = quotient_algebra(standard_basis({v.x, v.y, v.z}));
  EXPECT_EQ(m.dim(), 1U);
  for (const auto& a : m.mult) EXPECT_TRUE(a.is_zero());

  auto x = Polynomial::variable(2, 0), y = Polynomial::variable(2, 1);
  auto r = quotient_algebra(standard_basis({x * x, y * y}));
  std::vector<Monomial> expected{Monomial{0, 0}, Monomial{1, 0}, Monomial{0, 1}, Monomial{1, 1}};
  std::sort(expected.begin(), expected.end(), LocalGreater{});
  EXPECT_EQ(r.basis, expected);
  EXPECT_THROW(quotient_algebra(standard_basis({x})), NotZeroDimensional);
}

TEST(QuotientAlgebra, MultiplicationCommutesAndAnnihilates) {
  Rng rng(25);
  int checked = 0;
  while (checked < 10) {
    std::vector<Polynomial> gens;
    for (int i = 0; i < 3; ++i) gens.push_back(random_polynomial(rng, 3, 1, 3, 4));
    StandardBasis sb;
    try {
      sb = standard_basis(gens);
    } catch (const CapExceeded&) {
      continue;
    }
    if (!colength(sb).has_value() || sb.is_unit_ideal()) continue;
    auto q = quotient_algebra(sb);
    for (std::size_t i = 0; i < 3; ++i)
      for (std::size_t j = 0; j < 3; ++j) ASSERT_EQ(q.mult[i] * q.mult[j], q.mult[j] * q.mult[i]);
    for (const auto& g : gens) ASSERT_TRUE(multiplication_matrix(q, g).is_zero());
    ++checked;
  }
}

TEST(Regularity, Examples) {
  Vars3 v;
  std::vector<Polynomial> f{v.x * v.x + v.y * v.y + v.z * v.z};
  EXPECT_TRUE(is_regular_on_V(f, Rational(2) * v.y, Rational(2) * v.x));
  EXPECT_FALSE(is_regular_on_V(f, Polynomial(3), Rational(2) * v.x));
  auto x = Polynomial::variable(2, 0), y = Polynomial::variable(2, 1);
  EXPECT_TRUE(is_regular_on_V({}, y, x));
  EXPECT_FALSE(is_regular_on_V({}, x, x * y));
}
