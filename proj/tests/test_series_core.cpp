#include <gtest/gtest.h>

#include <complex>
#include <numbers>

#include "oracle.hpp"
#include "qseries/error.hpp"
#include "qseries/laurent.hpp"

using namespace qseries;
using P = ParamMonomial;
using R = QRational;

namespace {

std::complex<double> numeric(const CycloCoeff& c) {
  const int m = c.cyclotomic_order();
  const std::complex<double> z = std::polar(1.0, 2 * std::numbers::pi / m);
  std::complex<double> v = 0, zk = 1;
  for (const auto& a : c.coeffs()) {
    v += a.get_d() * zk;
    zk *= z;
  }
  return v;
}

LaurentSeries poly(std::initializer_list<std::pair<std::int64_t, long>> terms, std::int64_t order, int d = 1) {
  std::vector<GridTerm> t;
  for (auto [tick, c] : terms) t.push_back({tick, CycloCoeff(1, mpq_class(c))});
  return LaurentSeries::from_terms(Ring{d, 1}, t, order);
}

}  // namespace

TEST(Rational, ArithmeticAndParsing) {
  EXPECT_EQ(R(2, 4), R(1, 2));
  EXPECT_EQ(R(1, -3), R(-1, 3));
  EXPECT_EQ(R(1, 2) + R(1, 3), R(5, 6));
  EXPECT_EQ(R(-7, 2).floor(), -4);
  EXPECT_EQ(R::parse("-1/2"), R(-1, 2));
  EXPECT_EQ(R::parse("+4"), R(4));
  EXPECT_EQ(R(3, 4).to_string(), "3/4");
  EXPECT_LT(R(-1, 2), R(1, 3));
  EXPECT_THROW(R::parse("1/0"), Error);
  EXPECT_THROW(R::parse("x"), Error);
}

TEST(Cyclotomic, RootsOfUnityAgainstComplexNumbers) {
  for (int m : {1, 2, 3, 4, 6, 8, 12}) {
    EXPECT_TRUE(CycloCoeff::zeta(m, m).is_one()) << m;
    // 1 + zeta + ... + zeta^(m-1) = 0 for m > 1
    CycloCoeff s(m, mpq_class(0));
    for (int j = 0; j < m; ++j) s = s + CycloCoeff::zeta(m, j);
    EXPECT_EQ(s.is_zero(), m > 1) << m;
    for (int j = -m; j <= 2 * m; ++j) {
      auto expect = std::polar(1.0, 2 * std::numbers::pi * j / m);
      EXPECT_NEAR(std::abs(numeric(CycloCoeff::zeta(m, j)) - expect), 0, 1e-12) << m << " " << j;
    }
  }
}

TEST(Cyclotomic, FieldOperationsMatchComplexNumbers) {
  const int m = 12;
  CycloCoeff a(m, {mpq_class(1), mpq_class(2, 3), mpq_class(0), mpq_class(-5)});
  CycloCoeff b(m, {mpq_class(-2), mpq_class(0), mpq_class(7, 2), mpq_class(1)});
  EXPECT_NEAR(std::abs(numeric(a * b) - numeric(a) * numeric(b)), 0, 1e-9);
  EXPECT_NEAR(std::abs(numeric(a / b) - numeric(a) / numeric(b)), 0, 1e-9);
  EXPECT_EQ(a * a.inverse(), CycloCoeff(m, mpq_class(1)));
  EXPECT_THROW(CycloCoeff(m, mpq_class(0)).inverse(), NotAUnitError);
  // i in Q(zeta_4) and in Q(zeta_8) are the same number
  EXPECT_EQ(CycloCoeff::zeta(4), CycloCoeff::zeta(8, 2));
  EXPECT_EQ(common_cyclotomic_order(4, 6), 12);
  EXPECT_THROW(CycloField::get(5), InvalidSpecializationError);
}

TEST(Monomial, AlgebraAndGrid) {
  P a(mpq_class(3), R(1, 2));
  EXPECT_EQ((a * a).to_string(), "9*q");
  EXPECT_EQ(a.pow(-2), P(mpq_class(1, 9), R(-1)));
  EXPECT_EQ((a * a).sqrt(), P(mpq_class(3), R(1, 2)));
  EXPECT_THROW(P(mpq_class(2), R(1)).sqrt(), GridError);
  EXPECT_THROW(P(mpq_class(0), R(1)), InvalidSpecializationError);
  EXPECT_THROW(to_grid(P::q(R(1, 3)), Ring{2, 1}), GridError);
  EXPECT_EQ(to_grid(P::q(R(3, 2)), Ring{2, 1}).tick, 3);
  EXPECT_THROW(SeriesContext(R(0)), InvalidSpecializationError);
  EXPECT_EQ(SeriesContext(R(5, 2), 2).order_ticks(), 5);
}

TEST(Laurent, GeometricSeriesInverse) {
  SeriesContext ctx(R(20), 1);
  LaurentSeries f = LaurentSeries::one(ctx.ring(), 20) - LaurentSeries::monomial(P::q(R(1)), ctx);
  LaurentSeries g = f.inverse();
  EXPECT_EQ(g.order_ticks(), 20);
  for (int k = 0; k < 20; ++k) EXPECT_TRUE(g.coeff(R(k)).is_one()) << k;
}

TEST(Laurent, ProductMatchesNaiveConvolution) {
  // (1 + 2q^(1/2) - 3q^2 + O(q^6)) * (q^(-1) + 5q^(3/2) + O(q^5)) on the half grid
  LaurentSeries a = poly({{0, 1}, {1, 2}, {4, -3}}, 12, 2);
  LaurentSeries b = poly({{-2, 1}, {3, 5}}, 10, 2);
  LaurentSeries p = a * b;
  // relative precision: min(v_a + o_b, v_b + o_a) = min(0 + 10, -2 + 12)
  EXPECT_EQ(p.order_ticks(), 10);
  oracle::Poly x, y;
  x.add(1, 0), x.add(2, 1), x.add(-3, 4);
  y.add(1, -2), y.add(5, 3);
  EXPECT_EQ(oracle::from_series(p, 10), x.mul(y, 10));
}

TEST(Laurent, InverseMatchesNaiveInverse) {
  SeriesContext ctx(R(30), 2);
  oracle::Poly x;
  x.add(2, 0), x.add(-1, 1), x.add(3, 5), x.add(mpq_class(1, 7), 9);
  std::vector<GridTerm> t;
  for (const auto& [tick, c] : x.c) t.push_back({tick, CycloCoeff(1, c)});
  LaurentSeries s = LaurentSeries::from_terms(ctx.ring(), t, ctx.order_ticks());
  EXPECT_EQ(oracle::from_series(s.inverse(), 60), oracle::inverse(x, 60));
  EXPECT_EQ(oracle::from_series(s.pow(-3), 60), oracle::inverse(x.mul(x).mul(x), 60));
}

TEST(Laurent, BinomialUpdatesKeepRelativePrecision) {
  SeriesContext ctx(R(15), 1);
  LaurentSeries s = LaurentSeries::one(ctx.ring(), 15);
  Ring r = ctx.ring();
  s.mul_binomial(to_grid(P::constant(1), r), to_grid(-P::q(R(3)), r));
  EXPECT_EQ(s.to_string(), "1 - q^3 + O(q^15)");
  s.div_binomial(to_grid(P::constant(1), r), to_grid(-P::q(R(3)), r));
  EXPECT_EQ(s.to_string(), "1 + O(q^15)");
  EXPECT_THROW(s.div_binomial(to_grid(P::constant(1), r), to_grid(P::constant(-1), r)), NotAUnitError);
}

TEST(Laurent, EqualUpToReportsFirstDifference) {
  LaurentSeries a = poly({{0, 1}, {3, 2}, {7, 1}}, 10);
  LaurentSeries b = poly({{0, 1}, {3, 2}, {7, -1}}, 10);
  Comparison c = equal_up_to(a, b, R(10));
  EXPECT_FALSE(c.equal);
  EXPECT_EQ(c.exponent, R(7));
  EXPECT_EQ(c.lhs, CycloCoeff(1, mpq_class(1)));
  EXPECT_EQ(c.rhs, CycloCoeff(1, mpq_class(-1)));
  EXPECT_TRUE(equal_up_to(a, b, R(7)).equal);
  EXPECT_THROW(equal_up_to(a, b, R(11)), InsufficientPrecisionError);
}

TEST(Laurent, ZeroIsNotAUnit) {
  SeriesContext ctx(R(10), 1);
  EXPECT_THROW(LaurentSeries::zero(ctx.ring(), 10).inverse(), NotAUnitError);
  LaurentSeries x = LaurentSeries::monomial(P::q(R(1)), ctx);
  EXPECT_THROW(x / (x - x), NotAUnitError);
}

TEST(Laurent, RingMismatchIsAnError) {
  LaurentSeries a = LaurentSeries::one(Ring{1, 1}, 5);
  LaurentSeries b = LaurentSeries::one(Ring{2, 1}, 10);
  EXPECT_THROW(a + b, RingMismatchError);
}

TEST(Laurent, CyclotomicCoefficients) {
  // (1 - i q)(1 + i q) = 1 + q^2
  SeriesContext ctx(R(10), 1, 4);
  P iq(CycloCoeff::zeta(4), R(1));
  LaurentSeries one = LaurentSeries::one(ctx.ring(), 10);
  LaurentSeries a = one - LaurentSeries::monomial(iq, ctx);
  LaurentSeries b = one + LaurentSeries::monomial(iq, ctx);
  EXPECT_EQ((a * b).to_string(), "1 + q^2 + O(q^10)");
}
