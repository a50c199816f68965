#include <gtest/gtest.h>

#include "fixtures.hpp"
#include "oracle.hpp"
#include "qseries/error.hpp"
#include "qseries/hypergeom.hpp"

using namespace qseries;
using P = ParamMonomial;
using R = QRational;

namespace {

LaurentSeries mono(const P& p, const SeriesContext& ctx) { return LaurentSeries::monomial(p, ctx); }

bool same(const SidesFn& f, const SeriesContext& ctx) { return compare_sides(f, ctx).equal; }

// Brute-force sigma_k over subsets, then the numerator of K as an oracle
// polynomial; rational coefficients, integer exponents only.
oracle::Poly op(const P& m) { return oracle::Poly::monomial(m.coeff().rational_part(), 2 * m.exponent().num()); }

}  // namespace

TEST(Summation, UnilateralSquares) {
  SeriesContext ctx(R(50), 1);
  FunctionTerms g([](std::int64_t n, const SeriesContext& c) { return mono(P::q(R(n * n)), c); });
  LaurentSeries s = sum_unilateral(g, ctx);
  EXPECT_EQ(s.to_string(), "1 + q + q^4 + q^9 + q^16 + q^25 + q^36 + q^49 + O(q^50)");
}

TEST(Summation, ConstantTermsDoNotConverge) {
  SeriesContext ctx(R(10), 1);
  FunctionTerms g([](std::int64_t, const SeriesContext& c) { return LaurentSeries::one(c.ring(), c.order_ticks()); });
  EXPECT_THROW(sum_unilateral(g, ctx, SumPolicy{4, 200}), NonConvergentError);
}

TEST(Summation, BilateralMatchesTheta) {
  SeriesContext ctx(R(60), 1);
  FunctionTerms g([](std::int64_t n, const SeriesContext& c) { return mono(P::q(R(n * n + n)), c); });
  EXPECT_TRUE(equal_up_to(sum_bilateral(g, ctx), theta_series(R(1), R(1), Sign::Plus, ctx), R(60)).equal);
}

TEST(Summation, FiniteRange) {
  SeriesContext ctx(R(20), 1);
  FunctionTerms g([](std::int64_t n, const SeriesContext& c) { return mono(P(mpq_class(n), R(0)), c); });
  EXPECT_EQ(sum_range(g, 1, 4, ctx).to_string(false), "10");
}

TEST(Summation, AndrewsTermsAgainstNaiveTerms) {
  // a = 2q, b = -3q: every summand rebuilt from naive products and inverses
  const int below = 60;  // ticks
  SeriesContext ctx(R(30), 2);
  mpq_class a = 2, b = -3;
  oracle::Poly sum;
  for (int n = 0; n < 12; ++n) {
    oracle::Poly num = oracle::Poly::monomial(1, n * (n + 1));
    oracle::Poly den = oracle::Poly::one();
    for (int i = 0; i < n; ++i) {
      num = num.mul(oracle::Poly::one_minus(a, 2 + 2 * i), below).mul(oracle::Poly::one_minus(b, 2 + 2 * i), below);
      den = den.mul(oracle::Poly::one_minus(1, 2 + 2 * i), below).mul(oracle::Poly::one_minus(a * b, 6 + 4 * i), below);
    }
    sum = sum + num.mul(oracle::inverse(den, below), below);
  }
  auto sides = q_gauss_andrews_sides(P(a, R(1)), P(b, R(1)), ctx);
  EXPECT_EQ(oracle::from_series(sides.lhs, below), sum);
  EXPECT_EQ(oracle::from_series(sides.rhs, below), sum);
}

TEST(NamedSums, JacksonSixPhiFive) {
  std::mt19937_64 rng(11);
  SeriesContext ctx(R(50), 2);
  for (int i = 0; i < 5; ++i) {
    auto p = fixtures::six_phi_five(rng);
    EXPECT_TRUE(same([&](const SeriesContext& c) { return jackson_6phi5_sides(p[0], p[1], p[2], p[3], c); }, ctx));
  }
}

TEST(NamedSums, BaileySixPsiSix) {
  std::mt19937_64 rng(12);
  SeriesContext ctx(R(50), 2);
  for (int i = 0; i < 5; ++i) {
    auto p = fixtures::six_psi_six(rng);
    EXPECT_TRUE(
        same([&](const SeriesContext& c) { return bailey_6psi6_sides(p[0], p[1], p[2], p[3], p[4], c); }, ctx));
  }
}

TEST(NamedSums, SixPsiSixReducesToSixPhiFiveAtEEqualsA) {
  SeriesContext ctx(R(40), 2);
  P a(mpq_class(2), R(1)), b(mpq_class(3), R(0)), c(mpq_class(-5), R(0)), d(mpq_class(1, 7), R(1, 2));
  auto psi = bailey_6psi6_sides(a, b, c, d, a, ctx);
  auto phi = jackson_6phi5_sides(a, b, c, d, ctx);
  EXPECT_TRUE(equal_up_to(psi.lhs, phi.lhs, R(40)).equal);
  EXPECT_TRUE(equal_up_to(psi.rhs, phi.rhs, R(40)).equal);
}

TEST(NamedSums, SixPsiSixArgumentWithoutPositiveValuationDiverges) {
  SeriesContext ctx(R(20), 1);
  P a(mpq_class(2), R(1)), b(mpq_class(3), R(1)), c(mpq_class(5), R(1)), d(mpq_class(7), R(1)),
      e(mpq_class(11), R(1));
  EXPECT_THROW(bailey_6psi6_sides(a, b, c, d, e, ctx, SumPolicy{4, 300}), Error);
}

TEST(NamedSums, QGauss) {
  std::mt19937_64 rng(13);
  SeriesContext ctx(R(50), 2);
  for (int i = 0; i < 5; ++i) {
    auto p = fixtures::andrews(rng);
    EXPECT_TRUE(same([&](const SeriesContext& c) { return q_gauss_andrews_sides(p[0], p[1], c); }, ctx));
    auto h = fixtures::heine(rng);
    EXPECT_TRUE(same([&](const SeriesContext& c) { return q_gauss_heine_sides(h[0], h[1], c); }, ctx));
  }
}

TEST(NamedSums, PfaffSaalschutz) {
  std::mt19937_64 rng(14);
  SeriesContext ctx(R(50), 2);
  for (int i = 0; i < 5; ++i) {
    auto p = fixtures::saalschutz(rng);
    for (int n = 0; n <= 6; ++n) EXPECT_TRUE(q_pfaff_saalschutz_check(p[0], p[1], p[2], n, ctx).equal) << n;
  }
}

TEST(Chu, TenPsiTen) {
  std::mt19937_64 rng(15);
  SeriesContext ctx(R(40), 2);
  for (int i = 0; i < 5; ++i) {
    auto p = fixtures::chu(rng);
    EXPECT_TRUE(same(
        [&](const SeriesContext& c) { return chu_10psi10_sides(p[0], p[1], p[2], p[3], p[4], p[5], p[6], c); }, ctx));
  }
}

TEST(Chu, SplitAndBilateralFormsAgree) {
  std::mt19937_64 rng(16);
  SeriesContext ctx(R(30), 2);
  auto p = fixtures::chu(rng);
  EXPECT_TRUE(same(
      [&](const SeriesContext& c) {
        auto s = chu_10psi10_sides(p[0], p[1], p[2], p[3], p[4], p[5], p[6], c);
        return SidePair{s.lhs, chu_10psi10_bilateral(p[0], p[1], p[2], p[3], p[4], p[5], p[6], c)};
      },
      ctx));
}

TEST(Chu, CorollaryAndGeneralPrefactorAgree) {
  std::mt19937_64 rng(17);
  SeriesContext ctx(R(40), 2);
  for (int i = 0; i < 5; ++i) {
    auto p = fixtures::chu_b_ac(rng);
    const P b = p[0] / p[1];
    auto cor = [&](const SeriesContext& c) { return chu_corollary_b_ac(p[0], p[1], p[2], p[3], p[4], p[5], c); };
    EXPECT_TRUE(same(cor, ctx));
    EXPECT_TRUE(same(
        [&](const SeriesContext& c) {
          return SidePair{cor(c).rhs, chu_10psi10_sides(p[0], b, p[1], p[2], p[3], p[4], p[5], c).rhs};
        },
        ctx));
  }
}

TEST(Chu, NegativeIndexTermsVanishAtEEqualsA) {
  SeriesContext ctx(R(30), 2);
  // val(bcde) must stay below 2 val(a) - 1 for the n < 0 half to converge
  P a(mpq_class(2), R(4)), b(mpq_class(3), R(0)), c(mpq_class(5), R(1)), d(mpq_class(-7), R(1)),
      u(mpq_class(13), R(1, 2)), v(mpq_class(1, 17), R(1));
  auto s = chu_10psi10_sides(a, b, c, d, a, u, v, ctx);
  auto full = chu_10psi10_bilateral(a, b, c, d, a, u, v, ctx);
  EXPECT_TRUE(equal_up_to(s.lhs, full, R(30)).equal);
  EXPECT_TRUE(equal_up_to(s.lhs, s.rhs, R(30)).equal);
}

TEST(ChuK, AgainstBruteForceSymmetricFunctions) {
  // K * denominators == numerator, with the numerator rebuilt from sigma_k
  // computed over all subsets.
  SeriesContext ctx(R(40), 1);
  P a(mpq_class(2), R(3)), u(mpq_class(-3), R(1)), v(mpq_class(5), R(2)), q = P::q(R(1));
  std::vector<P> bcde{P(mpq_class(7), R(1)), P(mpq_class(-1, 11), R(1)), P(mpq_class(13), R(0)),
                      P(mpq_class(1, 2), R(2))};
  std::array<oracle::Poly, 5> sigma;
  sigma[0] = oracle::Poly::one();
  for (int mask = 1; mask < 16; ++mask) {
    P m = P::constant(1);
    int k = 0;
    for (int i = 0; i < 4; ++i)
      if (mask >> i & 1) m = m * bcde[i], ++k;
    sigma[k] = sigma[k] + op(m);
  }
  const int below = 80;
  auto A = op(a), U = op(u), V = op(v), Q = op(q), one = oracle::Poly::one();
  auto m = [&](const oracle::Poly& x, const oracle::Poly& y) { return x.mul(y, 400); };
  oracle::Poly num = m(m(m(m(U, V), sigma[3] - m(A, sigma[1])), m(Q, sigma[3]) - m(A, sigma[1])), m(A, A)) +
                     m(m(m(m(one - Q, m(U, V)), m(A, A) - sigma[4]), m(A, A) - m(sigma[2], A) + sigma[4]), A) +
                     m(m(m(m(U + V, A + m(U, V)), sigma[3] - m(A, sigma[1])), m(A, A) - m(Q, sigma[4])), A) +
                     m(m(m(m(U, U) + A, m(V, V) + A), m(A, A) - sigma[4]), m(A, A) - m(Q, sigma[4]));
  oracle::Poly den = m(m(m(m(m(m(A, A) - sigma[4], m(A, A) - m(sigma[4], Q)), one - U), A - U), one - V), A - V);
  LaurentSeries k = chu_K(a, bcde[0], bcde[1], bcde[2], bcde[3], u, v, q, ctx);
  EXPECT_EQ(oracle::from_series(k, 1000).mul(den, below), num.truncated(below));
}

TEST(ChuK, SingularDenominatorIsNamed) {
  SeriesContext ctx(R(20), 1);
  // a^2 = bcde
  P a = P::q(R(2)), b = P::q(R(1));
  try {
    chu_K(a, b, b, b, b, P::constant(3), P::constant(5), P::q(R(1)), ctx);
    FAIL() << "expected SingularKError";
  } catch (const SingularKError& e) {
    EXPECT_NE(std::string(e.what()).find("a^2 - bcde"), std::string::npos);
  }
}
