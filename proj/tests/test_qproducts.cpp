#include <gtest/gtest.h>

#include "oracle.hpp"
#include "qseries/error.hpp"
#include "qseries/qproducts.hpp"

using namespace qseries;
using P = ParamMonomial;
using R = QRational;

namespace {

// (a q^(t/2); q^(k/2))_n by repeated multiplication
oracle::Poly naive_poch(const mpq_class& a, std::int64_t tick, std::int64_t step, int n, std::int64_t below) {
  oracle::Poly p = oracle::Poly::one();
  for (int i = 0; i < n; ++i) p = p.mul(oracle::Poly::one_minus(a, tick + i * step), below);
  return p;
}

bool any_part(int) { return true; }
bool rr_parts(int k) { return k % 5 == 1 || k % 5 == 4; }

}  // namespace

TEST(QPoch, FiniteMatchesNaiveProduct) {
  SeriesContext ctx(R(40), 2);
  for (int n = 0; n <= 7; ++n) {
    LaurentSeries s = qpoch(P(mpq_class(-3, 2), R(1, 2)), P::q(R(3, 2)), n, ctx);
    EXPECT_EQ(oracle::from_series(s, 80), naive_poch(mpq_class(-3, 2), 1, 3, n, 80)) << n;
  }
}

TEST(QPoch, ZeroLengthIsExactlyOne) {
  SeriesContext ctx(R(10));
  LaurentSeries s = qpoch(P::q(R(1)), P::q(R(1)), 0, ctx);
  EXPECT_EQ(s.to_string(false), "1");
}

TEST(QPoch, VanishingFactorGivesZero) {
  SeriesContext ctx(R(10));
  // (q^-2; q)_4 contains 1 - q^0
  EXPECT_TRUE(qpoch(P::q(R(-2)), P::q(R(1)), 4, ctx).is_zero());
  EXPECT_THROW(QProduct().den(P::q(R(-2)), 4).eval(ctx), NotAUnitError);
}

TEST(QPoch, NegativeIndex) {
  // (a;q)_{-r} = 1 / (a q^{-r}; q)_r
  SeriesContext ctx(R(30), 1);
  P a(mpq_class(5), R(2));
  for (int r = 1; r <= 5; ++r) {
    LaurentSeries lhs = qpoch(a, P::q(R(1)), -r, ctx);
    LaurentSeries rhs = qpoch(a * P::q(R(-r)), P::q(R(1)), r, ctx).inverse();
    EXPECT_TRUE(equal_up_to(lhs, rhs, R(30)).equal) << r;
  }
}

TEST(QPoch, EulerPentagonalNumberTheorem) {
  SeriesContext ctx(R(100), 1);
  LaurentSeries s = qpoch_inf(P::q(R(1)), P::q(R(1)), ctx);
  oracle::Poly expect;
  for (int k = -10; k <= 10; ++k) {
    int e = k * (3 * k - 1) / 2;
    if (e < 100) expect.add(k % 2 == 0 ? 1 : -1, 2 * e);
  }
  EXPECT_EQ(oracle::from_series(s, 200), expect);
  EXPECT_EQ(s.order_ticks(), 100);
}

TEST(QPoch, PartitionsAndRogersRamanujanProducts) {
  const int n = 60;
  SeriesContext ctx(R(n), 1);
  LaurentSeries gen = qpoch_inf(P::q(R(1)), P::q(R(1)), ctx).inverse();
  auto p = oracle::restricted_partitions(n, any_part);
  for (int k = 0; k < n; ++k) EXPECT_EQ(gen.coeff(R(k)).rational_part(), p[k]) << k;

  LaurentSeries rr = QProduct(P::q(R(5))).den_inf(P::q(R(1))).den_inf(P::q(R(4))).eval(ctx);
  auto g = oracle::restricted_partitions(n, rr_parts);
  for (int k = 0; k < n; ++k) EXPECT_EQ(rr.coeff(R(k)).rational_part(), g[k]) << k;
}

TEST(QPoch, QBinomialTheoremAtTerminatingArgument) {
  // (x;q)_n = sum_k [n,k] (-x)^k q^(k(k-1)/2), [n,k] from the q-Pascal rule
  SeriesContext ctx(R(60), 1);
  const int n = 6;
  std::vector<std::vector<oracle::Poly>> binom(n + 1, std::vector<oracle::Poly>(n + 1));
  for (int i = 0; i <= n; ++i) {
    binom[i][0] = binom[i][i] = oracle::Poly::one();
    for (int k = 1; k < i; ++k)
      binom[i][k] = binom[i - 1][k - 1] + binom[i - 1][k].mul(oracle::Poly::monomial(1, 2 * k));
  }
  oracle::Poly expect;
  for (int k = 0; k <= n; ++k)
    expect = expect + binom[n][k].mul(oracle::Poly::monomial(k % 2 ? -1 : 1, 2 * (k + k * (k - 1) / 2)));
  EXPECT_EQ(oracle::from_series(qpoch(P::q(R(1)), P::q(R(1)), n, ctx), 120), expect);
}

TEST(QPoch, RatioIdentityForNegativePowers) {
  SeriesContext ctx(R(40), 1);
  for (int n = 0; n <= 8; ++n)
    for (int j = 0; j <= n; ++j) EXPECT_TRUE(qpoch_ratio_identity_check(n, j, ctx).equal) << n << " " << j;
}

TEST(QPoch, SubstitutedBases) {
  // (q; -q)_inf with q -> -q is (-q; q)_inf with alternating signs; compare
  // against the naive product.
  SeriesContext ctx(R(30), 1);
  LaurentSeries s = qpoch_inf(P(mpq_class(-1), R(1)), P(mpq_class(-1), R(1)), ctx);
  oracle::Poly expect = oracle::Poly::one();
  for (int i = 1; i < 30; ++i) expect = expect.mul(oracle::Poly::one_minus(i % 2 ? -1 : 1, 2 * i), 60);
  EXPECT_EQ(oracle::from_series(s, 60), expect);
}

TEST(Theta, SeriesAgainstDirectBilateralSum) {
  SeriesContext ctx(R(50), 2);
  struct Case {
    R r, s;
    Sign sign;
  };
  for (auto c : {Case{R(1), R(1), Sign::Plus}, Case{R(3, 2), R(1, 2), Sign::Minus}, Case{R(4), R(-1), Sign::Plus}}) {
    oracle::Poly expect;
    for (int n = -40; n <= 40; ++n) {
      R e = c.r * R(n * n) + c.s * R(n);
      std::int64_t tick = (e * R(2)).num();
      if (tick < 100) expect.add(c.sign == Sign::Minus && n % 2 ? -1 : 1, tick);
    }
    EXPECT_EQ(oracle::from_series(theta_series(c.r, c.s, c.sign, ctx), 100), expect);
  }
  EXPECT_THROW(theta_series(R(0), R(1), Sign::Plus, ctx), DivergentError);
}

TEST(Theta, TripleProduct) {
  // sum sign^n q^(r n^2 + (s - r) n) = (-sign q^s, -sign q^(2r - s), q^(2r); q^(2r))
  SeriesContext ctx(R(60), 2);
  const std::pair<R, R> cases[] = {{R(8), R(2)}, {R(4), R(3)}, {R(4), R(1)}, {R(5, 2), R(1, 2)}, {R(1), R(1)}};
  for (auto [r, s] : cases) {
    for (Sign sign : {Sign::Plus, Sign::Minus}) {
      Sign product_sign = sign == Sign::Plus ? Sign::Minus : Sign::Plus;
      auto c = equal_up_to(theta_series(r, s - r, sign, ctx), theta_product(s, r, product_sign, ctx), R(60));
      EXPECT_TRUE(c.equal) << r.to_string() << " " << s.to_string();
    }
  }
}

TEST(Theta, ProductWithVanishingFactorIsZero) {
  SeriesContext ctx(R(20));
  EXPECT_TRUE(theta_product(R(0), R(2), Sign::Plus, ctx).is_zero());
}

TEST(FalseTheta, OneSidedSumsAndFactoredForm) {
  SeriesContext ctx(R(60), 2);
  // r = 8, s = 4: the right side of the n >= 0 formula for eqaq2
  oracle::Poly expect;
  for (int n = 0; n < 10; ++n) {
    if (8 * n * n + 4 * n < 60) expect.add(1, 2 * (8 * n * n + 4 * n));
    if (n >= 1 && 8 * n * n - 4 * n < 60) expect.add(-1, 2 * (8 * n * n - 4 * n));
  }
  EXPECT_EQ(oracle::from_series(false_theta_series(R(8), R(4), Sign::Plus, ctx), 120), expect);
  for (auto [r, s] : {std::pair{R(6), R(2)}, {R(3), R(1)}, {R(5, 2), R(1, 2)}}) {
    auto c = equal_up_to(false_theta_series(r, s, Sign::Plus, ctx), false_theta_factored(r, s, ctx), R(60));
    EXPECT_TRUE(c.equal) << r.to_string() << " " << s.to_string();
  }
}

TEST(FalseTheta, EqualParameters) {
  // r = s, where the factored form breaks down; the one-sided sums do not
  SeriesContext ctx(R(30), 1);
  LaurentSeries s = false_theta_series(R(2), R(2), Sign::Plus, ctx);
  oracle::Poly expect;
  for (int n = 0; n < 5; ++n) {
    if (2 * n * n + 2 * n < 30) expect.add(1, 2 * (2 * n * n + 2 * n));
    if (n >= 1 && 2 * n * n - 2 * n < 30) expect.add(-1, 2 * (2 * n * n - 2 * n));
  }
  EXPECT_EQ(oracle::from_series(s, 60), expect);
}
