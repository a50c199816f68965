#include <gtest/gtest.h>

#include <set>

#include "oracle.hpp"
#include "qseries/bailey.hpp"
#include "qseries/error.hpp"

using namespace qseries;
using P = ParamMonomial;
using R = QRational;

namespace {

// The unit pair relative to a = 1: beta_n = [n = 0],
// alpha_n = (-1)^n q^(n(n-1)/2) (1 + q^n) for n >= 1.
BaileyPair unit_pair() {
  auto alpha = [](std::int64_t n, const SeriesContext& ctx) {
    if (n == 0) return LaurentSeries::one(ctx.ring(), ctx.order_ticks());
    mpq_class s = n % 2 ? -1 : 1;
    return LaurentSeries::monomial(P(s, R(n * (n - 1) / 2)), ctx) +
           LaurentSeries::monomial(P(s, R(n * (n + 1) / 2)), ctx);
  };
  auto beta = [](std::int64_t n, const SeriesContext& ctx) {
    return n == 0 ? LaurentSeries::one(ctx.ring(), ctx.order_ticks()) : LaurentSeries::zero(ctx.ring());
  };
  return BaileyPair("unit", P::constant(1), Variable{}, {}, alpha, beta, 1, {});
}

}  // namespace

TEST(Catalog, IdsAreUniqueAndComplete) {
  const auto& cat = pair_catalog();
  EXPECT_GE(cat.size(), 36u);
  std::set<std::string> ids;
  for (const auto& d : cat) EXPECT_TRUE(ids.insert(d.id).second) << d.id;
  for (const char* id : {"chubp1", "Sgen1", "chubp22a", "Sgen7", "sgen660", "I4", "H12", "chubp46a"})
    EXPECT_TRUE(ids.count(id)) << id;
  EXPECT_THROW(find_pair("nope"), UnknownIdError);
}

TEST(Catalog, EveryPairPassesAtSampledSpecializations) {
  std::mt19937_64 rng(2024);
  SeriesContext ctx(R(30), 2);
  for (const auto& d : pair_catalog()) {
    Assignment s = d.sample ? d.sample(rng) : Assignment{};
    auto rep = check_pair(*d.make(s), 6, ctx);
    EXPECT_TRUE(rep.pass) << d.id << " " << format_assignment(s) << " " << rep.error;
  }
}

TEST(Catalog, MissingParameterIsRejected) {
  EXPECT_THROW(find_pair("chubp1").make({}), InvalidSpecializationError);
}

TEST(Catalog, RandomAssignmentsUseDistinctPrimes) {
  std::mt19937_64 a(5), b(5);
  std::vector<std::string> names{"a", "b", "c", "d", "e"};
  Assignment x = random_assignment(names, a, {R(1), R(1, 2)});
  EXPECT_EQ(format_assignment(x), format_assignment(random_assignment(names, b, {R(1), R(1, 2)})));
  std::set<std::string> magnitudes;
  for (const auto& [k, m] : x) {
    mpq_class c = abs(m.coeff().rational_part());
    magnitudes.insert((c > 1 ? c : mpq_class(1 / c)).get_str());
  }
  EXPECT_EQ(magnitudes.size(), names.size());
}

TEST(UnitPair, SatisfiesTheDefiningRelation) {
  SeriesContext ctx(R(40), 1);
  auto rep = check_pair(unit_pair(), 8, ctx);
  EXPECT_TRUE(rep.pass);
}

TEST(UnitPair, TransformGivesEulerPentagonalTheorem) {
  // y, z -> infinity: 1 = sum q^(n^2) alpha_n / (q;q)_inf, so
  // sum q^(n^2) alpha_n = (q;q)_inf, checked against the pentagonal numbers
  SeriesContext ctx(R(60), 1);
  BaileyPair p = unit_pair();
  SidePair s = spec_yz_inf(p, ctx);
  EXPECT_TRUE(equal_up_to(s.lhs, s.rhs, R(60)).equal);
  LaurentSeries q_inf = s.rhs * QProduct().num_inf(P::q(R(1))).eval(ctx);
  oracle::Poly expect;
  for (int k = -10; k <= 10; ++k) {
    int e = k * (3 * k - 1) / 2;
    if (e < 60) expect.add(k % 2 ? -1 : 1, 2 * e);
  }
  EXPECT_EQ(oracle::from_series(q_inf, 120), expect);
}

TEST(UnitPair, TerminatingTransformIsConsistent) {
  SeriesContext ctx(R(30), 1);
  BaileyPair p = unit_pair();
  for (std::int64_t n = 0; n <= 4; ++n) {
    SidePair s = bailey_transform_sides(p, TransformSpec{P(mpq_class(3), R(1)), P(mpq_class(-5), R(1)), n}, ctx);
    EXPECT_TRUE(equal_up_to(s.lhs, s.rhs, R(30)).equal) << n;
  }
}

TEST(Pairs, CorruptedBetaIsCaught) {
  SeriesContext ctx(R(30), 1);
  BaileyPair good = unit_pair();
  BaileyPair bad("bad", P::constant(1), Variable{}, {},
                 [&](std::int64_t n, const SeriesContext& c) { return good.alpha(n, c); },
                 [&](std::int64_t n, const SeriesContext& c) {
                   LaurentSeries b = good.beta(n, c);
                   return n == 3 ? b + LaurentSeries::monomial(P::q(R(7)), c) : b;
                 },
                 1, {});
  auto rep = check_pair(bad, 5, ctx);
  EXPECT_FALSE(rep.pass);
  ASSERT_EQ(rep.rows.size(), 6u);
  EXPECT_TRUE(rep.rows[2].pass);
  EXPECT_FALSE(rep.rows[3].pass);
  EXPECT_EQ(rep.rows[3].cmp.exponent, R(7));
}

TEST(Pairs, VanishingDenominatorNamesTheParameters) {
  SeriesContext ctx(R(20), 1);
  // a = q^-1 makes (aq;q)_n vanish
  Assignment s{{"a", P::q(R(-1))}, {"b", P(mpq_class(3), R(1))}, {"c", P(mpq_class(5), R(1))}};
  try {
    check_pair(*find_pair("Sgen1").make(s), 3, ctx);
    FAIL() << "expected NotAUnitError";
  } catch (const NotAUnitError& e) {
    std::string what = e.what();
    EXPECT_NE(what.find("Sgen1"), std::string::npos) << what;
    EXPECT_NE(what.find("a=q^-1"), std::string::npos) << what;
  }
}

TEST(Variable, SubstitutedVariables) {
  Variable v = Variable::power(2);
  EXPECT_EQ(v.x, P::q(R(2)));
  EXPECT_EQ(v.pow(R(3, 2)), P::q(R(3)));
  Variable minus{P(mpq_class(-1), R(1)), P(CycloCoeff::zeta(4), R(1, 2))};
  EXPECT_EQ(minus.pow(R(1, 2)), P(CycloCoeff::zeta(4), R(1, 2)));
  EXPECT_EQ(minus.pow(R(2)), P::q(R(2)));
}
