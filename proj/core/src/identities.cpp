#include "qseries/identities.hpp"

#include <algorithm>
#include <chrono>
#include <map>
#include <sstream>
#include <utility>

#include "qseries/error.hpp"
#include "qseries/qproducts.hpp"

namespace qseries {

namespace {

using P = ParamMonomial;
using R = QRational;

const P kOne = P::constant(1);
const P kMinus = P::constant(-1);

P q(R e) { return P::q(e); }
P qi(std::int64_t k) { return P::q(R(k)); }
P mq(const mpq_class& c, R e) { return P(c, e); }
P cq(int m, long j, R e) { return P(CycloCoeff::zeta(m, j), e); }

LaurentSeries one_at(const SeriesContext& ctx) { return LaurentSeries::one(ctx.ring(), ctx.order_ticks()); }

const P& param(const Assignment& s, const std::string& name) {
  auto it = s.find(name);
  if (it == s.end()) throw InvalidSpecializationError("missing parameter " + name);
  return it->second;
}

// N of the terminating forms, carried as a constant monomial.
std::int64_t int_param(const Assignment& s, const std::string& name, std::int64_t lo) {
  const P& p = param(s, name);
  const CycloCoeff& c = p.coeff();
  if (!p.exponent().is_zero() || !c.is_rational() || c.rational_part().get_den() != 1 ||
      c.rational_part() < lo || c.rational_part() > 1000)
    throw InvalidSpecializationError(name + " must be an integer in [" + std::to_string(lo) + ", 1000], got " +
                                     p.to_string());
  return c.rational_part().get_num().get_si();
}

LaurentSeries sum(TermBuilder& t, const SeriesContext& ctx, std::int64_t from = 0) {
  return sum_from(t, from, ctx);
}

// sum_{r >= from} sign (+-1)^r q^(a r^2 + b r + c), a > 0.
struct Quad {
  R a, b, c;
  int sign = 1;
  bool alternating = false;
  std::int64_t from = 0;
};

LaurentSeries quad_sum(const std::vector<Quad>& qs, const SeriesContext& ctx) {
  const Ring ring = ctx.ring();
  const std::int64_t w = ctx.order_ticks();
  std::vector<GridTerm> terms;
  for (const Quad& t : qs) {
    for (std::int64_t r = t.from;; ++r) {
      R e = t.a * R(r) * R(r) + t.b * R(r) + t.c;
      bool rising = t.a * R(2 * r) + t.b > R(0);
      if (e >= R(w, ctx.grid_denominator)) {
        if (rising) break;
        continue;
      }
      int s = t.sign * (t.alternating && (r % 2 != 0) ? -1 : 1);
      terms.push_back(to_grid(P(mpq_class(s), e), ring));
    }
  }
  return LaurentSeries::from_terms(ring, terms, w);
}

// q^(a r^2 + b r + c) (1 - q^(d r + e)) summed over r >= from.
std::vector<Quad> ft(R a, R b, R c, R d, R e, int sign = 1, bool alt = false, std::int64_t from = 0) {
  return {Quad{a, b, c, sign, alt, from}, Quad{a, b + d, c + e, -sign, alt, from}};
}

std::vector<Quad> cat(std::initializer_list<std::vector<Quad>> parts) {
  std::vector<Quad> out;
  for (const auto& p : parts) out.insert(out.end(), p.begin(), p.end());
  return out;
}

LaurentSeries poly(std::initializer_list<std::pair<int, R>> terms, const SeriesContext& ctx) {
  std::vector<GridTerm> gt;
  for (const auto& [c, e] : terms) gt.push_back(to_grid(P(mpq_class(c), e), ctx.ring()));
  return LaurentSeries::from_terms(ctx.ring(), gt, ctx.order_ticks());
}

LaurentSeries div_by(LaurentSeries s, const P& t0, const P& t1) {
  s.div_binomial(to_grid(t0, s.ring()), to_grid(t1, s.ring()));
  return s;
}

LaurentSeries mul_by(LaurentSeries s, const P& t0, const P& t1) {
  s.mul_binomial(to_grid(t0, s.ring()), to_grid(t1, s.ring()));
  return s;
}

// Random monomials with distinct prime coefficients, one exponent list per name.
Assignment sample_with(const std::vector<std::pair<std::string, std::vector<R>>>& spec, std::mt19937_64& rng) {
  std::vector<std::string> names;
  for (const auto& s : spec) names.push_back(s.first);
  Assignment a = random_assignment(names, rng, {R(0)});
  for (const auto& [name, exps] : spec) {
    std::uniform_int_distribution<std::size_t> pick(0, exps.size() - 1);
    a[name] = P(a[name].coeff(), exps[pick(rng)]);
  }
  return a;
}

// ---------------------------------------------------------------------------
// General identities.

SidePair geneqr1(const Assignment& s, const SeriesContext& ctx) {
  const P z = param(s, "z");
  TermBuilder t;
  t.num(q(1) / z).num(z).quadratic(1, 0).den(q(1), 2, 0);
  QProduct r;
  r.num_inf(q(1) * z, qi(3)).num_inf(q(2) / z, qi(3)).num_inf(qi(3), qi(3)).den_inf(q(1));
  return {sum(t, ctx), r.eval(ctx)};
}

SidePair geneqr2(const Assignment& s, const SeriesContext& ctx) {
  const P z = param(s, "z");
  TermBuilder t;
  t.num(q(2) / z, qi(2), 1, 0).num(z, qi(2), 1, 0).quadratic(1, 0).den(q(1), qi(2), 1, 0).den(qi(4), qi(4), 1, 0);
  QProduct r;
  r.num_inf(-q(1), qi(2)).den_inf(qi(2), qi(2));
  r.num_inf(q(1) * z, qi(4)).num_inf(q(3) / z, qi(4)).num_inf(qi(4), qi(4));
  return {sum(t, ctx), r.eval(ctx)};
}

// Written in the base x = q^k so the Slater rows need no substitution.
SidePair geneq1_in(const P& x, const P& z, const SeriesContext& ctx) {
  TermBuilder t(x);
  t.num(x / z, 1, 1).num(z, 1, 0).quadratic(1, 1).den(x, 2, 1);
  const P x3 = x.pow(3);
  QProduct r(x);
  r.num_inf(x.pow(2) * z, x3).num_inf(x / z, x3).num_inf(x3, x3).den_inf(x, x);
  return {sum(t, ctx), r.eval(ctx)};
}

SidePair geneq1(const Assignment& s, const SeriesContext& ctx) { return geneq1_in(q(1), param(s, "z"), ctx); }

// ---------------------------------------------------------------------------
// Transformations.

SidePair c6a(const Assignment& s, const SeriesContext& ctx) {
  const P a = param(s, "a"), y = param(s, "y"), z = param(s, "z");
  TermBuilder l;
  l.num(y).num(z).num(a, qi(3), 1, 0).den(a, 2, 0).den(q(1)).power(a * q(1) / (y * z));
  QProduct pre;
  pre.num_inf(a * q(1) / y).num_inf(a * q(1) / z).den_inf(a * q(1)).den_inf(a * q(1) / (y * z));
  TermBuilder r;
  r.well_poised(a, qi(3))
      .num(y, 3, 0)
      .num(z, 3, 0)
      .power(a.pow(4) * (kMinus / (y * z)).pow(3))
      .quadratic(R(9, 2), R(3, 2))
      .den(a * q(1) / y, 3, 0)
      .den(a * q(1) / z, 3, 0)
      .den(qi(3), qi(3), 1, 0);
  return {sum(l, ctx), pre.eval(ctx) * sum(r, ctx)};
}

SidePair c66(const Assignment& s, const SeriesContext& ctx) {
  const P a = param(s, "a"), y = param(s, "y"), z = param(s, "z");
  TermBuilder l;
  l.num(y).num(z).num(-q(-1), qi(2), 1, 0).den(qi(2), qi(2), 1, 0).den(a * q(1), qi(2), 1, 0);
  l.power(a * q(2) / (y * z));
  QProduct pre;
  pre.num_inf(a * q(1) / y).num_inf(a * q(1) / z).den_inf(a * q(1)).den_inf(a * q(1) / (y * z));
  TermBuilder r;
  r.per_n([a](std::int64_t n) { return std::make_optional(std::make_pair(kOne, -(a * qi(4 * n)))); })
      .times_binomial(kOne, -a, true)
      .num(y, 2, 0)
      .num(z, 2, 0)
      .num(a.pow(2), qi(4), 1, 0)
      .num(-(a * qi(4)), qi(4), 1, 0)
      .den(a * q(1) / y, 2, 0)
      .den(a * q(1) / z, 2, 0)
      .den(-a, qi(4), 1, 0)
      .den(qi(4), qi(4), 1, 0)
      .power(-(a.pow(2) / (y * z).pow(2)))
      .quadratic(2, 0);
  return {sum(l, ctx), pre.eval(ctx) * sum(r, ctx)};
}

// (c-u)(c-v)(a-cu)(a-cv) / (c^2 (a-u)(a-v)(1-u)(1-v)).
QProduct c65_factor(const P& a, const P& c, const P& u, const P& v) {
  QProduct k;
  k.binomial(c, -u).binomial(c, -v).binomial(a, -(c * u)).binomial(a, -(c * v)).times(c.pow(-2));
  k.binomial(a, -u, true).binomial(a, -v, true).binomial(kOne, -u, true).binomial(kOne, -v, true);
  return k;
}

// a (c-a)(1-c)(1-y)(1-z) u v / (c (a-u)(a-v)(1-u)(1-v)), without the last factor.
QProduct c65_rest(const P& a, const P& c, const P& u, const P& v, const P& y, const P& z) {
  QProduct k;
  k.times(a * u * v / c).binomial(c, -a).binomial(kOne, -c).binomial(kOne, -y).binomial(kOne, -z);
  k.binomial(a, -u, true).binomial(a, -v, true).binomial(kOne, -u, true).binomial(kOne, -v, true);
  return k;
}

TermBuilder& c65_vwp(TermBuilder& t, const P& a, const P& c, const P& u, const P& v, const P& y, const P& z) {
  return t.well_poised(a)
      .num(a / c)
      .num(c)
      .num(q(1) * u)
      .num(q(1) * a / u)
      .num(q(1) * v)
      .num(q(1) * a / v)
      .num(y)
      .num(z)
      .den(c * q(1))
      .den(q(1) * a / c)
      .den(u)
      .den(a / u)
      .den(v)
      .den(a / v)
      .den(a * q(1) / y)
      .den(a * q(1) / z)
      .den(q(1));
}

SidePair wpbteqcase1(const Assignment& s, const SeriesContext& ctx) {
  const P a = param(s, "a"), c = param(s, "c"), u = param(s, "u"), v = param(s, "v");
  const P y = param(s, "y"), z = param(s, "z");
  const std::int64_t n = int_param(s, "N", 1);
  const P qmn = qi(-n), qn = qi(n);
  TermBuilder l;
  l.num(y).num(z).num(qmn).den(c * q(1)).den(a * q(1) / c).den(y * z * qmn / a).power(q(1));
  LaurentSeries lhs = one_at(ctx) + c65_factor(a, c, u, v).eval(ctx) * sum_range(l, 1, n, ctx);
  QProduct first = c65_rest(a, c, u, v, y, z);
  first.binomial(kOne, -qn).binomial(y * z, -(a * qn), true);
  QProduct pre;
  pre.num(a * q(1) / y, n).num(a * q(1) / z, n).den(a * q(1), n).den(a * q(1) / (y * z), n);
  TermBuilder r;
  c65_vwp(r, a, c, u, v, y, z).num(qmn).den(a * qi(n + 1)).power(a * qn / (y * z));
  LaurentSeries rhs = first.eval(ctx) + pre.eval(ctx) * sum_range(r, 0, n, ctx);
  return {lhs, rhs};
}

SidePair seqcase1(const Assignment& s, const SeriesContext& ctx) {
  const P a = param(s, "a"), c = param(s, "c"), u = param(s, "u"), v = param(s, "v");
  const P y = param(s, "y"), z = param(s, "z");
  TermBuilder l;
  l.num(y).num(z).den(c * q(1)).den(a * q(1) / c).power(a * q(1) / (y * z));
  LaurentSeries lhs = one_at(ctx) + c65_factor(a, c, u, v).eval(ctx) * sum(l, ctx, 1);
  QProduct first = c65_rest(a, c, u, v, y, z);
  first.times((y * z).inverse());
  QProduct pre;
  pre.num_inf(a * q(1) / y).num_inf(a * q(1) / z).den_inf(a * q(1)).den_inf(a * q(1) / (y * z));
  TermBuilder r;
  c65_vwp(r, a, c, u, v, y, z).power(-(a / (y * z))).quadratic(R(1, 2), R(-1, 2));
  LaurentSeries rhs = first.eval(ctx) + pre.eval(ctx) * sum(r, ctx);
  return {lhs, rhs};
}

SidePair wpbteqcase1a(const Assignment& s, const SeriesContext& ctx) {
  const P a = param(s, "a"), v = param(s, "v"), y = param(s, "y"), z = param(s, "z");
  const std::int64_t n = int_param(s, "N", 1);
  const P qn = qi(n);
  TermBuilder l;
  l.well_poised(a)
      .num(q(1) * v)
      .num(q(1) * a / v)
      .num(y)
      .num(z)
      .num(qi(-n))
      .den(v)
      .den(a / v)
      .den(a * q(1) / y)
      .den(a * q(1) / z)
      .den(a * qi(n + 1))
      .den(q(1))
      .power(a * qn / (y * z));
  QProduct extra;
  extra.times(a * v).binomial(kOne, -y).binomial(kOne, -z).binomial(kOne, -qn);
  extra.binomial(a, -v, true).binomial(kOne, -v, true).binomial(y * z, -(a * qn), true);
  QProduct ratio;
  ratio.num(a * q(1), n).num(a * q(1) / (y * z), n).den(a * q(1) / y, n).den(a * q(1) / z, n);
  return {sum_range(l, 0, n, ctx), (one_at(ctx) + extra.eval(ctx)) * ratio.eval(ctx)};
}

// ---------------------------------------------------------------------------
// Identities from the a q, false theta and y, z -> infinity specializations.

SidePair eqaq1(const Assignment&, const SeriesContext& ctx) {
  TermBuilder t;
  t.num(-q(2), qi(2), 1, -1).power(q(1)).den(qi(2), qi(2), 1, 0);
  QProduct r;
  r.num_inf(-q(1), qi(2)).den_inf(qi(2), qi(2));
  return {one_at(ctx) + sum(t, ctx, 1), r.eval(ctx) * theta_product(6, 8, Sign::Minus, ctx)};
}

SidePair eqaq2_from(std::int64_t from, const SeriesContext& ctx) {
  TermBuilder t;
  t.num(q(1), qi(2), 1, 0).power(q(1)).den(-q(1), qi(2), 1, 1);
  // 1 + sum_{r>=1} q^(8r^2) (q^(4r) - q^(-4r)), as the two one-sided sums.
  LaurentSeries rhs = one_at(ctx) + quad_sum({Quad{8, 4, 0, 1, false, 1}, Quad{8, -4, 0, -1, false, 1}}, ctx);
  return {sum(t, ctx, from), rhs};
}

SidePair eqaq2(const Assignment&, const SeriesContext& ctx) { return eqaq2_from(1, ctx); }
// The n = 0 term 1/(1+q) is exactly the difference between the sides.
SidePair eqaq2_corrected(const Assignment&, const SeriesContext& ctx) { return eqaq2_from(0, ctx); }

SidePair eqaq3(const Assignment&, const SeriesContext& ctx) {
  TermBuilder t;
  t.num(-q(2), qi(2), 1, 0).power(q(1)).den(qi(2), qi(2), 1, 1);
  QProduct r;
  r.num_inf(-q(1), qi(2)).den_inf(qi(2), qi(2));
  return {sum(t, ctx), r.eval(ctx) * theta_product(2, 8, Sign::Minus, ctx)};
}

SidePair eqaq4(const Assignment&, const SeriesContext& ctx) {
  TermBuilder t;
  t.num(qi(3), qi(3), 1, 0).power(-q(1)).den(qi(2), qi(2), 1, 1).den(q(1), 1, 0);
  QProduct r;
  r.num_inf(q(1), qi(2)).den_inf(qi(2), qi(2)).num_inf(qi(18), qi(18)).den_inf(qi(9), qi(18));
  return {sum(t, ctx), r.eval(ctx)};
}

SidePair seq1aqfeq1(const Assignment&, const SeriesContext& ctx) {
  TermBuilder t;
  t.per_n([](std::int64_t n) { return std::make_optional(std::make_pair(kOne, -qi(n + 1))); })
      .num(qi(3), qi(3), 1, 0)
      .quadratic(R(1, 2), R(1, 2))
      .power(kMinus)
      .den(q(1), 2, 2);
  auto rhs = quad_sum(cat({ft(9, 3, 0, 12, 6), ft(9, 12, 4, -6, -3)}), ctx);
  return {sum(t, ctx), rhs};
}

SidePair seq1aqfeq2(const Assignment&, const SeriesContext& ctx) {
  TermBuilder t;
  t.power(kMinus).quadratic(1, 1).den(-q(1), 2, 0);
  auto rhs = quad_sum(cat({ft(10, 1, 0, 18, 9), ft(10, 11, 3, -2, -1)}), ctx);
  return {sum(t, ctx), rhs};
}

SidePair seq1aqfeq4(const Assignment&, const SeriesContext& ctx) {
  TermBuilder t;
  t.num(q(1), 1, 1).num(-q(2), qi(2), 1, 0).power(kMinus).quadratic(R(1, 2), R(1, 2)).den(q(1), 2, 2);
  auto rhs = quad_sum(cat({ft(16, 4, 0, 24, 12), ft(16, 8, 1, 16, 8, -1), ft(16, 12, 2, 8, 4)}), ctx);
  return {sum(t, ctx), rhs};
}

SidePair seq1aqfeq5(const Assignment&, const SeriesContext& ctx) {
  TermBuilder t;
  t.num(-q(1), 1, 0).quadratic(R(1, 2), R(1, 2)).power(kMinus).den(q(1), qi(2), 1, 1);
  return {sum(t, ctx), quad_sum({Quad{1, 1, 0, 1, true}}, ctx)};
}

SidePair misc1eq1(const Assignment&, const SeriesContext& ctx) {
  TermBuilder t;
  t.quadratic(1, 0)
      .power(kMinus)
      .per_n([](std::int64_t n) { return std::make_optional(std::make_pair(kOne, qi(2 * n - 1))); }, true)
      .den(kMinus, 1, -1)
      .den(q(1), 1, 0);
  LaurentSeries num = one_at(ctx) + QProduct().num_inf(qi(4), qi(4)).eval(ctx);
  return {one_at(ctx) + sum(t, ctx, 1), num * QProduct().den_inf(kMinus).eval(ctx)};
}

SidePair misc1eq2(const Assignment&, const SeriesContext& ctx) {
  const P b = -q(2);
  TermBuilder t;
  t.num(q(1), b, 1, 0)
      .quadratic(1, 0)
      .quadratic(R(1, 2), R(1, 2), kMinus)  // (-1)^floor((n+1)/2)
      .per_n([](std::int64_t n) { return std::make_optional(std::make_pair(kOne, -qi(4 * n - 2))); }, true)
      .den(kMinus, b, 1, -1)
      .den(b, b, 1, 0);
  QProduct pre(qi(4));
  pre.num_inf(q(1)).num_inf(-q(3)).den_inf(kMinus).den_inf(qi(2));
  LaurentSeries rhs = pre.eval(ctx) * (one_at(ctx) + theta_product(4, 8, Sign::Minus, ctx));
  return {one_at(ctx) + sum(t, ctx, 1), rhs};
}

SidePair misc1eq5_9(int lin, int s, const SeriesContext& ctx) {
  TermBuilder t;
  t.quadratic(R(1, 2), R(lin, 2))
      .power(kMinus)
      .per_n([](std::int64_t n) { return std::make_optional(std::make_pair(kOne, -qi(2 * n + 1))); }, true)
      .den(q(1), 1, 0);
  return {sum(t, ctx), theta_product(s, 4, Sign::Minus, ctx)};
}

SidePair mod4ideq1(const Assignment&, const SeriesContext& ctx) {
  QProduct head;
  head.binomial(kOne, qi(3)).den(q(1), 2);
  QProduct scale;
  scale.binomial(kOne, -qi(4)).binomial(kOne, -q(1), true);
  TermBuilder t;
  t.quadratic(1, 3).num(-q(2), qi(2), 1, -1).den(q(1), 2, 2);
  LaurentSeries lhs = head.eval(ctx) + scale.eval(ctx) * sum(t, ctx, 1);
  LaurentSeries br = theta_product(18, 24, Sign::Minus, ctx) +
                     monomial(qi(3), ctx) * theta_product(10, 24, Sign::Minus, ctx) -
                     monomial(qi(6), ctx) * theta_product(2, 24, Sign::Minus, ctx) -
                     monomial(qi(3), ctx) * theta_product(6, 24, Sign::Minus, ctx);
  return {lhs, QProduct().den_inf(q(1)).eval(ctx) * br};
}

// ---------------------------------------------------------------------------
// Hybrid identities.

LaurentSeries odd_den_sum(TermBuilder& t, const SeriesContext& ctx) {
  t.per_n([](std::int64_t n) { return std::make_optional(std::make_pair(kOne, -qi(2 * n + 1))); }, true);
  return sum(t, ctx);
}

SidePair seq1aqfeq3(const Assignment&, const SeriesContext& ctx) {
  TermBuilder t;
  t.num(-q(1), qi(2), 1, 0).quadratic(1, 0).den(qi(2), qi(2), 1, 0).den(qi(2), qi(2), 1, 0);
  QProduct pre;
  pre.num_inf(-q(1), qi(2)).den_inf(qi(2), qi(2));
  LaurentSeries br = one_at(ctx) + quad_sum(ft(8, 4, 1, 8, 4), ctx);
  return {odd_den_sum(t, ctx), pre.eval(ctx) * br};
}

// sum q^(n^2 + lin n) / ((1 - q^(2n+1)) (q;q)_n^2) = sum q^(6r^2+b r)(1 - q^(d r + e)) / (q;q)_inf.
SidePair misc1eq3_6(int lin, R b, R d, R e, const SeriesContext& ctx) {
  TermBuilder t;
  t.quadratic(1, lin).den(q(1), 1, 0).den(q(1), 1, 0);
  return {odd_den_sum(t, ctx), QProduct().den_inf(q(1)).eval(ctx) * quad_sum(ft(6, b, 0, d, e), ctx)};
}

SidePair misc1eq4_8(int lin, R b, R d, R e, const SeriesContext& ctx) {
  TermBuilder t;
  t.num(-q(1), 1, 0).quadratic(R(1, 2), R(lin, 2)).den(q(1), 1, 0).den(q(1), 1, 0);
  QProduct pre;
  pre.num_inf(-q(1)).den_inf(q(1));
  return {odd_den_sum(t, ctx), pre.eval(ctx) * quad_sum(ft(4, b, 0, d, e), ctx)};
}

SidePair misc1eq7_signed(int s, const SeriesContext& ctx) {
  TermBuilder t;
  t.quadratic(1, 2).den(qi(2), qi(2), 1, 0);
  // (-1)^r q^(6r^2+4r) (1 - s q^(4r+2))
  std::vector<Quad> th{Quad{6, 4, 0, 1, true}, Quad{6, 8, 2, -s, true}};
  LaurentSeries rhs = QProduct().num_inf(-q(1), qi(2)).eval(ctx) * quad_sum(th, ctx);
  return {odd_den_sum(t, ctx), rhs};
}

SidePair misc1eq7(const Assignment&, const SeriesContext& ctx) { return misc1eq7_signed(1, ctx); }
SidePair misc1eq7_corrected(const Assignment&, const SeriesContext& ctx) { return misc1eq7_signed(-1, ctx); }

SidePair misc1eq10(const Assignment&, const SeriesContext& ctx) {
  TermBuilder t;
  t.num(-q(1), qi(2), 1, 1).quadratic(1, -2).den(qi(2), qi(2), 1, 0).den(qi(2), qi(2), 1, 1);
  QProduct pre;
  pre.num_inf(-q(1), qi(2)).den_inf(qi(2), qi(2));
  LaurentSeries br = poly({{1, 0}, {1, 1}, {1, 2}, {1, 3}}, ctx) +
                     quad_sum({Quad{1, -2, 0}, Quad{1, 2, 0, -1}}, ctx);
  return {sum(t, ctx), pre.eval(ctx) * br};
}

// ---------------------------------------------------------------------------
// Transform assemblies.

// Built on first use: the cyclotomic tables are themselves statics.
Variable var_q() { return Variable{}; }
Variable var_minus_q() { return Variable{-q(1), cq(4, 1, R(1, 2))}; }
Variable var_q2_minus_sqrt() { return Variable{qi(2), -q(1)}; }

std::unique_ptr<BaileyPair> pair(const std::string& id, const Assignment& s, const Variable& var) {
  return find_pair(id).make(s, var);
}

IdentityEntry::SidesFn aq_dual(std::string id, Assignment s, Variable var) {
  return [=](const Assignment&, const SeriesContext& ctx) { return spec_aq(*pair(id, s, var), ctx); };
}

IdentityEntry::SidesFn ft_dual(std::string id, Assignment s, Variable var, P sqrt_a) {
  return [=](const Assignment&, const SeriesContext& ctx) {
    return spec_false_theta(*pair(id, s, var), ctx, sqrt_a);
  };
}

IdentityEntry::SidesFn inf_dual(std::string id, Assignment s, Variable var) {
  return [=](const Assignment&, const SeriesContext& ctx) { return spec_yz_inf(*pair(id, s, var), ctx); };
}

IdentityEntry::SidesFn sq_dual(std::string id, Assignment s, Variable var, P sqrt_a) {
  return [=](const Assignment&, const SeriesContext& ctx) {
    return spec_squared(*pair(id, s, var), ctx, sqrt_a);
  };
}

IdentityEntry::MapFn over(P t0, P t1) {
  return [=](const LaurentSeries& x, const SeriesContext&) { return div_by(x, t0, t1); };
}

const IdentityEntry::MapFn kOverOneMinusQ = over(kOne, -q(1));
const IdentityEntry::MapFn kOverOneMinusQ2 = over(kOne, -qi(2));

// ---------------------------------------------------------------------------

std::vector<IdentityEntry> build_registry() {
  std::vector<IdentityEntry> reg;
  auto add = [&](IdentityEntry e) -> IdentityEntry& {
    reg.push_back(std::move(e));
    return reg.back();
  };
  const std::vector<R> z_exps{R(0), R(1, 2), R(1), R(3, 2), R(2)};
  auto z_sampler = [z_exps](std::mt19937_64& rng) { return random_assignment({"z"}, rng, z_exps); };

  add({.id = "geneqr1",
       .tags = {"general", "rr-type"},
       .description = "one-parameter series-product identity, product side modulo 3",
       .params = {"z"},
       .constraints = "z != 0",
       .defaults = {{{"z", -q(1)}}, {{"z", q(1)}}, {{"z", kOne}}, {{"z", mq(mpq_class(1, 2), R(1, 2))}}},
       .sides = geneqr1,
       .sample = z_sampler});
  add({.id = "geneqr2",
       .tags = {"general", "rr-type"},
       .description = "one-parameter series-product identity, product side modulo 4",
       .params = {"z"},
       .constraints = "z != 0",
       .defaults = {{{"z", -q(1)}}, {{"z", q(1)}}, {{"z", mq(3, R(1, 2))}}},
       .sides = geneqr2,
       .sample = z_sampler});
  add({.id = "geneq1",
       .tags = {"general", "rr-type"},
       .description = "one-parameter series-product identity, companion of geneqr1",
       .params = {"z"},
       .constraints = "z != 0",
       .defaults = {{{"z", -q(1)}}, {{"z", q(2)}}, {{"z", mq(mpq_class(-1, 3), R(1))}}},
       .sides = geneq1,
       .sample = z_sampler});

  struct Row {
    const char* id;
    int k;
    P z;
    int m;
    const char* text;
  };
  const std::vector<Row> rows{
      {"slater22", 1, -q(1), 1, "geneq1 with z = -q"},
      {"slater27", 2, -q(1), 1, "geneq1 with q -> q^2, z = -q"},
      {"slater28", 1, cq(4, 1, R(1)), 4, "geneq1 with z = i q"},
      {"slater40", 3, q(2), 1, "geneq1 with q -> q^3, z = q^2"},
      {"slater41", 3, q(1), 1, "geneq1 with q -> q^3, z = q"},
      {"slater55", 4, q(3), 1, "geneq1 with q -> q^4, z = q^3"},
      {"slater92", 1, cq(3, 1, R(1)), 3, "geneq1 with z = exp(2 pi i/3) q"},
  };
  for (const Row& row : rows) {
    const P x = qi(row.k), z = row.z;
    add({.id = row.id,
         .tags = {"rr-type"},
         .description = row.text,
         .cyclotomic_order = row.m,
         .order_scale = row.k,
         .sides = [x, z](const Assignment&, const SeriesContext& ctx) { return geneq1_in(x, z, ctx); }});
  }

  add({.id = "aqg",
       .tags = {"general"},
       .description = "q-Gauss sum, Andrews' form",
       .params = {"a", "b"},
       .constraints = "no denominator factor vanishes",
       .defaults = {{{"a", mq(2, R(1))}, {"b", mq(mpq_class(1, 3), R(1, 2))}}},
       .sides = [](const Assignment& s, const SeriesContext& ctx) {
         return q_gauss_andrews_sides(param(s, "a"), param(s, "b"), ctx);
       },
       .sample = [](std::mt19937_64& rng) {
         return random_assignment({"a", "b"}, rng, {R(0), R(1, 2), R(1), R(2)});
       }});
  add({.id = "hqg",
       .tags = {"general"},
       .description = "q-Gauss sum, Heine's form with b -> infinity",
       .params = {"a", "c"},
       .constraints = "no denominator factor vanishes",
       .defaults = {{{"a", mq(2, R(1, 2))}, {"c", mq(mpq_class(1, 5), R(1))}}},
       .sides = [](const Assignment& s, const SeriesContext& ctx) {
         return q_gauss_heine_sides(param(s, "a"), param(s, "c"), ctx);
       },
       .sample = [](std::mt19937_64& rng) {
         return sample_with({{"a", {R(0), R(1, 2), R(1)}}, {"c", {R(1, 2), R(1), R(2)}}}, rng);
       }});

  const std::vector<R> a_exps{R(1), R(3, 2), R(2)}, yz_exps{R(0), R(1, 2)};
  add({.id = "c6a",
       .tags = {"transformation"},
       .description = "transformation from the modulus 3 pair sgen20",
       .params = {"a", "y", "z"},
       .constraints = "|aq/yz| < 1, no denominator factor vanishes",
       .defaults = {{{"a", mq(2, R(1))}, {"y", mq(3, R(0))}, {"z", mq(mpq_class(1, 5), R(1, 2))}}},
       .sides = c6a,
       .sample = [=](std::mt19937_64& rng) { return sample_with({{"a", a_exps}, {"y", yz_exps}, {"z", yz_exps}}, rng); },
       .dual = [](const Assignment& s, const SeriesContext& ctx) {
         TransformSpec t{param(s, "y"), param(s, "z"), std::nullopt};
         return bailey_transform_sides(*pair("sgen20", {{"a", param(s, "a")}}, var_q()), t, ctx);
       },
       .dual_description = "sgen20 through the general transform"});
  add({.id = "c66",
       .tags = {"transformation"},
       .description = "transformation with (-1/q;q^2)_n from the modulus 2 pair chubp66",
       .params = {"a", "y", "z"},
       .constraints = "|aq^2/yz| < 1, no denominator factor vanishes",
       .defaults = {{{"a", mq(2, R(2))}, {"y", mq(3, R(0))}, {"z", mq(mpq_class(1, 5), R(1, 2))}}},
       .sides = c66,
       .sample = [=](std::mt19937_64& rng) { return sample_with({{"a", a_exps}, {"y", yz_exps}, {"z", yz_exps}}, rng); }});

  const std::vector<R> cuv_exps{R(0), R(1, 2), R(1)};
  auto c65_sampler = [=](bool with_n, std::int64_t n_lo) {
    return [=](std::mt19937_64& rng) {
      Assignment s = sample_with(
          {{"a", a_exps}, {"c", cuv_exps}, {"u", cuv_exps}, {"v", cuv_exps}, {"y", yz_exps}, {"z", yz_exps}}, rng);
      if (with_n) s["N"] = P::constant(std::uniform_int_distribution<int>(int(n_lo), 6)(rng));
      return s;
    };
  };
  const Assignment c65_default{{"a", mq(2, R(1))},          {"c", mq(3, R(1, 2))}, {"u", mq(mpq_class(1, 5), R(0))},
                               {"v", mq(-7, R(1, 2))},      {"y", mq(11, R(0))},   {"z", mq(mpq_class(1, 13), R(1, 2))}};
  auto with_n = [](Assignment s, int n) {
    s["N"] = P::constant(n);
    return s;
  };
  add({.id = "wpbteqcase1",
       .tags = {"transformation"},
       .description = "terminating transformation from chubp1 with b = a/c",
       .params = {"a", "c", "u", "v", "y", "z", "N"},
       .constraints = "N >= 1 an integer, no denominator factor vanishes",
       .defaults = {with_n(c65_default, 1), with_n(c65_default, 4)},
       .sides = wpbteqcase1,
       .sample = c65_sampler(true, 1)});
  add({.id = "Seqcase1",
       .tags = {"transformation"},
       .description = "nonterminating transformation from chubp1 with b = a/c",
       .params = {"a", "c", "u", "v", "y", "z"},
       .constraints = "|aq/yz| < 1, no denominator factor vanishes",
       .defaults = {c65_default},
       .sides = seqcase1,
       .sample = c65_sampler(false, 0)});
  {
    Assignment d = c65_default;
    d.erase("c");
    d.erase("u");
    add({.id = "wpbteqcase1a",
         .tags = {"transformation"},
         .description = "terminating very-well-poised sum, wpbteqcase1 at c = u",
         .params = {"a", "v", "y", "z", "N"},
         .constraints = "N >= 1 an integer, no denominator factor vanishes",
         .defaults = {with_n(d, 1), with_n(d, 3)},
         .sides = wpbteqcase1a,
         .sample = [=](std::mt19937_64& rng) {
           Assignment s = sample_with({{"a", a_exps}, {"v", cuv_exps}, {"y", yz_exps}, {"z", yz_exps}}, rng);
           s["N"] = P::constant(std::uniform_int_distribution<int>(1, 6)(rng));
           return s;
         }});
  }

  add({.id = "eqaq1",
       .tags = {"rr-type"},
       .description = "modulus 16 product",
       .sides = eqaq1,
       .dual = aq_dual("chubp42a", {}, var_minus_q()),
       .dual_map = nullptr,
       .dual_description = "chubp42a in x = -q, y = -sqrt(aq), z = sqrt(aq)"});
  add({.id = "eqaq2",
       .tags = {"false-theta"},
       .description = "false theta series in q^8",
       .sides = eqaq2,
       .dual = aq_dual("chubp44a", {}, var_minus_q()),
       .dual_map = over(kOne, q(1)),
       .dual_description = "chubp44a in x = -q, y = -sqrt(aq), z = sqrt(aq); corrected side = S/(1 + q)",
       .erratum = "as printed the sides differ by 1/(1+q), the n = 0 term; the sum holds from n = 0",
       .corrected = eqaq2_corrected});
  add({.id = "eqaq3",
       .tags = {"rr-type"},
       .description = "modulus 16 product",
       .sides = eqaq3,
       .dual = aq_dual("chubp46a", {}, var_minus_q()),
       .dual_map = kOverOneMinusQ2,
       .dual_description = "chubp46a in x = -q, y = -sqrt(aq), z = sqrt(aq); printed side = S/(1 - q^2)"});
  add({.id = "eqaq4",
       .tags = {"rr-type"},
       .description = "modulus 18 product",
       .sides = eqaq4,
       .dual = aq_dual("sgen22", {{"a", qi(2)}}, var_q()),
       .dual_map = kOverOneMinusQ2,
       .dual_description = "sgen22 at a = q^2, y = -sqrt(aq), z = sqrt(aq); printed side = S/(1 - q^2)"});

  add({.id = "Seq1aqfeq1",
       .tags = {"false-theta"},
       .description = "false theta series in q^9",
       .sides = seq1aqfeq1,
       .dual = ft_dual("sgen21", {{"a", qi(2)}}, var_q(), q(1)),
       .dual_map = kOverOneMinusQ2,
       .dual_description = "sgen21 at a = q^2, y = q sqrt(a), z -> inf; printed side = S/(1 - q^2)"});
  add({.id = "Seq1aqfeq2",
       .tags = {"false-theta"},
       .description = "false theta series in q^10",
       .sides = seq1aqfeq2,
       .dual = ft_dual("I4", {{"d", -qi(3)}}, var_q2_minus_sqrt(), kOne),
       .dual_map = nullptr,
       .dual_description = "I4 in x = q^2 with sqrt(x) = -q, d = x^(3/2), a = 1, y = q, z -> inf"});
  add({.id = "Seq1aqfeq4",
       .tags = {"false-theta"},
       .description = "false theta series in q^16",
       .sides = seq1aqfeq4,
       .dual = ft_dual("chubp41a", {}, var_q(), kOne),
       .dual_map = [](const LaurentSeries& x, const SeriesContext& ctx) { return one_at(ctx) - x; },
       .dual_description = "chubp41a, y = q, z -> inf; printed side = 1 - S"});
  add({.id = "Seq1aqfeq5",
       .tags = {"false-theta"},
       .description = "false theta series sum (-1)^r q^(r^2+r)",
       .sides = seq1aqfeq5,
       .dual = ft_dual("H1", {}, var_q(), kOne),
       .dual_map = [](const LaurentSeries& x, const SeriesContext& ctx) {
         LaurentSeries d = one_at(ctx) - x;
         d.scale(CycloCoeff(d.ring().cyclotomic_order, mpq_class(1, 2)));
         return d;
       },
       .dual_description = "H1, y = q, z -> inf; printed side = (1 - S)/2"});

  add({.id = "misc1eq1",
       .tags = {"rr-type"},
       .description = "quotient of (q^4;q^4)_inf plus one by (-1;q)_inf",
       .sides = misc1eq1,
       .dual = inf_dual("sgen660", {{"a", kMinus}, {"d", qi(2)}}, var_q()),
       .dual_map = nullptr,
       .dual_description = "sgen660 at a = -1, d = q^2, y, z -> inf"});
  add({.id = "misc1eq2",
       .tags = {"rr-type"},
       .description = "base -q^2 series against a modulus 16 product",
       .sides = misc1eq2});
  add({.id = "misc1eq5",
       .tags = {"rr-type"},
       .description = "modulus 8 product (-q^3, -q^5, q^8; q^8)_inf",
       .sides = [](const Assignment&, const SeriesContext& ctx) { return misc1eq5_9(1, 3, ctx); },
       .dual = sq_dual("sgen661", {{"a", q(1)}, {"d", qi(2)}}, var_q(), -q(R(1, 2))),
       .dual_map = kOverOneMinusQ,
       .dual_description = "sgen661 at a = q, d = q^2 in the squared transform with sqrt(a) = -q^(1/2); printed side = S/(1 - q)"});
  add({.id = "misc1eq9",
       .tags = {"rr-type"},
       .description = "modulus 8 product (-q, -q^7, q^8; q^8)_inf",
       .sides = [](const Assignment&, const SeriesContext& ctx) { return misc1eq5_9(3, 1, ctx); },
       .dual = sq_dual("sgen662", {{"a", q(1)}, {"d", qi(2)}}, var_q(), -q(R(1, 2))),
       .dual_map = kOverOneMinusQ,
       .dual_description = "sgen662 at a = q, d = q^2 in the squared transform with sqrt(a) = -q^(1/2); printed side = S/(1 - q)"});
  add({.id = "mod4ideq1",
       .tags = {"rr-type"},
       .description = "sum of four modulus 48 products over (q;q)_inf",
       .sides = mod4ideq1,
       .dual = inf_dual("mod4ideq1_pair", {}, var_q()),
       .dual_map = [](const LaurentSeries& x, const SeriesContext&) {
         return div_by(div_by(mul_by(x, kOne, qi(3)), kOne, -q(1)), kOne, -qi(2));
       },
       .dual_description = "mod4ideq1_pair, y, z -> inf; printed side = S (1 + q^3)/((1 - q)(1 - q^2))"});

  add({.id = "Seq1aqfeq3",
       .tags = {"hybrid"},
       .description = "product times one plus a false theta series in q^8",
       .sides = seq1aqfeq3,
       .dual = ft_dual("sgen661", {{"a", qi(2)}, {"d", qi(4)}}, var_q2_minus_sqrt(), -q(1)),
       .dual_map = kOverOneMinusQ,
       .dual_description = "sgen661 in x = q^2 with sqrt(x) = -q, a = x, d = x^2, y = x sqrt(a), z -> inf; printed side = S/(1 - q)"});
  add({.id = "misc1eq3",
       .tags = {"hybrid"},
       .description = "false theta series in q^6 over (q;q)_inf",
       .sides = [](const Assignment&, const SeriesContext& ctx) { return misc1eq3_6(1, 2, 8, 4, ctx); },
       .dual = inf_dual("sgen661", {{"a", q(1)}, {"d", qi(2)}}, var_q()),
       .dual_map = kOverOneMinusQ,
       .dual_description = "sgen661 at a = q, d = q^2, y, z -> inf; printed side = S/(1 - q)"});
  add({.id = "misc1eq6",
       .tags = {"hybrid"},
       .description = "false theta series in q^6 over (q;q)_inf",
       .sides = [](const Assignment&, const SeriesContext& ctx) { return misc1eq3_6(2, 4, 4, 2, ctx); },
       .dual = inf_dual("sgen662", {{"a", q(1)}, {"d", qi(2)}}, var_q()),
       .dual_map = kOverOneMinusQ,
       .dual_description = "sgen662 at a = q, d = q^2, y, z -> inf; printed side = S/(1 - q)"});
  add({.id = "misc1eq4",
       .tags = {"hybrid"},
       .description = "(-q;q)_inf/(q;q)_inf times a false theta series in q^4",
       .sides = [](const Assignment&, const SeriesContext& ctx) { return misc1eq4_8(1, 1, 6, 3, ctx); },
       .dual = sq_dual("sgen661", {{"a", q(1)}, {"d", qi(2)}}, var_q(), q(R(1, 2))),
       .dual_map = kOverOneMinusQ,
       .dual_description = "sgen661 at a = q, d = q^2 in the squared transform; printed side = S/(1 - q)"});
  add({.id = "misc1eq8",
       .tags = {"hybrid"},
       .description = "(-q;q)_inf/(q;q)_inf times a false theta series in q^4",
       .sides = [](const Assignment&, const SeriesContext& ctx) { return misc1eq4_8(3, 3, 2, 1, ctx); },
       .dual = sq_dual("sgen662", {{"a", q(1)}, {"d", qi(2)}}, var_q(), q(R(1, 2))),
       .dual_map = kOverOneMinusQ,
       .dual_description = "sgen662 at a = q, d = q^2 in the squared transform; printed side = S/(1 - q)"});
  add({.id = "misc1eq7",
       .tags = {"hybrid"},
       .description = "(-q;q^2)_inf times an alternating false theta series in q^6",
       .sides = misc1eq7,
       .dual = inf_dual("sgen662", {{"a", q(1)}, {"d", qi(2)}}, var_minus_q()),
       .dual_map = kOverOneMinusQ,
       .dual_description = "sgen662 in x = -q at a = -x, d = x^2, y, z -> inf; printed side = S/(1 - q)",
       .erratum = "the factor (1 - q^(4r+2)) on the right should read (1 + q^(4r+2))",
       .corrected = misc1eq7_corrected});
  add({.id = "misc1eq10",
       .tags = {"hybrid"},
       .description = "product times a polynomial plus a false theta series in q",
       .sides = misc1eq10,
       .dual = ft_dual("H12", {{"a", qi(2)}, {"c", qi(2)}}, var_q2_minus_sqrt(), -q(1)),
       .dual_map = [](const LaurentSeries& x, const SeriesContext& ctx) {
         QProduct e;
         e.num_inf(-q(1), qi(2)).den_inf(qi(2), qi(2)).times(qi(2));
         return mul_by(x + e.eval(ctx), kOne, q(1));
       },
       .dual_description = "H12 in x = q^2 with sqrt(x) = -q, a = c = x, y = x sqrt(a), z -> inf; "
                           "printed side = (1 + q)(S + q^2 (-q;q^2)_inf/(q^2;q^2)_inf)"});
  return reg;
}

std::uint64_t fnv1a(const std::string& s) {
  std::uint64_t h = 1469598103934665603ULL;
  for (unsigned char c : s) {
    h ^= c;
    h *= 1099511628211ULL;
  }
  return h;
}

void check_params(const IdentityEntry& e, const Assignment& spec) {
  for (const auto& [name, v] : spec) {
    if (std::find(e.params.begin(), e.params.end(), name) == e.params.end())
      throw InvalidSpecializationError("identity " + e.id + " has no parameter " + name);
  }
  for (const auto& name : e.params) {
    if (!spec.count(name)) throw InvalidSpecializationError("identity " + e.id + " needs parameter " + name);
  }
}

void fill(VerificationReport& r, const Comparison& c) {
  r.status = c.equal ? Status::Pass : Status::Mismatch;
  if (!c.equal) {
    r.mismatch_exponent = c.exponent;
    r.lhs_coeff = c.lhs;
    r.rhs_coeff = c.rhs;
  }
}

template <class F>
VerificationReport run(const std::string& id, const std::string& check, const Assignment& spec,
                       const SeriesContext& ctx, F&& body) {
  VerificationReport r;
  r.id = id;
  r.check = check;
  r.spec = spec;
  r.order = ctx.truncation_order;
  auto t0 = std::chrono::steady_clock::now();
  try {
    fill(r, body());
  } catch (const std::exception& ex) {
    r.status = Status::Error;
    r.error_kind = error_kind(ex);
    r.error_message = ex.what();
  }
  r.elapsed_ms = std::chrono::duration<double, std::milli>(std::chrono::steady_clock::now() - t0).count();
  return r;
}

}  // namespace

bool IdentityEntry::has_tag(const std::string& t) const {
  return std::find(tags.begin(), tags.end(), t) != tags.end();
}

const std::vector<IdentityEntry>& registry() {
  static const std::vector<IdentityEntry> reg = build_registry();
  return reg;
}

const IdentityEntry& find_identity(const std::string& id) {
  for (const auto& e : registry()) {
    if (e.id == id) return e;
  }
  throw UnknownIdError("unknown identity id: " + id);
}

const char* status_name(Status s) {
  switch (s) {
    case Status::Pass:
      return "pass";
    case Status::Mismatch:
      return "mismatch";
    case Status::Error:
      break;
  }
  return "error";
}

std::string error_kind(const std::exception& e) {
  if (dynamic_cast<const GridError*>(&e)) return "grid";
  if (dynamic_cast<const NotAUnitError*>(&e)) return "not-a-unit";
  if (dynamic_cast<const InsufficientPrecisionError*>(&e)) return "insufficient-precision";
  if (dynamic_cast<const NonConvergentError*>(&e)) return "non-convergent";
  if (dynamic_cast<const DivergentError*>(&e)) return "divergent";
  if (dynamic_cast<const SingularKError*>(&e)) return "singular-k";
  if (dynamic_cast<const InvalidSpecializationError*>(&e)) return "invalid-spec";
  if (dynamic_cast<const UnknownIdError*>(&e)) return "unknown-id";
  if (dynamic_cast<const RingMismatchError*>(&e)) return "ring-mismatch";
  return "internal";
}

SeriesContext entry_context(const IdentityEntry& e, const SeriesContext& ctx) {
  int d = int(lcm64(ctx.grid_denominator, e.grid_denominator));
  int m = common_cyclotomic_order(ctx.cyclotomic_order, e.cyclotomic_order);
  return SeriesContext(ctx.truncation_order * R(e.order_scale), d, m);
}

namespace {

SeriesContext spec_context(const IdentityEntry& e, const Assignment& spec, const SeriesContext& ctx) {
  SeriesContext c = entry_context(e, ctx);
  int m = c.cyclotomic_order;
  for (const auto& [name, v] : spec) m = common_cyclotomic_order(m, v.cyclotomic_order());
  return SeriesContext(c.truncation_order, c.grid_denominator, m);
}

}  // namespace

VerificationReport verify(const IdentityEntry& e, const Assignment& spec, const SeriesContext& ctx) {
  SeriesContext c = entry_context(e, ctx);
  return run(e.id, "printed", spec, c, [&] {
    check_params(e, spec);
    SeriesContext sc = spec_context(e, spec, ctx);
    return compare_sides([&](const SeriesContext& w) { return e.sides(spec, w); }, sc);
  });
}

VerificationReport verify(const std::string& id, const Assignment& spec, const SeriesContext& ctx) {
  return verify(find_identity(id), spec, ctx);
}

std::vector<VerificationReport> verify_defaults(const IdentityEntry& e, const SeriesContext& ctx) {
  std::vector<VerificationReport> out;
  if (e.defaults.empty()) {
    out.push_back(verify(e, {}, ctx));
  } else {
    for (const auto& s : e.defaults) out.push_back(verify(e, s, ctx));
  }
  return out;
}

VerificationReport verify_corrected(const IdentityEntry& e, const SeriesContext& ctx) {
  if (!e.corrected) throw InvalidSpecializationError("identity " + e.id + " has no corrected form");
  const Assignment spec = e.defaults.empty() ? Assignment{} : e.defaults.front();
  SeriesContext c = spec_context(e, spec, ctx);
  return run(e.id, "corrected", spec, c, [&] {
    return compare_sides([&](const SeriesContext& w) { return e.corrected(spec, w); }, c);
  });
}

std::vector<VerificationReport> verify_dual(const IdentityEntry& e, const SeriesContext& ctx) {
  std::vector<VerificationReport> out;
  if (!e.dual) return out;
  const Assignment spec = e.defaults.empty() ? Assignment{} : e.defaults.front();
  SeriesContext c = spec_context(e, spec, ctx);
  // The transform sides are the expensive part; keep them per working order.
  std::map<std::int64_t, SidePair> cache;
  auto transform = [&](const SeriesContext& w) -> const SidePair& {
    auto it = cache.find(w.order_ticks());
    if (it == cache.end()) it = cache.emplace(w.order_ticks(), e.dual(spec, w)).first;
    return it->second;
  };
  auto mapped = [&](const LaurentSeries& x, const SeriesContext& w) { return e.dual_map ? e.dual_map(x, w) : x; };
  auto target = [&](const SeriesContext& w) { return e.corrected ? e.corrected(spec, w) : e.sides(spec, w); };
  out.push_back(run(e.id, "dual:transform", spec, c, [&] {
    return compare_sides([&](const SeriesContext& w) { return transform(w); }, c);
  }));
  out.push_back(run(e.id, "dual:lhs", spec, c, [&] {
    return compare_sides(
        [&](const SeriesContext& w) { return SidePair{target(w).lhs, mapped(transform(w).lhs, w)}; }, c);
  }));
  out.push_back(run(e.id, "dual:rhs", spec, c, [&] {
    return compare_sides(
        [&](const SeriesContext& w) { return SidePair{target(w).rhs, mapped(transform(w).rhs, w)}; }, c);
  }));
  return out;
}

std::vector<VerificationReport> verify_sweep(const IdentityEntry& e, const SeriesContext& ctx, std::uint64_t seed,
                                             int random_specs) {
  std::vector<VerificationReport> out = verify_defaults(e, ctx);
  if (e.corrected) out.push_back(verify_corrected(e, ctx));
  if (e.sample) {
    std::mt19937_64 rng(seed ^ fnv1a(e.id));
    for (int i = 0; i < random_specs; ++i) out.push_back(verify(e, e.sample(rng), ctx));
  }
  return out;
}

std::vector<VerificationReport> verify_all(const QRational& order, std::uint64_t seed, int random_specs) {
  std::vector<const IdentityEntry*> entries;
  for (const auto& e : registry()) entries.push_back(&e);
  std::sort(entries.begin(), entries.end(), [](auto* a, auto* b) { return a->id < b->id; });
  const SeriesContext ctx(order, 2, 1);
  std::vector<VerificationReport> out;
  for (const IdentityEntry* e : entries) {
    for (auto& r : verify_sweep(*e, ctx, seed, random_specs)) out.push_back(std::move(r));
  }
  return out;
}

std::string export_registry(const std::vector<std::string>& tag_filter) {
  std::ostringstream os;
  os << "schema_version: 1\n";
  for (const auto& e : registry()) {
    if (!tag_filter.empty() &&
        std::none_of(tag_filter.begin(), tag_filter.end(), [&](const std::string& t) { return e.has_tag(t); }))
      continue;
    os << "\n[identity]\n";
    os << "id: " << e.id << "\n";
    os << "tags:";
    for (std::size_t i = 0; i < e.tags.size(); ++i) os << (i ? "," : " ") << e.tags[i];
    os << "\n";
    os << "params:";
    for (std::size_t i = 0; i < e.params.size(); ++i) os << (i ? "," : " ") << e.params[i];
    os << "\n";
    if (!e.constraints.empty()) os << "constraints: " << e.constraints << "\n";
    os << "description: " << e.description << "\n";
    os << "ring: D=" << e.grid_denominator << " m=" << e.cyclotomic_order;
    if (e.order_scale != 1) os << " order_scale=" << e.order_scale;
    os << "\n";
    for (const auto& s : e.defaults) os << "default_spec: " << format_assignment(s) << "\n";
    if (e.dual) os << "dual: " << e.dual_description << "\n";
    if (!e.erratum.empty()) os << "erratum: " << e.erratum << "\n";
  }
  return os.str();
}

}  // namespace qseries
