#include "qseries/hypergeom.hpp"

#include <algorithm>
#include <map>

#include "qseries/error.hpp"

namespace qseries {

namespace {

ParamMonomial qm(QRational e) { return ParamMonomial::q(e); }
const ParamMonomial kOne = ParamMonomial::constant(1);

GridTerm neg(GridTerm t) {
  t.coeff = -t.coeff;
  return t;
}

// base^k for a rational k; a base with a nontrivial coefficient needs k integral.
ParamMonomial base_power(const ParamMonomial& base, const QRational& k) {
  if (k.is_integer()) return base.pow(k.num());
  if (!base.coeff().is_one()) {
    throw GridError("fractional power " + k.to_string() + " of base " + base.to_string());
  }
  return ParamMonomial::q(base.exponent() * k);
}

}  // namespace

// ---------------------------------------------------------------- TermBuilder

TermBuilder::TermBuilder(ParamMonomial base) : base_(std::move(base)) {}

TermBuilder& TermBuilder::num(const ParamMonomial& x, std::int64_t slope, std::int64_t offset) {
  return num(x, base_, slope, offset);
}

TermBuilder& TermBuilder::num(const ParamMonomial& x, const ParamMonomial& base, std::int64_t slope,
                              std::int64_t offset) {
  pochs_.push_back(Poch{x, base, slope, offset, false});
  ready_ = false;
  return *this;
}

TermBuilder& TermBuilder::den(const ParamMonomial& x, std::int64_t slope, std::int64_t offset) {
  return den(x, base_, slope, offset);
}

TermBuilder& TermBuilder::den(const ParamMonomial& x, const ParamMonomial& base, std::int64_t slope,
                              std::int64_t offset) {
  pochs_.push_back(Poch{x, base, slope, offset, true});
  ready_ = false;
  return *this;
}

TermBuilder& TermBuilder::power(const ParamMonomial& z) {
  powers_.push_back(z);
  ready_ = false;
  return *this;
}

TermBuilder& TermBuilder::quadratic(const QRational& a, const QRational& c) { return quadratic(a, c, base_); }

TermBuilder& TermBuilder::quadratic(const QRational& a, const QRational& c, const ParamMonomial& base) {
  quads_.push_back(Quad{a, c, base});
  ready_ = false;
  return *this;
}

TermBuilder& TermBuilder::times(const ParamMonomial& m) {
  consts_.push_back(m);
  ready_ = false;
  return *this;
}

TermBuilder& TermBuilder::times_binomial(const ParamMonomial& t0, const ParamMonomial& t1, bool in_denominator) {
  const_binomials_.push_back(ConstBinomial{t0, t1, in_denominator});
  ready_ = false;
  return *this;
}

TermBuilder& TermBuilder::well_poised(const ParamMonomial& a) { return well_poised(a, base_); }

TermBuilder& TermBuilder::well_poised(const ParamMonomial& a, const ParamMonomial& base) {
  wps_.emplace_back(a, base);
  ready_ = false;
  return *this;
}

TermBuilder& TermBuilder::per_n(BinomialFn f, bool in_denominator) {
  per_n_.push_back(PerN{std::move(f), in_denominator});
  ready_ = false;
  return *this;
}

TermBuilder& TermBuilder::hook(Hook h) {
  hooks_.push_back(std::move(h));
  ready_ = false;
  return *this;
}

TermBuilder& TermBuilder::restrict_to(std::int64_t lo, std::int64_t hi) {
  range_ = std::make_pair(lo, hi);
  return *this;
}

void TermBuilder::apply_poch_factor(const Poch& p, std::int64_t i, bool divide) {
  GridTerm t = to_grid(p.x * p.base.pow(i), ring_);
  GridTerm unit{0, CycloCoeff(ring_.cyclotomic_order, mpq_class(1))};
  if (divide) {
    try {
      state_.div_binomial(unit, neg(t));
    } catch (const NotAUnitError&) {
      throw NotAUnitError("zero divisor: factor (1 - " + (p.x * p.base.pow(i)).to_string() + ") of (" +
                          p.x.to_string() + ";" + p.base.to_string() + ")_n vanishes");
    }
  } else {
    state_.mul_binomial(unit, neg(t));
  }
}

void TermBuilder::apply_wp_step(int dir) {
  GridTerm unit{0, CycloCoeff(ring_.cyclotomic_order, mpq_class(1))};
  for (const auto& [a, b] : wps_) {
    auto factor = [&](std::int64_t i, bool divide) {
      GridTerm t = neg(to_grid(a * b.pow(i), ring_));
      if (!divide) {
        state_.mul_binomial(unit, t);
        return;
      }
      try {
        state_.div_binomial(unit, t);
      } catch (const NotAUnitError&) {
        throw NotAUnitError("zero divisor: well-poised factor (1 - " + (a * b.pow(i)).to_string() + ") vanishes");
      }
    };
    // State holds (a;B)_n / (1 - a) for n != 0 and 1 at n = 0.
    if (dir > 0) {
      if (cur_ >= 1) factor(cur_, false);
      if (cur_ <= -1) {
        factor(cur_, false);
        if (cur_ == -1) factor(0, false);
      }
    } else {
      if (cur_ >= 2) factor(cur_ - 1, true);
      if (cur_ <= 0) {
        factor(cur_ - 1, true);
        if (cur_ == 0) factor(0, true);
      }
    }
  }
}

void TermBuilder::reset(const SeriesContext& ctx) {
  ring_ = ctx.ring();
  order_ = ctx.order_ticks();
  state_ = LaurentSeries::one(ring_, order_ + extra_);
  cur_ = 0;
  for (const auto& m : consts_) state_.mul_monomial(to_grid(m, ring_));
  for (const auto& b : const_binomials_) {
    GridTerm t0 = to_grid(b.t0, ring_), t1 = to_grid(b.t1, ring_);
    if (b.den) {
      try {
        state_.div_binomial(t0, t1);
      } catch (const NotAUnitError&) {
        throw NotAUnitError("zero divisor: factor (" + b.t0.to_string() + " + " + b.t1.to_string() + ") vanishes");
      }
    } else {
      state_.mul_binomial(t0, t1);
    }
  }
  for (const auto& p : pochs_) {
    if (p.offset > 0) {
      for (std::int64_t i = 0; i < p.offset; ++i) apply_poch_factor(p, i, p.den);
    } else {
      for (std::int64_t i = p.offset; i < 0; ++i) apply_poch_factor(p, i, !p.den);
    }
  }
  ready_ = true;
}

void TermBuilder::step(int dir) {
  const std::int64_t next = cur_ + dir;
  for (const auto& p : pochs_) {
    std::int64_t l0 = p.slope * cur_ + p.offset;
    std::int64_t l1 = p.slope * next + p.offset;
    if (l1 > l0) {
      for (std::int64_t i = l0; i < l1; ++i) apply_poch_factor(p, i, p.den);
    } else {
      for (std::int64_t i = l1; i < l0; ++i) apply_poch_factor(p, i, !p.den);
    }
  }
  apply_wp_step(dir);
  for (const auto& z : powers_) state_.mul_monomial(to_grid(dir > 0 ? z : z.inverse(), ring_));
  for (const auto& qd : quads_) {
    QRational fn = qd.a * QRational(cur_ * cur_) + qd.c * QRational(cur_);
    QRational fm = qd.a * QRational(next * next) + qd.c * QRational(next);
    state_.mul_monomial(to_grid(base_power(qd.base, fm - fn), ring_));
  }
  cur_ = next;
}

LaurentSeries TermBuilder::emit(std::int64_t n) {
  LaurentSeries t = state_;
  for (const auto& pn : per_n_) {
    auto f = pn.f(n);
    if (!f) continue;
    GridTerm t0 = to_grid(f->first, ring_), t1 = to_grid(f->second, ring_);
    if (pn.den) {
      try {
        t.div_binomial(t0, t1);
      } catch (const NotAUnitError&) {
        throw NotAUnitError("zero divisor: factor (" + f->first.to_string() + " + " + f->second.to_string() +
                            ") vanishes at n=" + std::to_string(n));
      }
    } else {
      t.mul_binomial(t0, t1);
    }
  }
  GridTerm unit{0, CycloCoeff(ring_.cyclotomic_order, mpq_class(1))};
  // At n = 0 the factor (1 - a) cancels the 1/(1 - a) and the term is 1.
  if (n != 0) {
    for (const auto& [a, b] : wps_) t.mul_binomial(unit, neg(to_grid(a * b.pow(2 * n), ring_)));
  }
  for (const auto& h : hooks_) {
    if (t.is_zero() && t.exact()) break;
    std::int64_t v = t.is_zero() ? t.order_ticks() : t.valuation_ticks();
    std::int64_t want = std::max<std::int64_t>(order_ - v + extra_, 1);
    SeriesContext hctx(QRational(want, ring_.grid_denominator), ring_.grid_denominator,
                       ring_.cyclotomic_order);
    t = t * h(n, hctx);
  }
  t.truncate(order_);
  return t;
}

LaurentSeries TermBuilder::term(std::int64_t n, const SeriesContext& ctx) {
  if (range_ && (n < range_->first || n > range_->second)) return LaurentSeries::zero(ctx.ring());
  if (!ready_ || !(ring_ == ctx.ring()) || order_ != ctx.order_ticks()) {
    extra_ = 0;
    ring_ = ctx.ring();
    order_ = ctx.order_ticks();
    ready_ = false;
  }
  for (int attempt = 0;; ++attempt) {
    bool same_side = (n >= 0) == (cur_ >= 0);
    bool outward = n >= 0 ? n >= cur_ : n <= cur_;
    if (!ready_ || !same_side || !outward) reset(ctx);
    while (cur_ != n) step(n > cur_ ? 1 : -1);
    LaurentSeries t = emit(n);
    if (t.order_ticks() >= order_ || attempt >= 6) return t;
    // The relative precision carried by the state was too small for a term
    // of negative valuation; widen it and rebuild from n = 0.
    extra_ += (order_ - t.order_ticks()) + 2 * ring_.grid_denominator;
    ready_ = false;
  }
}

// ----------------------------------------------------------------------- sums

namespace {

bool negligible(const LaurentSeries& t, std::int64_t w) { return t.is_zero() || t.valuation_ticks() >= w; }

LaurentSeries sum_direction(TermGenerator& g, std::int64_t start, int dir, const SeriesContext& ctx,
                            const SumPolicy& policy) {
  const std::int64_t w = ctx.order_ticks();
  LaurentSeries acc = LaurentSeries::zero(ctx.ring());
  if (auto r = g.range()) {
    std::int64_t lo = dir > 0 ? std::max(start, r->first) : r->first;
    std::int64_t hi = dir > 0 ? r->second : std::min(start, r->second);
    for (std::int64_t n = dir > 0 ? lo : hi; dir > 0 ? n <= hi : n >= lo; n += dir) {
      acc += g.term(n, ctx).truncated(w);
    }
    return acc;
  }
  int run = 0;
  // Valuations of hypergeometric terms are eventually quadratic in n. Once
  // they have stopped growing faster and are not growing at all for a long
  // stretch, the sum cannot escape; bail out before the cap, since every
  // further term needs more working precision than the last.
  constexpr int kFlatRun = 12;
  int flat = 0;
  std::optional<std::int64_t> v1, d1;
  for (std::int64_t k = 0;; ++k) {
    if (k >= policy.hard_cap) {
      throw NonConvergentError("term valuations did not reach the truncation order within " +
                               std::to_string(policy.hard_cap) + " terms");
    }
    std::int64_t n = start + dir * k;
    LaurentSeries t = g.term(n, ctx);
    if (t.is_zero()) {
      v1.reset(), d1.reset(), flat = 0;
    } else {
      std::int64_t v = t.valuation_ticks();
      std::optional<std::int64_t> d;
      if (v1) d = v - *v1;
      flat = (d && d1 && *d <= 0 && *d - *d1 <= 0 && v < w) ? flat + 1 : 0;
      v1 = v, d1 = d;
      if (flat >= kFlatRun) {
        throw NonConvergentError("term valuations stopped increasing (q^" +
                                 QRational(v, ctx.grid_denominator).to_string() + " at n=" + std::to_string(n) +
                                 "); the series does not converge formally");
      }
    }
    t.truncate(w);
    run = negligible(t, w) ? run + 1 : 0;
    acc += t;
    if (run >= policy.consecutive_high_valuation) break;
  }
  return acc;
}

}  // namespace

LaurentSeries sum_unilateral(TermGenerator& g, const SeriesContext& ctx, const SumPolicy& policy) {
  return sum_direction(g, 0, +1, ctx, policy);
}

LaurentSeries sum_from(TermGenerator& g, std::int64_t start, const SeriesContext& ctx, const SumPolicy& policy) {
  return sum_direction(g, start, +1, ctx, policy);
}

LaurentSeries sum_bilateral(TermGenerator& g, const SeriesContext& ctx, const SumPolicy& policy) {
  LaurentSeries pos = sum_direction(g, 0, +1, ctx, policy);
  LaurentSeries negs = sum_direction(g, -1, -1, ctx, policy);
  return pos + negs;
}

LaurentSeries sum_range(TermGenerator& g, std::int64_t lo, std::int64_t hi, const SeriesContext& ctx) {
  const std::int64_t w = ctx.order_ticks();
  LaurentSeries acc = LaurentSeries::zero(ctx.ring());
  for (std::int64_t n = lo; n <= hi; ++n) acc += g.term(n, ctx).truncated(w);
  return acc;
}

Comparison compare_sides(const SidesFn& make, const SeriesContext& target, int attempts) {
  const std::int64_t need = target.order_ticks();
  const int d = target.grid_denominator;
  std::int64_t slack = 0;
  std::int64_t got = 0;
  for (int i = 0; i < attempts; ++i) {
    SeriesContext ctx = target.with_order(QRational(need + slack, d));
    SidePair sp = make(ctx);
    got = std::min(sp.lhs.order_ticks(), sp.rhs.order_ticks());
    if (got >= need) return equal_up_to(sp.lhs, sp.rhs, target.truncation_order);
    slack += (need - got) + 2 * d;
  }
  throw InsufficientPrecisionError("sides only known below " + QRational(got, d).to_string() +
                                   " after raising the working order; target " +
                                   target.truncation_order.to_string());
}

// ------------------------------------------------------------------- K factor

namespace {

// Exact finite Laurent polynomial in q used to assemble the K numerator.
class SparsePoly {
 public:
  SparsePoly() = default;
  SparsePoly(const ParamMonomial& m, const Ring& ring) {
    GridTerm t = to_grid(m, ring);
    terms_.emplace(t.tick, t.coeff);
    m_ = ring.cyclotomic_order;
  }
  static SparsePoly constant(long c, const Ring& ring) {
    return SparsePoly(ParamMonomial::constant(mpq_class(c)), ring);
  }

  friend SparsePoly operator+(const SparsePoly& a, const SparsePoly& b) {
    SparsePoly r = a;
    r.m_ = std::max(a.m_, b.m_);
    for (const auto& [k, c] : b.terms_) r.accumulate(k, c);
    return r;
  }
  friend SparsePoly operator-(const SparsePoly& a, const SparsePoly& b) {
    SparsePoly r = a;
    r.m_ = std::max(a.m_, b.m_);
    for (const auto& [k, c] : b.terms_) r.accumulate(k, -c);
    return r;
  }
  friend SparsePoly operator*(const SparsePoly& a, const SparsePoly& b) {
    SparsePoly r;
    r.m_ = std::max(a.m_, b.m_);
    for (const auto& [ka, ca] : a.terms_) {
      for (const auto& [kb, cb] : b.terms_) r.accumulate(ka + kb, ca * cb);
    }
    return r;
  }

  std::vector<GridTerm> terms() const {
    std::vector<GridTerm> out;
    for (const auto& [k, c] : terms_) out.push_back(GridTerm{k, c});
    return out;
  }

 private:
  void accumulate(std::int64_t k, const CycloCoeff& c) {
    auto it = terms_.find(k);
    if (it == terms_.end()) {
      if (!c.is_zero()) terms_.emplace(k, c);
      return;
    }
    it->second = it->second + c;
    if (it->second.is_zero()) terms_.erase(it);
  }

  std::map<std::int64_t, CycloCoeff> terms_;
  int m_ = 1;
};

}  // namespace

LaurentSeries chu_K(const ParamMonomial& a, const ParamMonomial& b, const ParamMonomial& c,
                    const ParamMonomial& d, const ParamMonomial& e, const ParamMonomial& u,
                    const ParamMonomial& v, const ParamMonomial& base, const SeriesContext& ctx) {
  const Ring ring = ctx.ring();
  auto P = [&](const ParamMonomial& m) { return SparsePoly(m, ring); };
  const SparsePoly one = SparsePoly::constant(1, ring);
  const SparsePoly A = P(a), U = P(u), V = P(v), Q = P(base);
  const SparsePoly s1 = P(b) + P(c) + P(d) + P(e);
  const SparsePoly s2 = P(b * c) + P(b * d) + P(b * e) + P(c * d) + P(c * e) + P(d * e);
  const SparsePoly s3 = P(b * c * d) + P(b * c * e) + P(b * d * e) + P(c * d * e);
  const SparsePoly s4 = P(b * c * d * e);
  const SparsePoly A2 = A * A;
  const SparsePoly UV = U * V;

  SparsePoly num = UV * (s3 - A * s1) * (Q * s3 - A * s1) * A2 +
                   (one - Q) * UV * (A2 - s4) * (A2 - s2 * A + s4) * A +
                   (U + V) * (A + UV) * (s3 - A * s1) * (A2 - Q * s4) * A +
                   (U * U + A) * (V * V + A) * (A2 - s4) * (A2 - Q * s4);

  const ParamMonomial a2 = a * a;
  const ParamMonomial bcde = b * c * d * e;
  struct DenFactor {
    ParamMonomial t0, t1;
    const char* name;
  };
  const DenFactor dens[] = {
      {a2, -bcde, "a^2 - bcde"},   {a2, -(bcde * base), "a^2 - bcde*q"},
      {kOne, -u, "1 - u"},         {a, -u, "a - u"},
      {kOne, -v, "1 - v"},         {a, -v, "a - v"},
  };
  std::int64_t shift = 0;
  std::vector<std::pair<GridTerm, GridTerm>> grid_dens;
  for (const auto& f : dens) {
    GridTerm t0 = to_grid(f.t0, ring), t1 = to_grid(f.t1, ring);
    if (t0.tick == t1.tick && (t0.coeff + t1.coeff).is_zero()) {
      throw SingularKError(std::string("K is singular: denominator factor (") + f.name + ") vanishes at a=" +
                           a.to_string() + ", b=" + b.to_string() + ", c=" + c.to_string() + ", d=" +
                           d.to_string() + ", e=" + e.to_string() + ", u=" + u.to_string() + ", v=" +
                           v.to_string());
    }
    shift += std::min(t0.tick, t1.tick);
    grid_dens.emplace_back(t0, t1);
  }
  LaurentSeries k = LaurentSeries::from_terms(ring, num.terms(), ctx.order_ticks() + shift);
  for (const auto& [t0, t1] : grid_dens) k.div_binomial(t0, t1);
  return k;
}

// ------------------------------------------------------------- named sums

namespace {

std::optional<std::pair<ParamMonomial, ParamMonomial>> one_minus(const ParamMonomial& x) {
  return std::make_pair(kOne, -x);
}

// The n >= 0 half of the ten-parameter sum.
TermBuilder chu_positive(const ParamMonomial& a, const ParamMonomial& b, const ParamMonomial& c,
                         const ParamMonomial& d, const ParamMonomial& e, const ParamMonomial& u,
                         const ParamMonomial& v) {
  const ParamMonomial q = qm(1);
  TermBuilder t;
  t.per_n([a, q](std::int64_t n) { return one_minus(a * q.pow(2 * n)); });
  t.times_binomial(kOne, -a, true);
  for (const auto& x : {b, c, d, e, u * q, v * q, a * q / u, a * q / v}) t.num(x);
  for (const auto& x : {a * q / b, a * q / c, a * q / d, a * q / e, u, v, a / u, a / v}) t.den(x);
  t.power(a * a / (q * b * c * d * e));
  return t;
}

// The n >= 1 half, written with positive indices.
TermBuilder chu_negative(const ParamMonomial& a, const ParamMonomial& b, const ParamMonomial& c,
                         const ParamMonomial& d, const ParamMonomial& e, const ParamMonomial& u,
                         const ParamMonomial& v) {
  const ParamMonomial q = qm(1);
  TermBuilder t;
  const ParamMonomial ainv = a.inverse();
  t.per_n([ainv, q](std::int64_t n) { return one_minus(q.pow(2 * n) * ainv); });
  t.times_binomial(kOne, -ainv, true);
  for (const auto& x : {b / a, c / a, d / a, e / a, u * q / a, v * q / a, q / u, q / v}) t.num(x);
  for (const auto& x : {q / b, q / c, q / d, q / e, u.inverse(), v.inverse(), u / a, v / a}) t.den(x);
  t.power(a * a / (q * b * c * d * e));
  return t;
}

QProduct bailey_product(const ParamMonomial& a, const ParamMonomial& b, const ParamMonomial& c,
                        const ParamMonomial& d, const ParamMonomial& e) {
  const ParamMonomial q = qm(1);
  QProduct p;
  for (const auto& x : {a * q, a * q / (b * c), a * q / (b * d), a * q / (b * e), a * q / (c * d),
                        a * q / (c * e), a * q / (d * e), q, q / a}) {
    p.num_inf(x);
  }
  for (const auto& x : {a * q / b, a * q / c, a * q / d, a * q / e, q / b, q / c, q / d, q / e,
                        q * a * a / (b * c * d * e)}) {
    p.den_inf(x);
  }
  return p;
}

}  // namespace

SidePair chu_10psi10_sides(const ParamMonomial& a, const ParamMonomial& b, const ParamMonomial& c,
                           const ParamMonomial& d, const ParamMonomial& e, const ParamMonomial& u,
                           const ParamMonomial& v, const SeriesContext& ctx, const SumPolicy& policy) {
  TermBuilder pos = chu_positive(a, b, c, d, e, u, v);
  TermBuilder negs = chu_negative(a, b, c, d, e, u, v);
  LaurentSeries lhs = sum_unilateral(pos, ctx, policy) + sum_from(negs, 1, ctx, policy);
  LaurentSeries rhs = chu_K(a, b, c, d, e, u, v, qm(1), ctx) * bailey_product(a, b, c, d, e).eval(ctx);
  return {lhs, rhs};
}

LaurentSeries chu_10psi10_bilateral(const ParamMonomial& a, const ParamMonomial& b, const ParamMonomial& c,
                                    const ParamMonomial& d, const ParamMonomial& e, const ParamMonomial& u,
                                    const ParamMonomial& v, const SeriesContext& ctx, const SumPolicy& policy) {
  TermBuilder all = chu_positive(a, b, c, d, e, u, v);
  return sum_bilateral(all, ctx, policy);
}

SidePair chu_corollary_b_ac(const ParamMonomial& a, const ParamMonomial& c, const ParamMonomial& d,
                            const ParamMonomial& e, const ParamMonomial& u, const ParamMonomial& v,
                            const SeriesContext& ctx, const SumPolicy& policy) {
  const ParamMonomial q = qm(1);
  const ParamMonomial b = a / c;
  TermBuilder pos = chu_positive(a, b, c, d, e, u, v);
  TermBuilder negs = chu_negative(a, b, c, d, e, u, v);
  LaurentSeries lhs = sum_unilateral(pos, ctx, policy) + sum_from(negs, 1, ctx, policy);
  QProduct p;
  p.binomial(kOne, -(u / c)).binomial(kOne, -(c * u / a)).binomial(kOne, -(v / c)).binomial(kOne, -(c * v / a));
  p.binomial(kOne, -(u / a), true).binomial(kOne, -u, true).binomial(kOne, -(v / a), true).binomial(kOne, -v, true);
  for (const auto& x : {a * q, q, c * q / d, c * q / e, a * q / (c * d), a * q / (c * e), a * q / (d * e), q,
                        q / a}) {
    p.num_inf(x);
  }
  for (const auto& x : {c * q, a * q / c, a * q / d, a * q / e, c * q / a, q / c, q / d, q / e, q * a / (d * e)}) {
    p.den_inf(x);
  }
  return {lhs, p.eval(ctx)};
}

std::unique_ptr<TermGenerator> bailey_6psi6_terms(const ParamMonomial& a, const ParamMonomial& b,
                                                  const ParamMonomial& c, const ParamMonomial& d,
                                                  const ParamMonomial& e) {
  const ParamMonomial q = qm(1);
  auto t = std::make_unique<TermBuilder>();
  t->per_n([a, q](std::int64_t n) { return one_minus(a * q.pow(2 * n)); });
  t->times_binomial(kOne, -a, true);
  for (const auto& x : {b, c, d, e}) t->num(x);
  for (const auto& x : {a * q / b, a * q / c, a * q / d, a * q / e}) t->den(x);
  t->power(q * a * a / (b * c * d * e));
  return t;
}

SidePair bailey_6psi6_sides(const ParamMonomial& a, const ParamMonomial& b, const ParamMonomial& c,
                            const ParamMonomial& d, const ParamMonomial& e, const SeriesContext& ctx,
                            const SumPolicy& policy) {
  auto g = bailey_6psi6_terms(a, b, c, d, e);
  LaurentSeries lhs = sum_bilateral(*g, ctx, policy);
  return {lhs, bailey_product(a, b, c, d, e).eval(ctx)};
}

std::unique_ptr<TermGenerator> jackson_6phi5_terms(const ParamMonomial& a, const ParamMonomial& b,
                                                   const ParamMonomial& c, const ParamMonomial& d) {
  const ParamMonomial q = qm(1);
  auto t = std::make_unique<TermBuilder>();
  std::optional<ParamMonomial> ra;
  try {
    ra = a.sqrt();
  } catch (const Error&) {
  }
  if (ra) {
    // Literal very-well-poised parameters q*sqrt(a), -q*sqrt(a) over sqrt(a), -sqrt(a).
    t->num(a).num(q * *ra).num(-(q * *ra)).den(*ra).den(-*ra);
  } else {
    t->well_poised(a);
  }
  for (const auto& x : {b, c, d}) t->num(x);
  for (const auto& x : {q, a * q / b, a * q / c, a * q / d}) t->den(x);
  t->power(a * q / (b * c * d));
  return t;
}

SidePair jackson_6phi5_sides(const ParamMonomial& a, const ParamMonomial& b, const ParamMonomial& c,
                             const ParamMonomial& d, const SeriesContext& ctx, const SumPolicy& policy) {
  const ParamMonomial q = qm(1);
  auto g = jackson_6phi5_terms(a, b, c, d);
  LaurentSeries lhs = sum_unilateral(*g, ctx, policy);
  QProduct p;
  p.num_inf(a * q).num_inf(a * q / (b * c)).num_inf(a * q / (b * d)).num_inf(a * q / (c * d));
  p.den_inf(a * q / b).den_inf(a * q / c).den_inf(a * q / d).den_inf(a * q / (b * c * d));
  return {lhs, p.eval(ctx)};
}

SidePair q_gauss_andrews_sides(const ParamMonomial& a, const ParamMonomial& b, const SeriesContext& ctx,
                               const SumPolicy& policy) {
  const ParamMonomial q = qm(1), q2 = qm(2);
  TermBuilder t;
  t.num(a).num(b).den(q).den(a * b * q, q2, 1, 0).quadratic(QRational(1, 2), QRational(1, 2));
  LaurentSeries lhs = sum_unilateral(t, ctx, policy);
  QProduct p(q2);
  p.num_inf(a * q).num_inf(b * q).den_inf(q).den_inf(a * b * q);
  return {lhs, p.eval(ctx)};
}

SidePair q_gauss_heine_sides(const ParamMonomial& a, const ParamMonomial& c, const SeriesContext& ctx,
                             const SumPolicy& policy) {
  const ParamMonomial q = qm(1);
  TermBuilder t;
  t.num(a).den(c).den(q).quadratic(QRational(1, 2), QRational(-1, 2)).power(-(c / a));
  LaurentSeries lhs = sum_unilateral(t, ctx, policy);
  QProduct p;
  p.num_inf(c / a).den_inf(c);
  return {lhs, p.eval(ctx)};
}

SidePair q_pfaff_saalschutz_sides(const ParamMonomial& a, const ParamMonomial& y, const ParamMonomial& z,
                                  std::int64_t n, const SeriesContext& ctx) {
  if (n < 0) throw InvalidSpecializationError("N must be nonnegative");
  const ParamMonomial q = qm(1);
  const ParamMonomial qn = qm(-n);
  TermBuilder t;
  t.num(y).num(z).num(qn).den(q).den(a * q).den(y * z * qn / a).power(q).restrict_to(0, n);
  LaurentSeries lhs = sum_range(t, 0, n, ctx);
  QProduct p;
  p.num(a * q / y, n).num(a * q / z, n).den(a * q, n).den(a * q / (y * z), n);
  return {lhs, p.eval(ctx)};
}

Comparison q_pfaff_saalschutz_check(const ParamMonomial& a, const ParamMonomial& y, const ParamMonomial& z,
                                    std::int64_t n, const SeriesContext& ctx) {
  return compare_sides([&](const SeriesContext& c) { return q_pfaff_saalschutz_sides(a, y, z, n, c); }, ctx);
}

}  // namespace qseries
