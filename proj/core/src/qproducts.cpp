#include "qseries/qproducts.hpp"

#include <algorithm>

#include "qseries/error.hpp"

namespace qseries {

namespace {

struct Factor {
  GridTerm term;  // the factor is 1 - term
  bool den;
  std::string label;
};

std::string describe(const ParamMonomial& x, const ParamMonomial& base, std::optional<std::int64_t> n) {
  return "(" + x.to_string() + ";" + base.to_string() + ")_" + (n ? std::to_string(*n) : "inf");
}

bool is_unit_one(const GridTerm& t) { return t.tick == 0 && t.coeff.is_one(); }

}  // namespace

QProduct& QProduct::add(const ParamMonomial& x, const ParamMonomial& base, std::optional<std::int64_t> n,
                        bool den) {
  items_.push_back(Item{x, base, n, den});
  return *this;
}

QProduct& QProduct::times(const ParamMonomial& m) {
  scalar_ = scalar_ * m;
  return *this;
}

QProduct& QProduct::binomial(const ParamMonomial& t0, const ParamMonomial& t1, bool in_denominator) {
  binomials_.push_back(Binomial{t0, t1, in_denominator});
  return *this;
}

LaurentSeries QProduct::eval(const SeriesContext& ctx) const {
  const Ring ring = ctx.ring();
  const std::int64_t w = ctx.order_ticks();
  const CycloCoeff one(ring.cyclotomic_order, mpq_class(1));

  // Factors with nonpositive exponent are enumerated eagerly; they fix the
  // valuation. Positive tails of infinite products are streamed afterwards.
  std::vector<Factor> head;
  struct Tail {
    GridTerm next;
    GridTerm step;
    bool den;
  };
  std::vector<Tail> tails;
  bool vanishes = false;

  for (const auto& it : items_) {
    GridTerm x = to_grid(it.x, ring);
    GridTerm b = to_grid(it.base, ring);
    std::string label = describe(it.x, it.base, it.n);
    if (!it.n) {
      if (b.tick <= 0) {
        throw InvalidSpecializationError("infinite product " + label + " needs a base with positive exponent");
      }
      GridTerm cur = x;
      while (cur.tick <= 0) {
        head.push_back(Factor{cur, it.den, label});
        cur = GridTerm{cur.tick + b.tick, cur.coeff * b.coeff};
      }
      tails.push_back(Tail{cur, b, it.den});
      continue;
    }
    if (*it.n >= 0) {
      GridTerm cur = x;
      for (std::int64_t j = 0; j < *it.n; ++j) {
        head.push_back(Factor{cur, it.den, label});
        cur = GridTerm{cur.tick + b.tick, cur.coeff * b.coeff};
      }
    } else {
      // (x;B)_{-r} = 1 / (x B^{-r}; B)_r: the roles flip.
      CycloCoeff binv = b.coeff.inverse();
      GridTerm cur = x;
      for (std::int64_t j = 1; j <= -*it.n; ++j) {
        cur = GridTerm{cur.tick - b.tick, cur.coeff * binv};
        head.push_back(Factor{cur, !it.den, label});
      }
    }
  }

  std::int64_t shift = 0;
  for (const auto& f : head) {
    if (is_unit_one(f.term)) {
      if (f.den) {
        throw NotAUnitError("zero divisor: factor (1 - " + ParamMonomial(f.term.coeff, from_ticks(f.term.tick, ring.grid_denominator)).to_string() +
                            ") of " + f.label + " vanishes");
      }
      vanishes = true;
      continue;
    }
    std::int64_t lo = std::min<std::int64_t>(0, f.term.tick);
    shift += f.den ? -lo : lo;
  }
  std::vector<std::pair<GridTerm, GridTerm>> binoms;
  std::vector<bool> binom_den;
  for (const auto& bn : binomials_) {
    GridTerm t0 = to_grid(bn.t0, ring), t1 = to_grid(bn.t1, ring);
    if (t0.tick == t1.tick && (t0.coeff + t1.coeff).is_zero()) {
      if (bn.den) {
        throw NotAUnitError("zero divisor: factor (" + bn.t0.to_string() + " + " + bn.t1.to_string() + ") vanishes");
      }
      vanishes = true;
      continue;
    }
    shift += (bn.den ? -1 : 1) * std::min(t0.tick, t1.tick);
    binoms.emplace_back(t0, t1);
    binom_den.push_back(bn.den);
  }
  if (vanishes) return LaurentSeries::zero(ring);

  GridTerm sc = to_grid(scalar_, ring);
  shift += sc.tick;
  const std::int64_t rel = w - shift;
  LaurentSeries s = LaurentSeries::one(ring, rel);
  const GridTerm unit{0, one};
  for (const auto& f : head) {
    GridTerm neg{f.term.tick, -f.term.coeff};
    if (f.den) {
      s.div_binomial(unit, neg);
    } else {
      s.mul_binomial(unit, neg);
    }
  }
  for (std::size_t i = 0; i < binoms.size(); ++i) {
    if (binom_den[i]) {
      s.div_binomial(binoms[i].first, binoms[i].second);
    } else {
      s.mul_binomial(binoms[i].first, binoms[i].second);
    }
  }
  for (auto& t : tails) {
    // A factor 1 - c q^e with e >= rel cannot reach any stored coefficient.
    while (t.next.tick < rel) {
      GridTerm neg{t.next.tick, -t.next.coeff};
      if (t.den) {
        s.div_binomial(unit, neg);
      } else {
        s.mul_binomial(unit, neg);
      }
      t.next = GridTerm{t.next.tick + t.step.tick, t.next.coeff * t.step.coeff};
    }
  }
  s.mul_monomial(sc);
  return s;
}

LaurentSeries qpoch(const PochSpec& spec, const SeriesContext& ctx) {
  return QProduct(spec.base).num(spec).eval(ctx);
}

LaurentSeries qpoch(const ParamMonomial& x, const ParamMonomial& base, std::int64_t n,
                    const SeriesContext& ctx) {
  return QProduct(base).num(x, n).eval(ctx);
}

LaurentSeries qpoch_inf(const ParamMonomial& x, const ParamMonomial& base, const SeriesContext& ctx) {
  return QProduct(base).num_inf(x).eval(ctx);
}

Comparison qpoch_ratio_identity_check(std::int64_t n, std::int64_t j, const SeriesContext& ctx) {
  if (j < 0 || j > n) throw InvalidSpecializationError("need 0 <= j <= n");
  const auto q = [](std::int64_t e) { return ParamMonomial::q(QRational(e)); };
  LaurentSeries lhs = qpoch(q(-n), q(1), j, ctx);
  QProduct rhs;
  rhs.num(q(1), n).den(q(1), n - j).times(q(j * (j - 1) / 2)).times((-q(n)).pow(-j));
  LaurentSeries r = rhs.eval(ctx);
  return equal_up_to(lhs, r, ctx.truncation_order);
}

LaurentSeries theta_product(const QRational& s, const QRational& r, Sign sign, const SeriesContext& ctx) {
  if (r <= QRational(0)) throw DivergentError("theta product needs r > 0");
  mpq_class c(sign_value(sign));
  ParamMonomial base = ParamMonomial::q(QRational(2) * r);
  return QProduct(base)
      .num_inf(ParamMonomial(c, s))
      .num_inf(ParamMonomial(c, QRational(2) * r - s))
      .num_inf(base)
      .eval(ctx);
}

namespace {

// Collects sign^n q^(r n^2 + s n) for n in [lo, +inf) (dir = +1) or
// (-inf, lo] (dir = -1), stopping once the exponent has passed its minimum
// and reached the order.
void collect_quadratic(const QRational& r, const QRational& s, Sign sign, std::int64_t lo, int dir,
                       const CycloCoeff& factor, const SeriesContext& ctx, std::vector<GridTerm>& out) {
  const QRational w = ctx.truncation_order;
  // Vertex of r n^2 + s n.
  const QRational vertex = -s / (QRational(2) * r);
  for (std::int64_t n = lo;; n += dir) {
    QRational e = r * QRational(n) * QRational(n) + s * QRational(n);
    bool past_vertex = dir > 0 ? QRational(n) >= vertex : QRational(n) <= vertex;
    if (e >= w) {
      if (past_vertex) break;
      continue;
    }
    CycloCoeff c = factor;
    if (sign == Sign::Minus && (n % 2 != 0)) c = -c;
    out.push_back(GridTerm{to_ticks(e, ctx.grid_denominator), c});
  }
}

}  // namespace

LaurentSeries theta_series(const QRational& r, const QRational& s, Sign sign, const SeriesContext& ctx) {
  if (r <= QRational(0)) throw DivergentError("theta series of order " + r.to_string() + " diverges");
  std::vector<GridTerm> terms;
  CycloCoeff one(ctx.cyclotomic_order, mpq_class(1));
  collect_quadratic(r, s, sign, 0, +1, one, ctx, terms);
  collect_quadratic(r, s, sign, -1, -1, one, ctx, terms);
  return LaurentSeries::from_terms(ctx.ring(), terms, ctx.order_ticks());
}

LaurentSeries false_theta_series(const QRational& r, const QRational& s, Sign sign,
                                 const SeriesContext& ctx) {
  if (r <= QRational(0)) throw DivergentError("false theta series of order " + r.to_string() + " diverges");
  std::vector<GridTerm> terms;
  CycloCoeff one(ctx.cyclotomic_order, mpq_class(1));
  collect_quadratic(r, s, sign, 0, +1, one, ctx, terms);
  // sum_{n>=1} sign^n q^(r n^2 - s n), subtracted.
  collect_quadratic(r, -s, sign, 1, +1, -one, ctx, terms);
  return LaurentSeries::from_terms(ctx.ring(), terms, ctx.order_ticks());
}

LaurentSeries false_theta_factored(const QRational& r, const QRational& s, const SeriesContext& ctx) {
  if (r <= QRational(0)) throw DivergentError("false theta series of order " + r.to_string() + " diverges");
  std::vector<GridTerm> terms;
  const QRational w = ctx.truncation_order;
  CycloCoeff one(ctx.cyclotomic_order, mpq_class(1));
  for (std::int64_t n = 0;; ++n) {
    QRational e = r * QRational(n * n) + s * QRational(n);
    QRational e2 = e + QRational(2 * n + 1) * (r - s);
    if (e >= w && e2 >= w && QRational(n) > -s / (QRational(2) * r)) break;
    if (e < w) terms.push_back(GridTerm{to_ticks(e, ctx.grid_denominator), one});
    if (e2 < w) terms.push_back(GridTerm{to_ticks(e2, ctx.grid_denominator), -one});
  }
  return LaurentSeries::from_terms(ctx.ring(), terms, ctx.order_ticks());
}

}  // namespace qseries
