#include "qseries/bailey.hpp"

#include <algorithm>
#include <array>
#include <set>
#include <utility>

#include "qseries/error.hpp"
#include "qseries/qproducts.hpp"

namespace qseries {

namespace {

const ParamMonomial kOne = ParamMonomial::constant(1);
const ParamMonomial kMinus = ParamMonomial::constant(-1);

std::int64_t floor_mod(std::int64_t a, std::int64_t k) {
  std::int64_t r = a % k;
  return r < 0 ? r + k : r;
}

LaurentSeries one_at(const SeriesContext& ctx) { return LaurentSeries::one(ctx.ring(), ctx.order_ticks()); }

using Factor = std::function<LaurentSeries(const SeriesContext&)>;

// Product of factors whose valuations may be negative: each factor is
// re-evaluated until its order covers what the others take away.
LaurentSeries product_of(const std::vector<Factor>& fs, const SeriesContext& ctx) {
  const std::int64_t w = ctx.order_ticks();
  const int d = ctx.grid_denominator;
  std::vector<LaurentSeries> vals;
  for (const auto& f : fs) {
    vals.push_back(f(ctx));
    if (vals.back().is_zero() && vals.back().exact()) return LaurentSeries::zero(ctx.ring());
  }
  auto low = [](const LaurentSeries& s) { return s.is_zero() ? s.order_ticks() : s.valuation_ticks(); };
  for (int pass = 0; pass < 3; ++pass) {
    bool redo = false;
    for (std::size_t i = 0; i < vals.size(); ++i) {
      std::int64_t others = 0;
      for (std::size_t j = 0; j < vals.size(); ++j) {
        if (j != i) others += low(vals[j]);
      }
      std::int64_t need = std::max<std::int64_t>(w - others, 1);
      if (vals[i].order_ticks() < need) {
        vals[i] = fs[i](ctx.with_order(QRational(need, d)));
        redo = true;
      }
    }
    if (!redo) break;
  }
  LaurentSeries r = vals[0];
  for (std::size_t j = 1; j < vals.size(); ++j) r *= vals[j];
  r.truncate(w);
  return r;
}

// pre * S where S is a sum that can be recomputed at any order.
LaurentSeries scaled(const QProduct& pre, const Factor& sum, const SeriesContext& ctx) {
  return product_of({[&](const SeriesContext& c) { return pre.eval(c); }, sum}, ctx);
}

// alpha_n assembled from blocks living on residue classes n = k r + residue,
// each an incremental term in r. alpha_0 = 1 always.
class PiecewiseAlpha {
 public:
  PiecewiseAlpha(int k, ParamMonomial block_base) : k_(k), base_(std::move(block_base)) {}

  TermBuilder& piece(int residue) {
    pieces_.push_back(Piece{residue, std::make_shared<TermBuilder>(base_)});
    return *pieces_.back().tb;
  }

  LaurentSeries operator()(std::int64_t n, const SeriesContext& ctx) const {
    if (n == 0) return one_at(ctx);
    LaurentSeries acc = LaurentSeries::zero(ctx.ring());
    for (const auto& p : pieces_) {
      std::int64_t d = n - p.residue;
      if (floor_mod(d, k_) != 0 || d < 0) continue;
      acc += p.tb->term(d / k_, ctx);
    }
    return acc;
  }

  std::vector<int> vanishing() const {
    std::set<int> covered;
    for (const auto& p : pieces_) covered.insert(static_cast<int>(floor_mod(p.residue, k_)));
    std::vector<int> out;
    for (int r = 0; r < k_; ++r) {
      if (!covered.count(r)) out.push_back(r);
    }
    return out;
  }

  int modulus() const { return k_; }

 private:
  struct Piece {
    int residue;
    std::shared_ptr<TermBuilder> tb;
  };
  int k_;
  ParamMonomial base_;
  std::vector<Piece> pieces_;
};

using BetaProd = std::function<QProduct(std::int64_t)>;
using KFn = std::function<LaurentSeries(std::int64_t, const SeriesContext&)>;

// Collects the pieces of one pair while it is being written down.
class PairMaker {
 public:
  PairMaker(std::string id, const Assignment& spec, const Variable& var, int k)
      : id_(std::move(id)), spec_(spec), var_(var), alpha_(std::make_shared<PiecewiseAlpha>(k, var.pow(k))) {}

  // x^e in the pair's variable.
  ParamMonomial q(const QRational& e) const { return var_.pow(e); }
  const ParamMonomial& x() const { return var_.x; }
  ParamMonomial p(const std::string& name) const {
    auto it = spec_.find(name);
    if (it == spec_.end()) throw InvalidSpecializationError("pair " + id_ + " needs parameter " + name);
    return it->second;
  }

  TermBuilder& piece(int residue) { return alpha_->piece(residue); }

  // x^(a r^2 + c r + k).
  TermBuilder& quad(TermBuilder& t, const QRational& a, const QRational& c, std::int64_t k = 0) const {
    t.quadratic(a, c, var_.x);
    if (k != 0) t.times(q(k));
    return t;
  }
  // (-1)^r, or (-1)^(r+1) with flip.
  static TermBuilder& sign(TermBuilder& t, bool flip = false) {
    t.power(kMinus);
    if (flip) t.times(kMinus);
    return t;
  }
  // (1 + s x^(j r + i)) / (1 + s x^d) with s = -1 or +1.
  TermBuilder& frac(TermBuilder& t, std::int64_t j, std::int64_t i, std::int64_t d, int s = -1) const {
    Variable v = var_;
    ParamMonomial c = ParamMonomial::constant(s);
    t.per_n([v, j, i, c](std::int64_t r) {
      return std::optional<std::pair<ParamMonomial, ParamMonomial>>(std::make_pair(kOne, c * v.pow(j * r + i)));
    });
    t.times_binomial(kOne, c * q(d), true);
    return t;
  }
  static TermBuilder& ratio(TermBuilder& t, std::initializer_list<ParamMonomial> nums,
                            std::initializer_list<ParamMonomial> dens, std::int64_t offset = 0) {
    for (const auto& x : nums) t.num(x, 1, offset);
    for (const auto& x : dens) t.den(x, 1, offset);
    return t;
  }
  // z^(r + offset).
  static TermBuilder& zpow(TermBuilder& t, const ParamMonomial& z, std::int64_t offset = 0) {
    t.power(z);
    if (offset != 0) t.times(z.pow(offset));
    return t;
  }

  // K(a, x^-n, x^(1-n), ..., u, v; base) with n <= trivial_upto giving 1.
  KFn k_fn(std::function<std::array<ParamMonomial, 5>(std::int64_t)> args, ParamMonomial u, ParamMonomial v,
           ParamMonomial base, std::int64_t trivial_upto) const {
    return [args, u, v, base, trivial_upto](std::int64_t n, const SeriesContext& ctx) {
      if (n <= trivial_upto) return one_at(ctx);
      auto a = args(n);
      return chu_K(a[0], a[1], a[2], a[3], a[4], u, v, base, ctx);
    };
  }

  void beta(BetaProd prod, KFn k = nullptr, KFn k_small = nullptr) {
    prod_ = std::move(prod);
    k_ = std::move(k);
    k_small_ = std::move(k_small);
  }

  std::unique_ptr<BaileyPair> done(const ParamMonomial& relative) {
    auto alpha = alpha_;
    BaileyPair::SeriesFn afn = [alpha](std::int64_t n, const SeriesContext& ctx) { return (*alpha)(n, ctx); };
    BetaProd prod = prod_;
    KFn k = k_;
    KFn small = k_small_;
    BaileyPair::SeriesFn bfn = [prod, k, small](std::int64_t n, const SeriesContext& ctx) {
      if (n == 0) return one_at(ctx);
      std::vector<Factor> fs;
      fs.push_back([&](const SeriesContext& c) { return prod(n).eval(c); });
      if (small) {
        fs.push_back([&](const SeriesContext& c) { return small(n, c); });
      } else if (k) {
        fs.push_back([&](const SeriesContext& c) { return k(n, c); });
      }
      return product_of(fs, ctx);
    };
    return std::make_unique<BaileyPair>(id_, relative, var_, spec_, std::move(afn), std::move(bfn),
                                        alpha_->modulus(), alpha_->vanishing());
  }

 private:
  std::string id_;
  Assignment spec_;
  Variable var_;
  std::shared_ptr<PiecewiseAlpha> alpha_;
  BetaProd prod_;
  KFn k_;
  KFn k_small_;
};

using M = PairMaker;
using P = ParamMonomial;
using R = QRational;

// ---------------------------------------------------------------- Sgen1 type

std::unique_ptr<BaileyPair> chubp1(const Assignment& s, const Variable& var) {
  M m("chubp1", s, var, 1);
  const P a = m.p("a"), b = m.p("b"), c = m.p("c"), u = m.p("u"), v = m.p("v"), X = m.x();
  auto& t = m.piece(0);
  t.well_poised(a);
  M::ratio(t, {b, c, X * u, X * a / u, X * v, X * a / v}, {X * a / b, X * a / c, u, a / u, v, a / v, X});
  t.power(-a / (b * c));
  m.quad(t, R(1, 2), R(-3, 2));
  m.beta([=](std::int64_t n) { return QProduct(X).num(a * X / (b * c), n).den(a * X / b, n).den(a * X / c, n).den(X, n); },
         m.k_fn([=](std::int64_t n) { return std::array<P, 5>{a, b, c, X.pow(-n), a}; }, u, v, X, 0));
  return m.done(a);
}

std::unique_ptr<BaileyPair> sgen1_like(const std::string& id, const Assignment& s, const Variable& var, const P& a,
                                       const P& b, const P& c) {
  M m(id, s, var, 1);
  const P X = m.x();
  auto& t = m.piece(0);
  t.well_poised(a);
  M::ratio(t, {b, c}, {X * a / b, X * a / c, X});
  t.power(-a / (b * c));
  m.quad(t, R(1, 2), R(1, 2));
  m.beta([=](std::int64_t n) { return QProduct(X).num(a * X / (b * c), n).den(a * X / b, n).den(a * X / c, n).den(X, n); });
  return m.done(a);
}

// b -> 0 limit of Sgen1.
std::unique_ptr<BaileyPair> h12(const Assignment& s, const Variable& var) {
  M m("H12", s, var, 1);
  const P a = m.p("a"), c = m.p("c"), X = m.x();
  auto& t = m.piece(0);
  t.well_poised(a);
  M::ratio(t, {c}, {X * a / c, X});
  t.power(c.inverse());
  m.beta([=](std::int64_t n) { return QProduct(X).den(a * X / c, n).den(X, n).times(c.pow(-n)); });
  return m.done(a);
}

// ---------------------------------------------------------------- modulus 3

std::unique_ptr<BaileyPair> chubp22(const Assignment& s, const Variable& var) {
  M m("chubp22", s, var, 3);
  const P a = m.p("a"), u = m.p("u"), v = m.p("v"), X = m.x(), X3 = m.q(3);
  auto& t = m.piece(0);
  t.well_poised(a);
  M::ratio(t, {X3 * u, X3 * v, a * X3 / u, a * X3 / v}, {u, v, a / u, a / v, X3});
  m.quad(t, R(9, 2), R(-15, 2));
  t.power(-a);
  m.beta([=](std::int64_t n) { return QProduct(X).num(a, X3, n).den(a, X, 2 * n).den(X, X, n); },
         m.k_fn([=](std::int64_t n) { return std::array<P, 5>{a, X.pow(-n), X.pow(1 - n), X.pow(2 - n), a}; }, u, v,
                X3, 2));
  return m.done(a);
}

std::unique_ptr<BaileyPair> chubp22ab(const std::string& id, bool second, const Assignment& s, const Variable& var) {
  M m(id, s, var, 3);
  const P a = m.p("a"), u = m.p("u"), v = m.p("v"), X = m.x(), X3 = m.q(3), X4 = m.q(4);
  auto block = [&](TermBuilder& t) -> TermBuilder& {
    M::ratio(t, {a * X, X3 * u, X3 * v, a * X4 / u, a * X4 / v}, {u, v, a * X / u, a * X / v, X3});
    return t.power(-a);
  };
  if (!second) {
    auto& t0 = m.piece(0);
    block(t0);
    m.quad(t0, R(9, 2), R(-13, 2));
    auto& t1 = m.piece(1);
    block(t1);
    m.quad(t1, R(9, 2), R(-1, 2), 1).times(-a);
  } else {
    auto& t0 = m.piece(0);
    block(t0);
    m.quad(t0, R(9, 2), R(-7, 2));
    auto& t1 = m.piece(1);
    block(t1);
    m.quad(t1, R(9, 2), R(-7, 2)).times(kMinus);
  }
  m.beta(
      [=](std::int64_t n) {
        return QProduct(X).num(a * X, X3, n).den(a * X, X, 2 * n).den(X, X, n).times(second ? X.pow(n) : kOne);
      },
      m.k_fn([=](std::int64_t n) { return std::array<P, 5>{a * X, X.pow(-n), X.pow(1 - n), X.pow(2 - n), a * X}; },
             u, v, X3, 0));
  return m.done(a);
}

// chubp3 (0), chubp5 (1), chubp55 (2).
std::unique_ptr<BaileyPair> chu_t3(const std::string& id, int which, const Assignment& s, const Variable& var) {
  M m(id, s, var, 3);
  const P e = m.p("e"), u = m.p("u"), v = m.p("v"), X = m.x(), X3 = m.q(3), X4 = m.q(4);
  auto A = [&](TermBuilder& t) -> TermBuilder& {
    M::ratio(t, {e, X3 * u, X3 * v, X4 / u, X4 / v}, {X4 / e, u, v, X / u, X / v});
    return M::zpow(t, e.inverse());
  };
  auto B = [&](TermBuilder& t) -> TermBuilder& {
    M::ratio(t, {e / X, m.q(2) * u, m.q(2) * v, X3 / u, X3 / v}, {X3 / e, u / X, v / X, u.inverse(), v.inverse()});
    return M::zpow(t, e.inverse());
  };
  const R h(9, 2);
  if (which == 0) {
    m.quad(M::sign(A(m.piece(0))), h, R(-11, 2));
    m.quad(M::sign(B(m.piece(0))), h, R(-5, 2));
    m.quad(M::sign(A(m.piece(1)), true), h, R(1, 2), 1);
    m.quad(M::sign(B(m.piece(-1)), true), h, R(-17, 2), 1);
  } else if (which == 1) {
    m.quad(M::sign(A(m.piece(0))), h, R(-5, 2));
    m.quad(M::sign(B(m.piece(0))), h, R(-11, 2));
    m.quad(M::sign(A(m.piece(1)), true), h, R(-5, 2));
    m.quad(M::sign(B(m.piece(-1)), true), h, R(-11, 2));
  } else {
    m.quad(m.frac(M::sign(A(m.piece(0))), 6, 1, 1), h, R(-11, 2));
    m.quad(m.frac(M::sign(B(m.piece(-1)), true), 6, -1, 1), h, R(-17, 2), 1);
  }
  const bool shifted = which == 1;
  m.beta(
      [=](std::int64_t n) {
        return QProduct(X).num(m.q(2) / e, X3, n).den(X, X, 2 * n).den(m.q(2) / e, X, n).times(shifted ? X.pow(n) : kOne);
      },
      m.k_fn([=](std::int64_t n) { return std::array<P, 5>{X, X.pow(-n), X.pow(1 - n), X.pow(2 - n), e}; }, u, v, X3,
             0));
  return m.done(which == 2 ? X : kOne);
}

// chubp7 (0), chubp8 (1), chubp77 (2).
std::unique_ptr<BaileyPair> chu_t5(const std::string& id, int which, const Assignment& s, const Variable& var) {
  M m(id, s, var, 3);
  const P e = m.p("e"), u = m.p("u"), v = m.p("v"), X = m.x(), X2 = m.q(2), X3 = m.q(3), X5 = m.q(5);
  auto C = [&](TermBuilder& t) -> TermBuilder& {
    M::ratio(t, {e, X3 * u, X3 * v, X5 / u, X5 / v}, {X5 / e, u, v, X2 / u, X2 / v});
    return M::zpow(t, e.inverse());
  };
  auto D = [&](TermBuilder& t, std::int64_t off) -> TermBuilder& {
    M::ratio(t, {e / X2, X * u, X * v, X3 / u, X3 / v}, {X3 / e, u / X2, v / X2, u.inverse(), v.inverse()}, off);
    return M::zpow(t, e.inverse(), off);
  };
  const R h(9, 2);
  if (which == 0) {
    m.quad(M::sign(C(m.piece(0))), h, R(-7, 2));
    m.quad(M::sign(C(m.piece(1)), true), h, R(5, 2), 2);
    m.quad(M::sign(D(m.piece(1), 1)), h, R(-1, 2), -3);
    m.quad(M::sign(D(m.piece(-1), 0)), h, R(-7, 2));
  } else if (which == 1) {
    m.quad(M::sign(C(m.piece(0))), h, R(-1, 2));
    m.quad(M::sign(C(m.piece(1)), true), h, R(-1, 2));
    m.quad(M::sign(D(m.piece(1), 1)), h, R(5, 2), -2);
    m.quad(M::sign(D(m.piece(-1), 0)), h, R(-13, 2));
  } else {
    m.quad(m.frac(M::sign(C(m.piece(0))), 6, 2, 2), h, R(-7, 2));
    m.quad(m.frac(M::sign(D(m.piece(1), 1)), 6, 4, 2), h, R(-1, 2), -3);
  }
  const bool shifted = which == 1;
  m.beta(
      [=](std::int64_t n) {
        return QProduct(X).num(m.q(4) / e, X3, n).den(X2, X, 2 * n).den(X3 / e, X, n).times(shifted ? X.pow(n) : kOne);
      },
      m.k_fn([=](std::int64_t n) { return std::array<P, 5>{X2, X.pow(-n), X.pow(1 - n), X.pow(2 - n), e}; }, u, v,
             X3, 0));
  return m.done(which == 2 ? X2 : X);
}

std::unique_ptr<BaileyPair> sgen20(const Assignment& s, const Variable& var) {
  M m("sgen20", s, var, 3);
  const P a = m.p("a"), X = m.x(), X3 = m.q(3);
  auto& t = m.piece(0);
  t.well_poised(a).den(X3);
  m.quad(t, R(9, 2), R(-3, 2));
  t.power(-a);
  m.beta([=](std::int64_t n) { return QProduct(X).num(a, X3, n).den(a, X, 2 * n).den(X, X, n); });
  return m.done(a);
}

// sgen21 (false), sgen22 (true).
std::unique_ptr<BaileyPair> sgen2x(const std::string& id, bool second, const Assignment& s, const Variable& var) {
  M m(id, s, var, 3);
  const P a = m.p("a"), X = m.x(), X3 = m.q(3);
  auto block = [&](TermBuilder& t) -> TermBuilder& {
    M::ratio(t, {a * X}, {X3});
    return M::zpow(t, -a);
  };
  if (!second) {
    m.quad(block(m.piece(0)), R(9, 2), R(-1, 2));
    m.quad(block(m.piece(1)), R(9, 2), R(11, 2), 1).times(-a);
  } else {
    m.quad(block(m.piece(0)), R(9, 2), R(5, 2));
    m.quad(block(m.piece(1)), R(9, 2), R(5, 2)).times(kMinus);
  }
  m.beta([=](std::int64_t n) {
    return QProduct(X).num(a * X, X3, n).den(a * X, X, 2 * n).den(X, X, n).times(second ? X.pow(n) : kOne);
  });
  return m.done(a);
}

// Sgen2 (0), Sgen3 (1), sgen35 (2): a = 1 or q, one free parameter e.
std::unique_ptr<BaileyPair> sgen_e1(const std::string& id, int which, const Assignment& s, const Variable& var) {
  M m(id, s, var, 3);
  const P e = m.p("e"), X = m.x(), X3 = m.q(3), X4 = m.q(4);
  auto A = [&](TermBuilder& t) -> TermBuilder& { return M::zpow(M::ratio(t, {e}, {X4 / e}), e.inverse()); };
  auto B = [&](TermBuilder& t) -> TermBuilder& { return M::zpow(M::ratio(t, {e / X}, {X3 / e}), e.inverse()); };
  const R h(9, 2);
  if (which == 0) {
    m.quad(M::sign(A(m.piece(0))), h, R(1, 2));
    m.quad(M::sign(B(m.piece(0))), h, R(7, 2));
    m.quad(M::sign(A(m.piece(1)), true), h, R(13, 2), 1);
    m.quad(M::sign(B(m.piece(-1)), true), h, R(-5, 2), 1);
  } else if (which == 1) {
    m.quad(M::sign(A(m.piece(0))), h, R(7, 2));
    m.quad(M::sign(B(m.piece(0))), h, R(1, 2));
    m.quad(M::sign(A(m.piece(1)), true), h, R(7, 2));
    m.quad(M::sign(B(m.piece(-1)), true), h, R(1, 2));
  } else {
    m.quad(m.frac(M::sign(A(m.piece(0))), 6, 1, 1), h, R(1, 2));
    m.quad(m.frac(M::sign(B(m.piece(-1)), true), 6, -1, 1), h, R(-5, 2), 1);
  }
  const bool shifted = which == 1;
  m.beta([=](std::int64_t n) {
    return QProduct(X).num(m.q(2) / e, X3, n).den(X, X, 2 * n).den(m.q(2) / e, X, n).times(shifted ? X.pow(n) : kOne);
  });
  return m.done(which == 2 ? X : kOne);
}

// Sgen4 (0), Sgen5 (1), sgen37 (2).
std::unique_ptr<BaileyPair> sgen_e2(const std::string& id, int which, const Assignment& s, const Variable& var) {
  M m(id, s, var, 3);
  const P e = m.p("e"), X = m.x(), X2 = m.q(2), X3 = m.q(3), X5 = m.q(5);
  auto C = [&](TermBuilder& t) -> TermBuilder& { return M::zpow(M::ratio(t, {e}, {X5 / e}), e.inverse()); };
  auto D = [&](TermBuilder& t, std::int64_t off) -> TermBuilder& {
    return M::zpow(M::ratio(t, {e / X2}, {X3 / e}, off), e.inverse(), off);
  };
  const R h(9, 2);
  if (which == 0) {
    m.quad(M::sign(C(m.piece(0))), h, R(5, 2));
    m.quad(M::sign(D(m.piece(1), 1)), h, R(11, 2), 3);
    m.quad(M::sign(C(m.piece(1)), true), h, R(17, 2), 2);
    m.quad(M::sign(D(m.piece(-1), 0)), h, R(5, 2));
  } else if (which == 1) {
    m.quad(M::sign(C(m.piece(0))), h, R(11, 2));
    m.quad(M::sign(D(m.piece(1), 1)), h, R(17, 2), 4);
    m.quad(M::sign(C(m.piece(1)), true), h, R(11, 2));
    m.quad(M::sign(D(m.piece(-1), 0)), h, R(-1, 2));
  } else {
    m.quad(m.frac(M::sign(C(m.piece(0))), 6, 2, 2), h, R(5, 2));
    m.quad(m.frac(M::sign(D(m.piece(1), 1)), 6, 4, 2), h, R(11, 2), 3);
  }
  const bool shifted = which == 1;
  m.beta([=](std::int64_t n) {
    return QProduct(X).num(m.q(4) / e, X3, n).den(X2, X, 2 * n).den(X3 / e, X, n).times(shifted ? X.pow(n) : kOne);
  });
  return m.done(which == 2 ? X2 : X);
}

// ---------------------------------------------------------------- modulus 2

std::unique_ptr<BaileyPair> chubp66(const Assignment& s, const Variable& var) {
  M m("chubp66", s, var, 2);
  const P a = m.p("a"), d = m.p("d"), u = m.p("u"), v = m.p("v"), X = m.x(), X2 = m.q(2);
  auto& t = m.piece(0);
  t.well_poised(a);
  M::ratio(t, {d, X2 * u, X2 * v, a * X2 / u, a * X2 / v}, {a * X2 / d, u, v, a / u, a / v, X2});
  m.quad(t, 2, -4);
  t.power(a / d);
  m.beta([=](std::int64_t n) { return QProduct(X).num(a * X / d, X2, n).den(a * X, X2, n).den(a * X / d, X, n).den(X, X, n); },
         m.k_fn([=](std::int64_t n) { return std::array<P, 5>{a, X.pow(-n), X.pow(1 - n), d, a}; }, u, v, X2, 0));
  return m.done(a);
}

std::unique_ptr<BaileyPair> chubp66bc(const std::string& id, bool second, const Assignment& s, const Variable& var) {
  M m(id, s, var, 2);
  const P a = m.p("a"), d = m.p("d"), u = m.p("u"), v = m.p("v"), X = m.x(), X2 = m.q(2), X3 = m.q(3);
  auto Rr = [&](TermBuilder& t) -> TermBuilder& {
    M::ratio(t, {a * X, d, X2 * u, X2 * v, a * X3 / u, a * X3 / v}, {a * X3 / d, u, v, a * X / u, a * X / v, X2});
    return M::zpow(t, a / d);
  };
  if (!second) {
    m.quad(Rr(m.piece(0)), 2, -3);
    m.quad(Rr(m.piece(1)), 2, 1, 1).times(-a);
  } else {
    m.quad(Rr(m.piece(0)), 2, -1);
    m.quad(Rr(m.piece(1)), 2, -1).times(kMinus);
  }
  m.beta(
      [=](std::int64_t n) {
        return QProduct(X)
            .num(a * X2 / d, X2, n)
            .den(a * X2, X2, n)
            .den(a * X2 / d, X, n)
            .den(X, X, n)
            .times(second ? X.pow(n) : kOne);
      },
      m.k_fn([=](std::int64_t n) { return std::array<P, 5>{a * X, X.pow(-n), X.pow(1 - n), d, a * X}; }, u, v, X2,
             0));
  return m.done(a);
}

// chubp9 (0), chubp10 (1), chubp11 (2).
std::unique_ptr<BaileyPair> chu_t7(const std::string& id, int which, const Assignment& s, const Variable& var) {
  M m(id, s, var, 2);
  const P d = m.p("d"), e = m.p("e"), u = m.p("u"), v = m.p("v"), X = m.x(), X2 = m.q(2), X3 = m.q(3);
  const P de = d * e;
  auto E = [&](TermBuilder& t, std::int64_t off) -> TermBuilder& {
    M::ratio(t, {d, e, X2 * u, X2 * v, X3 / u, X3 / v}, {X3 / d, X3 / e, u, v, X / u, X / v}, off);
    return M::zpow(t, de.inverse(), off);
  };
  auto F = [&](TermBuilder& t) -> TermBuilder& {
    M::ratio(t, {d / X, e / X, X * u, X * v, X2 / u, X2 / v}, {X2 / d, X2 / e, u / X, v / X, u.inverse(), v.inverse()});
    return M::zpow(t, de.inverse());
  };
  if (which == 0) {
    m.quad(m.frac(E(m.piece(0), 0), 4, 1, 1), 2, -2);
    m.quad(m.frac(F(m.piece(-1)), 4, -1, 1), 2, -4, 1).times(kMinus);
  } else if (which == 1) {
    m.quad(E(m.piece(0), 0), 2, -2);
    m.quad(F(m.piece(0)), 2, 0);
    m.quad(E(m.piece(-1), -1), 2, -2, 1).times(kMinus);
    m.quad(F(m.piece(-1)), 2, -4, 1).times(kMinus);
  } else {
    m.quad(E(m.piece(0), 0), 2, 0);
    m.quad(F(m.piece(0)), 2, -2);
    m.quad(E(m.piece(-1), -1), 2, -4, 2).times(kMinus);
    m.quad(F(m.piece(-1)), 2, -2).times(kMinus);
  }
  const bool shifted = which == 2;
  m.beta(
      [=](std::int64_t n) {
        return QProduct(X)
            .num(X3 / de, X2, n)
            .den(X2, X2, n)
            .den(X2 / d, X, n)
            .den(X2 / e, X, n)
            .times(shifted ? X.pow(n) : kOne);
      },
      m.k_fn([=](std::int64_t n) { return std::array<P, 5>{X, X.pow(-n), X.pow(1 - n), d, e}; }, u, v, X2, 0));
  return m.done(which == 0 ? X : kOne);
}

std::unique_ptr<BaileyPair> sgen660(const Assignment& s, const Variable& var) {
  M m("sgen660", s, var, 2);
  const P a = m.p("a"), d = m.p("d"), X = m.x(), X2 = m.q(2);
  auto& t = m.piece(0);
  t.well_poised(a);
  M::ratio(t, {d}, {a * X2 / d, X2});
  m.quad(t, 2, 0);
  t.power(a / d);
  m.beta([=](std::int64_t n) { return QProduct(X).num(a * X / d, X2, n).den(a * X, X2, n).den(a * X / d, X, n).den(X, X, n); });
  return m.done(a);
}

// sgen661 (false), sgen662 (true).
std::unique_ptr<BaileyPair> sgen66x(const std::string& id, bool second, const Assignment& s, const Variable& var) {
  M m(id, s, var, 2);
  const P a = m.p("a"), d = m.p("d"), X = m.x(), X2 = m.q(2), X3 = m.q(3);
  auto Q = [&](TermBuilder& t) -> TermBuilder& { return M::zpow(M::ratio(t, {a * X, d}, {a * X3 / d, X2}), a / d); };
  if (!second) {
    m.quad(Q(m.piece(0)), 2, 1);
    m.quad(Q(m.piece(1)), 2, 5, 1).times(-a);
  } else {
    m.quad(Q(m.piece(0)), 2, 3);
    m.quad(Q(m.piece(1)), 2, 3).times(kMinus);
  }
  m.beta([=](std::int64_t n) {
    return QProduct(X)
        .num(a * X2 / d, X2, n)
        .den(a * X2, X2, n)
        .den(a * X2 / d, X, n)
        .den(X, X, n)
        .times(second ? X.pow(n) : kOne);
  });
  return m.done(a);
}

// Sgen7 (0), Sgen8 (1), Sgen9 (2).
std::unique_ptr<BaileyPair> sgen_de(const std::string& id, int which, const Assignment& s, const Variable& var) {
  M m(id, s, var, 2);
  const P d = m.p("d"), e = m.p("e"), X = m.x(), X2 = m.q(2), X3 = m.q(3);
  const P de = d * e;
  auto G1 = [&](TermBuilder& t, std::int64_t off) -> TermBuilder& {
    return M::zpow(M::ratio(t, {d / X, e / X}, {X2 / d, X2 / e}, off), de.inverse(), off);
  };
  auto G2 = [&](TermBuilder& t) -> TermBuilder& { return M::zpow(M::ratio(t, {d, e}, {X3 / d, X3 / e}), de.inverse()); };
  if (which == 0) {
    m.quad(m.frac(G2(m.piece(0)), 4, 1, 1), 2, 2);
    m.quad(m.frac(G1(m.piece(-1), 0), 4, -1, 1), 2, 0, 1).times(kMinus);
  } else if (which == 1) {
    m.quad(G1(m.piece(0), 0), 2, 4);
    m.quad(G2(m.piece(0)), 2, 2);
    m.quad(G1(m.piece(1), 1), 2, 4, 3).times(kMinus);
    m.quad(G2(m.piece(1)), 2, 6, 1).times(kMinus);
  } else {
    m.quad(G1(m.piece(0), 0), 2, 2);
    m.quad(G2(m.piece(0)), 2, 4);
    m.quad(G1(m.piece(1), 1), 2, 6, 4).times(kMinus);
    m.quad(G2(m.piece(1)), 2, 4).times(kMinus);
  }
  const bool shifted = which == 2;
  m.beta([=](std::int64_t n) {
    return QProduct(X)
        .num(X3 / de, X2, n)
        .den(X2, X2, n)
        .den(X2 / d, X, n)
        .den(X2 / e, X, n)
        .times(shifted ? X.pow(n) : kOne);
  });
  return m.done(which == 0 ? X : kOne);
}

std::unique_ptr<BaileyPair> sgen660new(const Assignment& s, const Variable& var) {
  M m("sgen660new", s, var, 2);
  const P a = m.p("a"), X = m.x(), X2 = m.q(2);
  auto& t = m.piece(0);
  t.well_poised(a).den(X2);
  M::sign(t);
  m.quad(t, 1, -1);
  m.beta([=](std::int64_t n) {
    return QProduct(X).den(a * X, X2, n).den(X, X, n).times(X.pow(n * (n - 1) / 2));
  });
  return m.done(a);
}

// e -> infinity in Sgen9.
std::unique_ptr<BaileyPair> i4(const Assignment& s, const Variable& var) {
  M m("I4", s, var, 2);
  const P d = m.p("d"), X = m.x(), X2 = m.q(2), X3 = m.q(3);
  auto G1 = [&](TermBuilder& t, std::int64_t off) -> TermBuilder& {
    return M::zpow(M::ratio(t, {d / X}, {X2 / d}, off), d.inverse(), off);
  };
  auto G2 = [&](TermBuilder& t) -> TermBuilder& { return M::zpow(M::ratio(t, {d}, {X3 / d}), d.inverse()); };
  m.quad(M::sign(G1(m.piece(0), 0)), 3, 0);
  m.quad(M::sign(G2(m.piece(0))), 3, 3);
  m.quad(M::sign(G1(m.piece(1), 1)), 3, 6, 3);
  m.quad(M::sign(G2(m.piece(1)), true), 3, 3);
  m.beta([=](std::int64_t n) { return QProduct(X).den(X2, X2, n).den(X2 / d, X, n).times(X.pow(n)); });
  return m.done(kOne);
}

// ---------------------------------------------------------------- modulus 4

// (q-u)(q^2-u)(q-v)(q^2-v) - (q-1)^4 (q+1)^2 (q^2+q+1) uv/q over
// (q^3-u)(u-1)(q^3-v)(v-1), the n = 1 value of the a = q^2 factor.
LaurentSeries k8_at_one(const P& X, const P& u, const P& v, const SeriesContext& ctx) {
  const Ring ring = ctx.ring();
  using Poly = std::map<std::int64_t, CycloCoeff>;
  auto mono = [&](const P& m) {
    GridTerm t = to_grid(m, ring);
    return Poly{{t.tick, t.coeff}};
  };
  auto add = [](Poly a, const Poly& b) {
    for (const auto& [k, c] : b) {
      auto it = a.find(k);
      if (it == a.end()) {
        a.emplace(k, c);
      } else {
        it->second = it->second + c;
      }
    }
    return a;
  };
  auto mul = [&](const Poly& a, const Poly& b) {
    Poly out;
    for (const auto& [i, ci] : a) {
      for (const auto& [j, cj] : b) out = add(out, Poly{{i + j, ci * cj}});
    }
    return out;
  };
  auto bin = [&](const P& t0, const P& t1) { return add(mono(t0), mono(t1)); };
  Poly first = mul(mul(bin(X, -u), bin(X.pow(2), -u)), mul(bin(X, -v), bin(X.pow(2), -v)));
  Poly qm1 = bin(X, kMinus);
  Poly second = mul(mul(qm1, qm1), mul(qm1, qm1));
  second = mul(second, mul(bin(X, kOne), bin(X, kOne)));
  second = mul(second, add(bin(X.pow(2), X), mono(kOne)));
  second = mul(second, mono(-(u * v / X)));
  Poly num = add(first, second);
  std::vector<GridTerm> terms;
  for (const auto& [k, c] : num) {
    if (!c.is_zero()) terms.push_back(GridTerm{k, c});
  }
  const std::array<std::pair<P, P>, 4> dens{{{X.pow(3), -u}, {u, kMinus}, {X.pow(3), -v}, {v, kMinus}}};
  std::int64_t shift = 0;
  std::vector<std::pair<GridTerm, GridTerm>> g;
  for (const auto& [t0, t1] : dens) {
    GridTerm a = to_grid(t0, ring), b = to_grid(t1, ring);
    if (a.tick == b.tick && (a.coeff + b.coeff).is_zero()) {
      throw SingularKError("K is singular: factor (" + t0.to_string() + " + " + t1.to_string() + ") vanishes");
    }
    shift += std::min(a.tick, b.tick);
    g.emplace_back(a, b);
  }
  LaurentSeries k = LaurentSeries::from_terms(ring, terms, ctx.order_ticks() + shift);
  for (const auto& [a, b] : g) k.div_binomial(a, b);
  return k;
}

// chubp41 (false), chubp42 (true): a = 1.
std::unique_ptr<BaileyPair> chu_t41(const std::string& id, bool second, const Assignment& s, const Variable& var) {
  M m(id, s, var, 4);
  const P u = m.p("u"), v = m.p("v"), X = m.x(), X2 = m.q(2), X3 = m.q(3), X4 = m.q(4), X5 = m.q(5);
  auto Mr = [&](TermBuilder& t) -> TermBuilder& { return M::ratio(t, {X4 * u, X4 * v, X5 / u, X5 / v}, {u, v, X / u, X / v}); };
  auto Nr = [&](TermBuilder& t) -> TermBuilder& {
    return M::ratio(t, {X3 * u, X3 * v, X4 / u, X4 / v}, {u / X, v / X, u.inverse(), v.inverse()});
  };
  if (!second) {
    m.quad(Mr(m.piece(0)), 8, -10);
    m.quad(Nr(m.piece(0)), 8, -6);
    m.quad(Mr(m.piece(1)), 8, -2, 1).times(kMinus);
    m.quad(Nr(m.piece(-1)), 8, -14, 1).times(kMinus);
  } else {
    m.quad(Mr(m.piece(0)), 8, -6);
    m.quad(Nr(m.piece(0)), 8, -10);
    m.quad(Mr(m.piece(1)), 8, -6).times(kMinus);
    m.quad(Nr(m.piece(-1)), 8, -10).times(kMinus);
  }
  m.beta(
      [=](std::int64_t n) { return QProduct(X).num(-X2, X2, n - 1).den(X, X, 2 * n).times(second ? X.pow(n) : kOne); },
      m.k_fn([=](std::int64_t n) { return std::array<P, 5>{X, X.pow(-n), X.pow(1 - n), X.pow(2 - n), X.pow(3 - n)}; },
             u, v, X4, 2));
  return m.done(kOne);
}

// chubp43 (false), chubp44 (true): a = q.
std::unique_ptr<BaileyPair> chu_t42(const std::string& id, bool second, const Assignment& s, const Variable& var) {
  M m(id, s, var, 4);
  const P u = m.p("u"), v = m.p("v"), X = m.x(), X2 = m.q(2), X4 = m.q(4), X6 = m.q(6);
  auto G = [&](TermBuilder& t) -> TermBuilder& { return M::ratio(t, {X4 * u, X4 * v, X6 / u, X6 / v}, {u, v, X2 / u, X2 / v}); };
  auto H = [&](TermBuilder& t) -> TermBuilder& {
    return M::ratio(t, {X2 * u, X2 * v, X4 / u, X4 / v}, {u / X2, v / X2, u.inverse(), v.inverse()});
  };
  if (!second) {
    m.quad(G(m.piece(0)), 8, -8);
    m.quad(G(m.piece(1)), 8, 0, 2).times(kMinus);
    m.quad(H(m.piece(-1)), 8, -8);
    m.quad(H(m.piece(-2)), 8, -16, 2).times(kMinus);
  } else {
    m.quad(G(m.piece(0)), 8, -4);
    m.quad(G(m.piece(1)), 8, -4).times(kMinus);
    m.quad(H(m.piece(-1)), 8, -12);
    m.quad(H(m.piece(-2)), 8, -12).times(kMinus);
  }
  m.beta(
      [=](std::int64_t n) { return QProduct(X).num(-X, X2, n).den(X2, X, 2 * n).times(second ? X.pow(n) : kOne); },
      m.k_fn([=](std::int64_t n) { return std::array<P, 5>{X2, X.pow(-n), X.pow(1 - n), X.pow(2 - n), X.pow(3 - n)}; },
             u, v, X4, 0));
  return m.done(X);
}

// chubp45 (false), chubp46 (true): a = q^2.
std::unique_ptr<BaileyPair> chu_t43(const std::string& id, bool second, const Assignment& s, const Variable& var) {
  M m(id, s, var, 4);
  const P u = m.p("u"), v = m.p("v"), X = m.x(), X2 = m.q(2), X3 = m.q(3), X4 = m.q(4), X7 = m.q(7);
  auto J = [&](TermBuilder& t) -> TermBuilder& { return M::ratio(t, {X4 * u, X4 * v, X7 / u, X7 / v}, {u, v, X3 / u, X3 / v}); };
  auto L = [&](TermBuilder& t, std::int64_t off) -> TermBuilder& {
    return M::ratio(t, {X4 / u, X4 / v, X * u, X * v}, {u.inverse(), v.inverse(), u / X3, v / X3}, off);
  };
  if (!second) {
    m.quad(J(m.piece(0)), 8, -6);
    m.quad(J(m.piece(1)), 8, 2, 3).times(kMinus);
    m.quad(L(m.piece(1), 1), 8, -2, -7).times(kMinus);
    m.quad(L(m.piece(-2), 0), 8, -10);
  } else {
    m.quad(J(m.piece(0)), 8, -2);
    m.quad(J(m.piece(1)), 8, -2).times(kMinus);
    m.quad(L(m.piece(1), 1), 8, 2, -6).times(kMinus);
    m.quad(L(m.piece(-2), 0), 8, -14);
  }
  KFn k = m.k_fn([=](std::int64_t n) { return std::array<P, 5>{X3, X.pow(-n), X.pow(1 - n), X.pow(2 - n), X.pow(3 - n)}; },
                 u, v, X4, 0);
  KFn k_small = [k, X, u, v](std::int64_t n, const SeriesContext& ctx) {
    if (n == 1) return k8_at_one(X, u, v, ctx);
    return k(n, ctx);
  };
  m.beta(
      [=](std::int64_t n) { return QProduct(X).num(-X2, X2, n).den(X3, X, 2 * n).times(second ? X.pow(n) : kOne); },
      nullptr, k_small);
  return m.done(X2);
}

// u, v -> limits of the modulus 4 pairs: no free parameters.
std::unique_ptr<BaileyPair> mod4_limit(const std::string& id, const Assignment& s, const Variable& var) {
  M m(id, s, var, 4);
  const P X = m.x(), X2 = m.q(2), X3 = m.q(3);
  auto neg = [](TermBuilder& t) -> TermBuilder& { return t.times(kMinus); };
  BetaProd prod;
  P rel = kOne;
  if (id == "chubp41a") {
    m.quad(m.piece(0), 8, -2);
    m.quad(m.piece(0), 8, 2);
    neg(m.quad(m.piece(1), 8, 6, 1));
    neg(m.quad(m.piece(-1), 8, -6, 1));
    prod = [=](std::int64_t n) { return QProduct(X).num(-X2, X2, n - 1).den(X, X, 2 * n); };
  } else if (id == "chubp42a") {
    m.quad(m.piece(0), 8, 2);
    m.quad(m.piece(0), 8, -2);
    neg(m.quad(m.piece(1), 8, 2));
    neg(m.quad(m.piece(-1), 8, -2));
    prod = [=](std::int64_t n) { return QProduct(X).num(-X2, X2, n - 1).den(X, X, 2 * n).times(X.pow(n)); };
  } else if (id == "chubp43a") {
    m.quad(m.piece(0), 8, 0);
    neg(m.quad(m.piece(1), 8, 8, 2));
    m.quad(m.piece(-1), 8, 0);
    neg(m.quad(m.piece(-2), 8, -8, 2));
    prod = [=](std::int64_t n) { return QProduct(X).num(-X, X2, n).den(X2, X, 2 * n); };
    rel = X;
  } else if (id == "chubp44a") {
    m.quad(m.piece(0), 8, 4);
    neg(m.quad(m.piece(1), 8, 4));
    m.quad(m.piece(-1), 8, -4);
    neg(m.quad(m.piece(-2), 8, -4));
    prod = [=](std::int64_t n) { return QProduct(X).num(-X, X2, n).den(X2, X, 2 * n).times(X.pow(n)); };
    rel = X;
  } else if (id == "chubp45a") {
    m.quad(m.piece(0), 8, 2);
    neg(m.quad(m.piece(1), 8, 10, 3));
    neg(m.quad(m.piece(1), 8, 6, 1));
    m.quad(m.piece(-2), 8, -2);
    prod = [=](std::int64_t n) { return QProduct(X).num(-X2, X2, n).den(X3, X, 2 * n); };
    rel = X2;
  } else if (id == "chubp46a") {
    m.quad(m.piece(0), 8, 6);
    neg(m.quad(m.piece(1), 8, 6));
    neg(m.quad(m.piece(1), 8, 10, 2));
    m.quad(m.piece(-2), 8, -6);
    prod = [=](std::int64_t n) { return QProduct(X).num(-X2, X2, n).den(X3, X, 2 * n).times(X.pow(n)); };
    rel = X2;
  } else {
    m.quad(m.frac(m.piece(0), 8, 3, 3, +1), 8, -2);
    neg(m.quad(m.frac(m.piece(1), 8, 3, 3, +1), 8, 6, 3));
    neg(m.quad(m.frac(m.piece(1), 8, 5, 3, +1), 8, 2));
    m.quad(m.frac(m.piece(-2), 8, -3, 3, +1), 8, -6, 3);
    prod = [=](std::int64_t n) {
      return QProduct(X)
          .num(-X2, X2, n - 1)
          .den(X3, X, 2 * n)
          .binomial(kOne, X)
          .binomial(kOne, X2)
          .binomial(kOne, X3, true)
          .times(X.pow(n));
    };
    rel = X2;
  }
  m.beta(prod);
  return m.done(rel);
}

// ---------------------------------------------------------------- catalog

const std::vector<QRational> kSampleExponents{R(1, 2), R(1), R(3, 2), R(2), R(5, 2), R(3)};

PairDef def(std::string id, std::string family, std::string relative, std::vector<std::string> params,
            std::string constraints,
            std::function<std::unique_ptr<BaileyPair>(const Assignment&, const Variable&)> build) {
  PairDef d;
  d.id = std::move(id);
  d.family = std::move(family);
  d.relative = std::move(relative);
  d.params = std::move(params);
  d.constraints = std::move(constraints);
  d.build = std::move(build);
  auto names = d.params;
  d.sample = [names](std::mt19937_64& rng) { return random_assignment(names, rng, kSampleExponents); };
  return d;
}

std::vector<PairDef> make_catalog() {
  using B = std::function<std::unique_ptr<BaileyPair>(const Assignment&, const Variable&)>;
  auto bind2 = [](auto f, std::string id, auto arg) -> B {
    return [f, id, arg](const Assignment& s, const Variable& v) { return f(id, arg, s, v); };
  };
  const std::string kGeneric = "every denominator a unit; a^2 != bcde";
  std::vector<PairDef> c;
  c.push_back(def("chubp1", "ten-parameter pair", "a", {"a", "b", "c", "u", "v"}, kGeneric, chubp1));
  c.push_back(def("Sgen1", "limit of the ten-parameter pair", "a", {"a", "b", "c"}, "",
                  [](const Assignment& s, const Variable& v) {
                    M m("Sgen1", s, v, 1);
                    return sgen1_like("Sgen1", s, v, m.p("a"), m.p("b"), m.p("c"));
                  }));
  c.push_back(def("H1", "Sgen1 at a=1, b=-q^(1/2), c=q^(1/2)", "1", {}, "",
                  [](const Assignment& s, const Variable& v) {
                    return sgen1_like("H1", s, v, kOne, -v.pow(R(1, 2)), v.pow(R(1, 2)));
                  }));
  c.push_back(def("H12", "Sgen1 with b -> 0", "a", {"a", "c"}, "", h12));

  c.push_back(def("chubp22", "modulus 3, K-factor", "a", {"a", "u", "v"}, kGeneric, chubp22));
  c.push_back(def("chubp22a", "modulus 3, K-factor", "a", {"a", "u", "v"}, kGeneric, bind2(chubp22ab, "chubp22a", false)));
  c.push_back(def("chubp22b", "modulus 3, K-factor", "a", {"a", "u", "v"}, kGeneric, bind2(chubp22ab, "chubp22b", true)));
  c.push_back(def("chubp3", "modulus 3, K-factor", "1", {"e", "u", "v"}, "e != q^-1", bind2(chu_t3, "chubp3", 0)));
  c.push_back(def("chubp5", "modulus 3, K-factor", "1", {"e", "u", "v"}, "e != q^-1", bind2(chu_t3, "chubp5", 1)));
  c.push_back(def("chubp55", "modulus 3, K-factor", "q", {"e", "u", "v"}, "e != q^-1", bind2(chu_t3, "chubp55", 2)));
  c.push_back(def("chubp7", "modulus 3, K-factor", "q", {"e", "u", "v"}, kGeneric, bind2(chu_t5, "chubp7", 0)));
  c.push_back(def("chubp8", "modulus 3, K-factor", "q", {"e", "u", "v"}, kGeneric, bind2(chu_t5, "chubp8", 1)));
  c.push_back(def("chubp77", "modulus 3, K-factor", "q^2", {"e", "u", "v"}, kGeneric, bind2(chu_t5, "chubp77", 2)));

  c.push_back(def("sgen20", "modulus 3, u, v limit", "a", {"a"}, "", sgen20));
  c.push_back(def("sgen21", "modulus 3, u, v limit", "a", {"a"}, "", bind2(sgen2x, "sgen21", false)));
  c.push_back(def("sgen22", "modulus 3, u, v limit", "a", {"a"}, "", bind2(sgen2x, "sgen22", true)));
  c.push_back(def("Sgen2", "modulus 3, u, v limit", "1", {"e"}, "e != q^-1", bind2(sgen_e1, "Sgen2", 0)));
  c.push_back(def("Sgen3", "modulus 3, u, v limit", "1", {"e"}, "e != q^-1", bind2(sgen_e1, "Sgen3", 1)));
  c.push_back(def("sgen35", "modulus 3, u, v limit", "q", {"e"}, "e != q^-1", bind2(sgen_e1, "sgen35", 2)));
  c.push_back(def("Sgen4", "modulus 3, u, v limit", "q", {"e"}, "", bind2(sgen_e2, "Sgen4", 0)));
  c.push_back(def("Sgen5", "modulus 3, u, v limit", "q", {"e"}, "", bind2(sgen_e2, "Sgen5", 1)));
  c.push_back(def("sgen37", "modulus 3, u, v limit", "q^2", {"e"}, "", bind2(sgen_e2, "sgen37", 2)));

  c.push_back(def("chubp66", "modulus 2, K-factor", "a", {"a", "d", "u", "v"}, kGeneric, chubp66));
  c.push_back(def("chubp66b", "modulus 2, K-factor", "a", {"a", "d", "u", "v"}, kGeneric, bind2(chubp66bc, "chubp66b", false)));
  c.push_back(def("chubp66c", "modulus 2, K-factor", "a", {"a", "d", "u", "v"}, kGeneric, bind2(chubp66bc, "chubp66c", true)));
  c.push_back(def("chubp9", "modulus 2, K-factor", "q", {"d", "e", "u", "v"}, kGeneric, bind2(chu_t7, "chubp9", 0)));
  c.push_back(def("chubp10", "modulus 2, K-factor", "1", {"d", "e", "u", "v"}, kGeneric, bind2(chu_t7, "chubp10", 1)));
  c.push_back(def("chubp11", "modulus 2, K-factor", "1", {"d", "e", "u", "v"}, kGeneric, bind2(chu_t7, "chubp11", 2)));

  c.push_back(def("sgen660", "modulus 2, u, v limit", "a", {"a", "d"}, "", sgen660));
  c.push_back(def("sgen661", "modulus 2, u, v limit", "a", {"a", "d"}, "", bind2(sgen66x, "sgen661", false)));
  c.push_back(def("sgen662", "modulus 2, u, v limit", "a", {"a", "d"}, "", bind2(sgen66x, "sgen662", true)));
  c.push_back(def("Sgen7", "modulus 2, u, v limit", "q", {"d", "e"}, "", bind2(sgen_de, "Sgen7", 0)));
  c.push_back(def("Sgen8", "modulus 2, u, v limit", "1", {"d", "e"}, "", bind2(sgen_de, "Sgen8", 1)));
  c.push_back(def("Sgen9", "modulus 2, u, v limit", "1", {"d", "e"}, "", bind2(sgen_de, "Sgen9", 2)));
  c.push_back(def("sgen660new", "modulus 2, d -> infinity", "a", {"a"}, "", sgen660new));
  c.push_back(def("I4", "Sgen9 with e -> infinity", "1", {"d"}, "", i4));

  c.push_back(def("chubp41", "modulus 4, K-factor", "1", {"u", "v"}, "", bind2(chu_t41, "chubp41", false)));
  c.push_back(def("chubp42", "modulus 4, K-factor", "1", {"u", "v"}, "", bind2(chu_t41, "chubp42", true)));
  c.push_back(def("chubp43", "modulus 4, K-factor", "q", {"u", "v"}, "", bind2(chu_t42, "chubp43", false)));
  c.push_back(def("chubp44", "modulus 4, K-factor", "q", {"u", "v"}, "", bind2(chu_t42, "chubp44", true)));
  c.push_back(def("chubp45", "modulus 4, K-factor", "q^2", {"u", "v"}, "", bind2(chu_t43, "chubp45", false)));
  c.push_back(def("chubp46", "modulus 4, K-factor", "q^2", {"u", "v"}, "", bind2(chu_t43, "chubp46", true)));
  for (const char* id : {"chubp41a", "chubp42a", "chubp43a", "chubp44a", "chubp45a", "chubp46a", "mod4ideq1_pair"}) {
    std::string rel = id[6] == '1' || id[6] == '2' ? "1" : (id[6] == '3' || id[6] == '4' ? "q" : "q^2");
    std::string fam = std::string(id) == "mod4ideq1_pair" ? "modulus 4, specialized u, v" : "modulus 4, u, v limit";
    std::string sid = id;
    c.push_back(def(sid, fam, rel, {}, "",
                    [sid](const Assignment& s, const Variable& v) { return mod4_limit(sid, s, v); }));
  }
  return c;
}

}  // namespace

// ---------------------------------------------------------------- public API

std::string format_assignment(const Assignment& a) {
  std::string out;
  for (const auto& [k, v] : a) {
    if (!out.empty()) out += ", ";
    out += k + "=" + v.to_string();
  }
  return out.empty() ? "(none)" : out;
}

Variable Variable::power(std::int64_t k) {
  return Variable{ParamMonomial::q(QRational(k)), ParamMonomial::q(QRational(k, 2))};
}

ParamMonomial Variable::pow(const QRational& e) const {
  if (e.is_integer()) return x.pow(e.num());
  if (e.den() == 2) return sqrt_x.pow(e.num());
  if (!x.coeff().is_one()) {
    throw GridError("x^" + e.to_string() + " is ambiguous for x = " + x.to_string());
  }
  return ParamMonomial::q(x.exponent() * e);
}

BaileyPair::BaileyPair(std::string id, ParamMonomial relative, Variable var, Assignment params, SeriesFn alpha,
                       SeriesFn beta, int modulus, std::vector<int> vanishing_residues)
    : id_(std::move(id)),
      relative_(std::move(relative)),
      var_(std::move(var)),
      params_(std::move(params)),
      alpha_(std::move(alpha)),
      beta_(std::move(beta)),
      modulus_(modulus),
      vanishing_(std::move(vanishing_residues)) {}

std::unique_ptr<BaileyPair> PairDef::make(const Assignment& spec, const Variable& var) const {
  for (const auto& name : params) {
    if (!spec.count(name)) throw InvalidSpecializationError("pair " + id + " needs parameter " + name);
  }
  for (const auto& [name, value] : spec) {
    if (std::find(params.begin(), params.end(), name) == params.end()) {
      throw InvalidSpecializationError("pair " + id + " has no parameter " + name);
    }
  }
  return build(spec, var);
}

const std::vector<PairDef>& pair_catalog() {
  static const std::vector<PairDef> catalog = make_catalog();
  return catalog;
}

const PairDef& find_pair(const std::string& id) {
  for (const auto& d : pair_catalog()) {
    if (d.id == id) return d;
  }
  throw UnknownIdError("unknown Bailey pair: " + id);
}

PairCheckReport check_pair(const BaileyPair& p, std::int64_t n_max, const SeriesContext& ctx) {
  PairCheckReport rep;
  rep.id = p.id();
  rep.spec = p.params();
  rep.order = ctx.truncation_order;
  rep.pass = true;
  const ParamMonomial X = p.variable().x;
  const ParamMonomial AX = p.relative() * X;
  std::map<std::int64_t, std::vector<LaurentSeries>> cache;
  auto alphas = [&](const SeriesContext& c) -> const std::vector<LaurentSeries>& {
    auto& v = cache[c.order_ticks()];
    while (static_cast<std::int64_t>(v.size()) <= n_max) v.push_back(p.alpha(static_cast<std::int64_t>(v.size()), c));
    return v;
  };
  try {
    for (std::int64_t n = 0; n <= n_max; ++n) {
      PairCheckRow row;
      row.n = n;
      try {
        row.cmp = compare_sides(
            [&](const SeriesContext& c) {
              SidePair sp{p.beta(n, c), LaurentSeries::zero(c.ring())};
              const auto& al = alphas(c);
              const std::int64_t w = c.order_ticks();
              for (std::int64_t j = 0; j <= n; ++j) {
                const LaurentSeries& a = al[static_cast<std::size_t>(j)];
                if (a.is_zero() && a.exact()) continue;
                std::int64_t va = a.is_zero() ? a.order_ticks() : a.valuation_ticks();
                std::int64_t want = std::max<std::int64_t>(w - std::min<std::int64_t>(va, 0), 1);
                LaurentSeries wt = QProduct(X).den(X, n - j).den(AX, n + j).eval(
                    c.with_order(QRational(want, c.grid_denominator)));
                sp.rhs += (a * wt).truncated(w);
              }
              return sp;
            },
            ctx);
        row.pass = row.cmp.equal;
      } catch (const NotAUnitError&) {
        throw;
      } catch (const Error& e) {
        row.error = e.what();
        row.pass = false;
      }
      rep.pass = rep.pass && row.pass;
      rep.rows.push_back(std::move(row));
    }
  } catch (const NotAUnitError& e) {
    throw NotAUnitError(std::string(e.what()) + " in pair " + p.id() + " at " + format_assignment(p.params()));
  }
  return rep;
}

namespace {

SidePair finite_transform(const BaileyPair& p, const ParamMonomial& y, const ParamMonomial& z, std::int64_t N,
                          const SeriesContext& ctx) {
  if (N < 0) throw InvalidSpecializationError("terminating transform needs n >= 0");
  const ParamMonomial X = p.variable().x, A = p.relative(), AX = A * X;
  const ParamMonomial XmN = X.pow(-N);
  TermBuilder lhs(X);
  lhs.num(y).num(z).num(XmN).den(y * z * XmN / A).power(X).restrict_to(0, N);
  lhs.hook([&p](std::int64_t n, const SeriesContext& c) { return p.beta(n, c); });
  TermBuilder rhs(X);
  rhs.num(y).num(z).num(XmN).den(AX / y).den(AX / z).den(A * X.pow(N + 1));
  rhs.power(-(A * X.pow(N) / (y * z))).quadratic(R(-1, 2), R(3, 2)).restrict_to(0, N);
  rhs.hook([&p](std::int64_t n, const SeriesContext& c) { return p.alpha(n, c); });
  QProduct pre(X);
  pre.num(AX / y, N).num(AX / z, N).den(AX, N).den(AX / (y * z), N);
  SidePair sp;
  sp.lhs = sum_range(lhs, 0, N, ctx);
  sp.rhs = scaled(pre, [&](const SeriesContext& c) { return sum_range(rhs, 0, N, c); }, ctx);
  return sp;
}

BaileyPair::SeriesFn beta_of(const BaileyPair& p) {
  return [&p](std::int64_t n, const SeriesContext& c) { return p.beta(n, c); };
}
BaileyPair::SeriesFn alpha_of(const BaileyPair& p) {
  return [&p](std::int64_t n, const SeriesContext& c) { return p.alpha(n, c); };
}

}  // namespace

SidePair bailey_transform_sides(const BaileyPair& p, const TransformSpec& t, const SeriesContext& ctx,
                                const SumPolicy& policy) {
  if (t.n) {
    if (!t.y || !t.z) throw InvalidSpecializationError("terminating transform needs both y and z");
    return finite_transform(p, *t.y, *t.z, *t.n, ctx);
  }
  const ParamMonomial X = p.variable().x, AX = p.relative() * X;
  TermBuilder lhs(X), rhs(X);
  lhs.power(AX);
  rhs.power(AX);
  QProduct pre(X);
  for (const auto& w : {t.y, t.z}) {
    if (w) {
      lhs.num(*w).power(w->inverse());
      rhs.num(*w).den(AX / *w).power(w->inverse());
      pre.num_inf(AX / *w);
    } else {
      // (w;x)_n w^-n -> (-1)^n x^(n(n-1)/2) as w -> infinity.
      lhs.power(kMinus).quadratic(R(1, 2), R(-1, 2));
      rhs.power(kMinus).quadratic(R(1, 2), R(-1, 2));
    }
  }
  pre.den_inf(AX);
  if (t.y && t.z) pre.den_inf(AX / (*t.y * *t.z));
  lhs.hook(beta_of(p));
  rhs.hook(alpha_of(p));
  SidePair sp;
  sp.lhs = sum_unilateral(lhs, ctx, policy);
  sp.rhs = scaled(pre, [&](const SeriesContext& c) { return sum_unilateral(rhs, c, policy); }, ctx);
  return sp;
}

SidePair spec_aq(const BaileyPair& p, const SeriesContext& ctx, const SumPolicy& policy) {
  const ParamMonomial X = p.variable().x, A = p.relative(), X2 = X * X;
  TermBuilder lhs(X), rhs(X);
  lhs.num(A * X, X2, 1, 0).power(kMinus).hook(beta_of(p));
  rhs.power(kMinus).hook(alpha_of(p));
  QProduct pre(X);
  pre.den_inf(A * X2, X2).den_inf(kMinus, X);
  SidePair sp;
  sp.lhs = sum_unilateral(lhs, ctx, policy);
  sp.rhs = scaled(pre, [&](const SeriesContext& c) { return sum_unilateral(rhs, c, policy); }, ctx);
  return sp;
}

SidePair spec_false_theta(const BaileyPair& p, const SeriesContext& ctx, const std::optional<ParamMonomial>& sqrt_a,
                          const SumPolicy& policy) {
  const ParamMonomial X = p.variable().x, A = p.relative();
  const ParamMonomial s = sqrt_a ? *sqrt_a : A.sqrt();
  if (!(s * s == A)) throw InvalidSpecializationError("given sqrt(a) does not square to a");
  TermBuilder lhs(X), rhs(X);
  lhs.num(X * s).power(-s).quadratic(R(1, 2), R(-1, 2)).hook(beta_of(p));
  rhs.per_n([X, s](std::int64_t n) {
       return std::optional<std::pair<ParamMonomial, ParamMonomial>>(std::make_pair(kOne, -(s * X.pow(n))));
     })
      .power(-s)
      .quadratic(R(1, 2), R(-1, 2))
      .hook(alpha_of(p));
  QProduct pre(X);
  pre.num_inf(X * s).den_inf(A * X);
  SidePair sp;
  sp.lhs = sum_unilateral(lhs, ctx, policy);
  sp.rhs = scaled(pre, [&](const SeriesContext& c) { return sum_unilateral(rhs, c, policy); }, ctx);
  return sp;
}

SidePair spec_yz_inf(const BaileyPair& p, const SeriesContext& ctx, const SumPolicy& policy) {
  const ParamMonomial X = p.variable().x, A = p.relative();
  TermBuilder lhs(X), rhs(X);
  lhs.power(A).quadratic(R(1), R(0)).hook(beta_of(p));
  rhs.power(A).quadratic(R(1), R(0)).hook(alpha_of(p));
  QProduct pre(X);
  pre.den_inf(A * X);
  SidePair sp;
  sp.lhs = sum_unilateral(lhs, ctx, policy);
  sp.rhs = scaled(pre, [&](const SeriesContext& c) { return sum_unilateral(rhs, c, policy); }, ctx);
  return sp;
}

SidePair spec_squared(const BaileyPair& p, const SeriesContext& ctx, const std::optional<ParamMonomial>& sqrt_a,
                      const SumPolicy& policy) {
  const ParamMonomial X = p.variable().x, A = p.relative(), q = p.variable().sqrt_x;
  const ParamMonomial a = sqrt_a ? *sqrt_a : A.sqrt();
  if (!(a * a == A)) throw InvalidSpecializationError("given sqrt(a) does not square to a");
  if (!(q * q == X)) throw InvalidSpecializationError("the variable's square root does not square to it");
  TermBuilder lhs(X), rhs(X);
  lhs.num(-(a * q)).power(a).quadratic(R(1), R(0), q).hook(beta_of(p));
  rhs.power(a).quadratic(R(1), R(0), q).hook(alpha_of(p));
  QProduct pre(X);
  pre.num_inf(-(a * q)).den_inf(A * X);
  SidePair sp;
  sp.lhs = sum_unilateral(lhs, ctx, policy);
  sp.rhs = scaled(pre, [&](const SeriesContext& c) { return sum_unilateral(rhs, c, policy); }, ctx);
  return sp;
}

Assignment random_assignment(const std::vector<std::string>& names, std::mt19937_64& rng,
                             const std::vector<QRational>& exponents) {
  static const long kPrimes[] = {2, 3, 5, 7, 11, 13, 17, 19, 23, 29, 31, 37};
  std::vector<long> primes(std::begin(kPrimes), std::end(kPrimes));
  std::shuffle(primes.begin(), primes.end(), rng);
  if (names.size() > primes.size()) throw InvalidSpecializationError("too many parameters to sample");
  Assignment out;
  std::uniform_int_distribution<std::size_t> pick(0, exponents.size() - 1);
  std::bernoulli_distribution coin(0.5);
  for (std::size_t i = 0; i < names.size(); ++i) {
    mpq_class c(primes[i]);
    if (coin(rng)) c = 1 / c;
    if (coin(rng)) c = -c;
    out[names[i]] = ParamMonomial(c, exponents[pick(rng)]);
  }
  return out;
}

}  // namespace qseries
